"""Parameter sweeps over the engines, CSV/plot emission and run comparison."""

from __future__ import annotations

import ast
import csv
import io
import math
import operator
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from . import exact_oracle, inhomogeneous, meanfield, stabilizer, stochastic
from .qubit_state import DriveParams
from .topology import ConnectivityGraph, from_descriptor

MODES = (
    "mf-unitary",
    "mf-dissipative",
    "mf-stochastic",
    "mf-lattice",
    "exact",
    "stabilizer",
    "validate-channel",
)
CSV_HEADER = ["mode", "theta_h", "step", "observable", "value", "stderr"]
DEFAULT_SEED = 0

_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul, ast.Div: operator.truediv}


def parse_angle(text: str) -> float:
    """Evaluate an angle such as ``1.0``, ``pi/8`` or ``3*pi/16``."""

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
            return float(node.value)
        if isinstance(node, ast.Name) and node.id == "pi":
            return math.pi
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](ev(node.left), ev(node.right))
        raise ValueError(f"unsupported angle expression {text!r}")

    try:
        value = ev(ast.parse(text.strip(), mode="eval"))
    except (SyntaxError, ZeroDivisionError) as exc:
        raise ValueError(f"cannot parse angle {text!r}: {exc}") from None
    if not math.isfinite(value):
        raise ValueError(f"angle {text!r} is not finite")
    return value


def parse_grid(text: str) -> list[float]:
    """``start:stop:count`` (inclusive linspace) or a single angle."""
    parts = text.split(":")
    if len(parts) == 1:
        return [parse_angle(parts[0])]
    if len(parts) != 3:
        raise ValueError(f"grid must be 'start:stop:count' or a single value, got {text!r}")
    start, stop = parse_angle(parts[0]), parse_angle(parts[1])
    try:
        count = int(parts[2])
    except ValueError:
        raise ValueError(f"grid count must be an integer, got {parts[2]!r}") from None
    if count < 1:
        raise ValueError("grid count must be at least 1")
    if start > stop:
        raise ValueError("grid start must not exceed stop")
    if count == 1:
        return [start]
    return [float(v) for v in np.linspace(start, stop, count)]


@dataclass
class SweepSpec:
    mode: str
    theta_h: list[float]
    steps: int
    theta_j: float = math.pi / 2
    topology: str = "heavy-hex"
    observable: str = "mean-z"
    seed: Optional[int] = None
    samples: int = 100_000
    workers: int = 1
    qubit_cap: int = exact_oracle.DEFAULT_QUBIT_CAP

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}; choose from {', '.join(MODES)}")
        if not self.theta_h:
            raise ValueError("theta_h grid is empty")
        if not all(math.isfinite(v) for v in [*self.theta_h, self.theta_j]):
            raise ValueError("angles must be finite")
        if self.steps < 0:
            raise ValueError("steps must be non-negative")
        if self.samples < 1:
            raise ValueError("samples must be positive")
        if not (self.observable in ("mean-z", "coherence") or self.observable.startswith("site-z:")):
            raise ValueError(f"unknown observable {self.observable!r}")

    @property
    def site(self) -> Optional[int]:
        if self.observable.startswith("site-z:"):
            try:
                return int(self.observable.split(":", 1)[1])
            except ValueError:
                raise ValueError(f"bad site index in {self.observable!r}") from None
        return None


@dataclass(frozen=True)
class Row:
    mode: str
    theta_h: float
    step: int
    observable: str
    value: float
    stderr: Optional[float] = None

    def key(self):
        return (self.mode, self.theta_h, self.step, self.observable)


@dataclass
class SweepResult:
    rows: list[Row] = field(default_factory=list)

    def sorted(self) -> "SweepResult":
        return SweepResult(sorted(self.rows, key=Row.key))

    def values(self, mode: str, observable: str, step: int) -> tuple[list[float], list[float]]:
        pts = sorted((r.theta_h, r.value) for r in self.rows if r.mode == mode and r.observable == observable and r.step == step)
        return [p[0] for p in pts], [p[1] for p in pts]


def _homogeneous_rows(spec, theta, states, stderrs=None):
    rows = []
    for t, s in enumerate(states):
        err = None if stderrs is None else stderrs[t]
        if spec.observable == "coherence":
            se = None if err is None else math.hypot(err[0], err[1])
            rows.append(Row(spec.mode, theta, t, "coherence", s.coherence, se))
        else:
            rows.append(Row(spec.mode, theta, t, spec.observable, s.z, None if err is None else err[2]))
    return rows


def _point(spec: SweepSpec, graph: ConnectivityGraph, index: int, theta: float) -> list[Row]:
    params = DriveParams.from_thetas(spec.theta_j, theta, spec.steps)
    site = spec.site
    if site is not None and not 0 <= site < graph.n_qubits:
        raise ValueError(f"site {site} out of range for {graph.n_qubits} qubits")
    seed = DEFAULT_SEED if spec.seed is None else spec.seed
    xi = graph.mean_degree()

    if spec.mode in ("mf-unitary", "mf-dissipative"):
        trace = meanfield.run(params, xi, "unitary" if spec.mode == "mf-unitary" else "dissipative")
        return _homogeneous_rows(spec, theta, trace.states)

    if spec.mode == "mf-stochastic":
        # distinct Philox key per grid point
        res = stochastic.run_trajectories(params, xi, spec.samples, (seed + index) % 2**64)
        return _homogeneous_rows(spec, theta, res.means, res.stderrs)

    if spec.mode == "mf-lattice":
        trace = inhomogeneous.run_lattice(graph, params)
        rows = []
        for t, st in enumerate(trace.states):
            if spec.observable == "coherence":
                v = inhomogeneous.mean_coherence(st)
            elif site is not None:
                v = float(st.per_qubit[site, 2])
            else:
                v = inhomogeneous.mean_magnetization(st)
            rows.append(Row(spec.mode, theta, t, spec.observable, v))
        return rows

    if spec.mode == "exact":
        records = exact_oracle.evolve(graph, params, cap=spec.qubit_cap, transverse=spec.observable == "coherence")
        rows = []
        for rec in records:
            if spec.observable == "coherence":
                v = float(np.mean(np.hypot(rec.x, rec.y)))
            elif site is not None:
                v = float(rec.z[site])
            else:
                v = rec.mean_z
            rows.append(Row(spec.mode, theta, rec.step, spec.observable, v))
        return rows

    if spec.mode == "stabilizer":
        rows = []
        for t in range(spec.steps + 1):
            sp = stabilizer.StabilizerParams(theta, t)
            rows.append(Row(spec.mode, theta, t, "stabilizer", stabilizer.stabilizer_expectation(sp)))
            if spec.seed is not None:
                mean, err = stabilizer.flip_process_simulate(sp, spec.samples, (seed + index) % 2**64)
                rows.append(Row(spec.mode, theta, t, "stabilizer-mc", mean, err))
        return rows

    # validate-channel: along the dissipative trajectory, compare the channel's
    # shrink factor with the sampled average of random Z kicks at that step's variance.
    trace = meanfield.run(params, xi, "dissipative")
    rows = []
    for t, (p, variance) in enumerate(zip(trace.probabilities, trace.variances), start=1):
        cfg = stochastic.SamplerConfig(spec.samples, (seed + index) % 2**64, params.J, variance, stream=t)
        m = stochastic.kick_moments(cfg)
        rows.append(Row(spec.mode, theta, t, "shrink-analytic", 1 - 2 * p))
        rows.append(Row(spec.mode, theta, t, "shrink-empirical", float(m.mean[0]), float(m.stderr[0])))
        rows.append(Row(spec.mode, theta, t, "sin-moment", float(m.mean[1]), float(m.stderr[1])))
    return rows


def resolve_topology(spec: SweepSpec) -> ConnectivityGraph:
    return from_descriptor(spec.topology)


def run_sweep(spec: SweepSpec, graph: ConnectivityGraph | None = None) -> SweepResult:
    g = resolve_topology(spec) if graph is None else graph
    if spec.mode == "exact":
        exact_oracle._check_cap(g.n_qubits, spec.qubit_cap)
    jobs = list(enumerate(spec.theta_h))
    if spec.workers > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=spec.workers) as pool:
            chunks = list(pool.map(lambda a: _point(spec, g, *a), jobs))
    else:
        chunks = [_point(spec, g, i, th) for i, th in jobs]
    return SweepResult([r for c in chunks for r in c]).sorted()


def _fmt(v: float) -> str:
    return f"{v:.12g}"


def format_csv(result: SweepResult) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in result.sorted().rows:
        w.writerow([r.mode, _fmt(r.theta_h), r.step, r.observable, _fmt(r.value), "" if r.stderr is None else _fmt(r.stderr)])
    return buf.getvalue()


def emit_csv(result: SweepResult, path) -> None:
    text = format_csv(result)
    if str(path) == "-":
        print(text, end="")
        return
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise OSError(f"cannot write CSV to {path}: {exc.strerror or exc}") from exc


def parse_csv(text: str) -> SweepResult:
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header != CSV_HEADER:
        raise ValueError(f"unexpected CSV header {header!r}")
    rows = []
    for n, rec in enumerate(reader, start=2):
        if len(rec) != len(CSV_HEADER):
            raise ValueError(f"line {n}: expected {len(CSV_HEADER)} fields, got {len(rec)}")
        mode, th, step, obs, val, err = rec
        rows.append(Row(mode, float(th), int(step), obs, float(val), float(err) if err else None))
    return SweepResult(rows)


def read_csv(path) -> SweepResult:
    try:
        return parse_csv(Path(path).read_text())
    except OSError as exc:
        raise OSError(f"cannot read CSV {path}: {exc.strerror or exc}") from exc


def emit_plot(result: SweepResult, path) -> None:
    """Static SVG (or any matplotlib format by suffix): one curve per mode and observable.

    Multi-angle sweeps plot the final step against theta_h; single-angle
    sweeps plot the value against step.
    """
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6, 4))
    curves = sorted({(r.mode, r.observable) for r in result.rows})
    thetas = sorted({r.theta_h for r in result.rows})
    for mode, obs in curves:
        rows = [r for r in result.rows if r.mode == mode and r.observable == obs]
        if len(thetas) > 1:
            last = max(r.step for r in rows)
            pts = sorted((r.theta_h, r.value) for r in rows if r.step == last)
            ax.set_xlabel(r"$\theta_h$")
            label = f"{mode} {obs} (t={last})"
        else:
            pts = sorted((r.step, r.value) for r in rows)
            ax.set_xlabel("step")
            label = f"{mode} {obs}"
        ax.plot([p[0] for p in pts], [p[1] for p in pts], marker=".", label=label)
    ax.set_ylabel("value")
    if curves:
        ax.legend(fontsize="small")
    fig.tight_layout()
    try:
        fig.savefig(path)
    except OSError as exc:
        raise OSError(f"cannot write plot to {path}: {exc.strerror or exc}") from exc
    finally:
        plt.close(fig)


class KeyMismatchError(ValueError):
    def __init__(self, only_a: list, only_b: list):
        self.only_a = only_a
        self.only_b = only_b
        super().__init__(f"key mismatch: {len(only_a)} keys only in first run, {len(only_b)} only in second")

    def describe(self) -> str:
        lines = [str(self)]
        lines += [f"  only in first:  theta_h={k[0]} step={k[1]} observable={k[2]}" for k in self.only_a]
        lines += [f"  only in second: theta_h={k[0]} step={k[1]} observable={k[2]}" for k in self.only_b]
        return "\n".join(lines)


@dataclass
class CompareReport:
    diffs: dict
    tolerance: float

    @property
    def max_diff(self) -> float:
        return max(self.diffs.values(), default=0.0)

    @property
    def worst(self):
        return max(self.diffs, key=self.diffs.get) if self.diffs else None

    @property
    def passed(self) -> bool:
        return self.max_diff <= self.tolerance

    def failing(self) -> list:
        return sorted(k for k, d in self.diffs.items() if d > self.tolerance)

    def describe(self) -> str:
        lines = [f"compared {len(self.diffs)} keys; max |diff| = {self.max_diff:.6g} (tolerance {self.tolerance:g})"]
        for k in self.failing():
            lines.append(f"  FAIL theta_h={k[0]:.12g} step={k[1]} observable={k[2]} diff={self.diffs[k]:.6g}")
        lines.append("PASS" if self.passed else "FAIL")
        return "\n".join(lines)


def _keyed(result: SweepResult, label: str) -> dict:
    out = {}
    for r in result.rows:
        k = (r.theta_h, r.step, r.observable)
        if k in out:
            raise ValueError(f"{label}: duplicate key theta_h={k[0]} step={k[1]} observable={k[2]}")
        out[k] = r.value
    return out


def compare_results(a: SweepResult, b: SweepResult, tolerance: float) -> CompareReport:
    ka, kb = _keyed(a, "first run"), _keyed(b, "second run")
    only_a, only_b = sorted(set(ka) - set(kb)), sorted(set(kb) - set(ka))
    if only_a or only_b:
        raise KeyMismatchError(only_a, only_b)
    return CompareReport({k: abs(ka[k] - kb[k]) for k in ka}, tolerance)


def compare(run_a, run_b, tolerance: float) -> CompareReport:
    return compare_results(read_csv(run_a), read_csv(run_b), tolerance)
