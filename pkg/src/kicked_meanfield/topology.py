"""Qubit connectivity graphs.

A :class:`ConnectivityGraph` holds the 0/1 coupling matrix as an undirected
edge set over qubits ``0 .. n_qubits - 1``.  Built-in families cover the
desk-scale oracle graphs (ring, chain, complete, empty) and the heavy-hex
lattice of the 127-qubit Eagle processor.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable

# Long rows x row width of the 127-qubit Eagle heavy-hex layout.
EAGLE_ROWS = 7
EAGLE_COLS = 15


class GraphError(ValueError):
    """Invalid graph construction or malformed edge-list input."""


@dataclass(frozen=True)
class ConnectivityGraph:
    n_qubits: int
    edges: frozenset[tuple[int, int]]
    adjacency: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n_qubits < 1:
            raise GraphError(f"n_qubits must be positive, got {self.n_qubits}")
        normalized = set()
        for j, k in self.edges:
            if j == k:
                raise GraphError(f"self-loop on qubit {j}")
            if not (0 <= j < self.n_qubits and 0 <= k < self.n_qubits):
                raise GraphError(f"edge ({j}, {k}) out of range for {self.n_qubits} qubits")
            normalized.add((min(j, k), max(j, k)))
        object.__setattr__(self, "edges", frozenset(normalized))
        nbrs: list[list[int]] = [[] for _ in range(self.n_qubits)]
        for j, k in sorted(normalized):
            nbrs[j].append(k)
            nbrs[k].append(j)
        object.__setattr__(self, "adjacency", tuple(tuple(sorted(n)) for n in nbrs))

    @classmethod
    def from_edges(cls, n_qubits: int, edges: Iterable[tuple[int, int]]) -> "ConnectivityGraph":
        """Build a graph, rejecting duplicate edges (in either orientation)."""
        seen: set[tuple[int, int]] = set()
        for j, k in edges:
            key = (min(j, k), max(j, k))
            if key in seen:
                raise GraphError(f"duplicate edge ({j}, {k})")
            seen.add(key)
        return cls(n_qubits, frozenset(seen))

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def degrees(self) -> list[int]:
        return [len(n) for n in self.adjacency]

    def mean_degree(self) -> float:
        return mean_degree(self)

    def is_connected(self) -> bool:
        seen = {0}
        queue = deque([0])
        while queue:
            j = queue.popleft()
            for k in self.adjacency[j]:
                if k not in seen:
                    seen.add(k)
                    queue.append(k)
        return len(seen) == self.n_qubits

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def relabel(self, perm: list[int]) -> "ConnectivityGraph":
        """Graph with qubit ``j`` renamed to ``perm[j]``."""
        return ConnectivityGraph(self.n_qubits, frozenset((perm[j], perm[k]) for j, k in self.edges))

    def to_edge_list(self) -> str:
        lines = [f"qubits {self.n_qubits}"]
        lines += [f"{j} {k}" for j, k in self.sorted_edges()]
        return "\n".join(lines) + "\n"


def mean_degree(g: ConnectivityGraph) -> float:
    """Average number of neighbours, 2M/L."""
    return 2 * g.n_edges / g.n_qubits


def load_edge_list(text: str) -> ConnectivityGraph:
    """Parse the edge-list format.

    An optional ``qubits N`` header fixes the qubit count; otherwise it is one
    more than the largest index seen.  Lines starting with ``#`` are comments.
    """
    declared = None
    pairs: list[tuple[int, int]] = []
    seen_data = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if tokens[0] == "qubits":
            if seen_data or declared is not None:
                raise GraphError(f"line {lineno}: 'qubits' header must come before any edge")
            if len(tokens) != 2 or not tokens[1].isdigit() or int(tokens[1]) < 1:
                raise GraphError(f"line {lineno}: malformed header {line!r}")
            declared = int(tokens[1])
            continue
        if len(tokens) != 2 or not all(t.isdigit() for t in tokens):
            raise GraphError(f"line {lineno}: expected two non-negative integers, got {line!r}")
        seen_data = True
        j, k = int(tokens[0]), int(tokens[1])
        if j == k:
            raise GraphError(f"line {lineno}: self-loop on qubit {j}")
        pairs.append((j, k))

    if declared is None:
        if not pairs:
            raise GraphError("edge list is empty and has no 'qubits' header")
        declared = 1 + max(max(p) for p in pairs)
    return ConnectivityGraph.from_edges(declared, pairs)


def read_edge_list(path) -> ConnectivityGraph:
    with open(path) as fh:
        return load_edge_list(fh.read())


def ring(n: int) -> ConnectivityGraph:
    if n < 3:
        raise GraphError(f"ring needs at least 3 qubits, got {n}")
    return ConnectivityGraph.from_edges(n, [(j, (j + 1) % n) for j in range(n)])


def chain(n: int) -> ConnectivityGraph:
    if n < 1:
        raise GraphError(f"chain needs at least 1 qubit, got {n}")
    return ConnectivityGraph.from_edges(n, [(j, j + 1) for j in range(n - 1)])


def complete(n: int) -> ConnectivityGraph:
    if n < 1:
        raise GraphError(f"complete graph needs at least 1 qubit, got {n}")
    return ConnectivityGraph.from_edges(n, [(j, k) for j in range(n) for k in range(j + 1, n)])


def empty(n: int) -> ConnectivityGraph:
    return ConnectivityGraph(n, frozenset())


def heavy_hex(rows: int = EAGLE_ROWS, cols: int = EAGLE_COLS) -> ConnectivityGraph:
    """Heavy-hexagon lattice in the IBM Eagle numbering.

    ``rows`` long rows of ``cols`` qubits are chained horizontally.  Between
    consecutive long rows sit bridge qubits, one every four columns, starting
    at column 0 below even rows and column 2 below odd rows.  The outer corners (last qubit of the first row, first qubit of the last row)
    are dropped when no bridge touches them, as on the device.
    Qubits are numbered row by row with each bridge row following its upper
    long row, so ``heavy_hex(7, 15)`` reproduces the 127-qubit, 144-coupler
    Eagle layout.
    """
    if rows < 1 or cols < 1:
        raise GraphError(f"heavy_hex needs positive rows and cols, got ({rows}, {cols})")

    def bridge_cols(gap: int) -> list[int]:
        return list(range(0 if gap % 2 == 0 else 2, cols, 4))

    # Columns present in each long row.
    present = [list(range(cols)) for _ in range(rows)]
    if rows > 1:
        top = set(bridge_cols(0))
        bottom = set(bridge_cols(rows - 2))
        if cols > 1 and cols - 1 not in top:
            present[0].pop()
        if cols > 1 and 0 not in bottom:
            present[rows - 1].pop(0)

    index: dict[tuple[str, int, int], int] = {}
    counter = 0
    for r in range(rows):
        for c in present[r]:
            index[("row", r, c)] = counter
            counter += 1
        if r < rows - 1:
            for c in bridge_cols(r):
                index[("bridge", r, c)] = counter
                counter += 1

    edges = []
    for r in range(rows):
        cs = present[r]
        edges += [(index[("row", r, a)], index[("row", r, b)]) for a, b in zip(cs, cs[1:])]
        if r < rows - 1:
            for c in bridge_cols(r):
                b = index[("bridge", r, c)]
                for rr in (r, r + 1):
                    if ("row", rr, c) in index:
                        edges.append((index[("row", rr, c)], b))
    return ConnectivityGraph.from_edges(counter, edges)


def from_descriptor(desc: str) -> ConnectivityGraph:
    """Resolve ``name[:args]`` built-ins, or read an edge-list file path.

    Built-ins: ``heavy-hex`` (Eagle), ``heavy-hex:R,C``, ``ring:N``,
    ``chain:N``, ``complete:N``, ``empty:N``.
    """
    name, _, args = desc.partition(":")
    builders = {"ring": ring, "chain": chain, "complete": complete, "empty": empty}
    if name == "heavy-hex":
        if not args:
            return heavy_hex()
        try:
            r, c = (int(a) for a in args.split(","))
        except ValueError:
            raise GraphError(f"heavy-hex expects 'heavy-hex:ROWS,COLS', got {desc!r}") from None
        return heavy_hex(r, c)
    if name in builders:
        try:
            n = int(args)
        except ValueError:
            raise GraphError(f"{name} expects '{name}:N', got {desc!r}") from None
        return builders[name](n)
    try:
        return read_edge_list(desc)
    except FileNotFoundError:
        raise GraphError(f"unknown topology {desc!r} (not a built-in and no such file)") from None
