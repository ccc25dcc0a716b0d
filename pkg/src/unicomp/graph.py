"""Simple undirected graphs on vertices 0..n-1, stored as adjacency bitmasks.

Besides the value type this module holds the small primitives everything else
is built from: complement, connectivity, the quadratic form x^T A x, the
eigen-equation residual, canonical forms for isomorphism testing, and graph6
text I/O.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, Sequence

import numpy as np

# canonical_form search is exact for any n; this bound only keeps worst-case
# backtracking within desk reach.
CANON_MAX_N = 16


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph. ``rows[v]`` has bit ``u`` set iff uv is an edge."""

    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"graph order must be >= 1, got {self.n}")
        if len(self.rows) != self.n:
            raise ValueError("row count does not match order")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.rows):
            if row & ~full:
                raise ValueError(f"row {v} references a vertex >= n")
            if row >> v & 1:
                raise ValueError(f"loop at vertex {v}")
            for u in _bits(row):
                if not self.rows[u] >> v & 1:
                    raise ValueError(f"adjacency is not symmetric at ({u}, {v})")

    @property
    def m(self) -> int:
        return sum(row.bit_count() for row in self.rows) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(_bits(self.rows[v]))

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def degrees(self) -> list[int]:
        return [row.bit_count() for row in self.rows]

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in _bits(self.rows[u]) if u < v]

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=np.int64)
        for u, v in self.edges():
            a[u, v] = a[v, u] = 1
        return a

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Return the graph with vertex ``v`` renamed ``perm[v]``."""
        if sorted(perm) != list(range(self.n)):
            raise ValueError("perm is not a permutation of the vertex set")
        return new_graph(self.n, [(perm[u], perm[v]) for u, v in self.edges()])

    def add_edge(self, u: int, v: int) -> Graph:
        return new_graph(self.n, self.edges() + [(u, v)])

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


def _bits(mask: int) -> Iterable[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def new_graph(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Build a graph from an edge list. Repeated edges are absorbed."""
    if n < 1:
        raise ValueError(f"graph order must be >= 1, got {n}")
    rows = [0] * n
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
        if u == v:
            raise ValueError(f"loop at vertex {u}")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(n, tuple(rows))


def complement(g: Graph) -> Graph:
    full = (1 << g.n) - 1
    return Graph(g.n, tuple(full & ~row & ~(1 << v) for v, row in enumerate(g.rows)))


def components(g: Graph) -> list[list[int]]:
    seen = 0
    comps = []
    for s in range(g.n):
        if seen >> s & 1:
            continue
        comp = frontier = 1 << s
        while frontier:
            nxt = 0
            for v in _bits(frontier):
                nxt |= g.rows[v]
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
        comps.append(list(_bits(comp)))
    return comps


def is_connected(g: Graph) -> bool:
    return len(components(g)) == 1


def is_tree(g: Graph) -> bool:
    return g.m == g.n - 1 and is_connected(g)


def is_unicyclic(g: Graph) -> bool:
    """Connected with exactly one cycle, i.e. connected with m == n."""
    return g.m == g.n and is_connected(g)


def _check_dim(g: Graph, x: Sequence) -> None:
    if len(x) != g.n:
        raise ValueError(f"vector has length {len(x)}, graph has order {g.n}")


def quadratic_form(g: Graph, x: Sequence) -> float:
    """x^T A(g) x, computed as 2 * sum of x_u x_v over edges.

    Works for any numeric entry type, so exact ints/Fractions stay exact.
    """
    _check_dim(g, x)
    return 2 * sum((x[u] * x[v] for u, v in g.edges()), 0)


def eigen_residual(g: Graph, lam: float, x: Sequence) -> float:
    """max_v |lam * x_v - sum_{u ~ v} x_u|."""
    _check_dim(g, x)
    if not any(x):
        raise ValueError("eigenvector must be nonzero")
    worst = 0
    for v in range(g.n):
        worst = max(worst, abs(lam * x[v] - sum((x[u] for u in _bits(g.rows[v])), 0)))
    return worst


# -- canonical forms ---------------------------------------------------------


def _refine(g: Graph, cells: list[int]) -> list[int]:
    """Equitable refinement of an ordered partition (cells are vertex bitmasks).

    Cells split by neighbour count into a splitter cell, sub-cells ordered by
    that count, so the result depends only on the labelled structure.
    """
    rows = g.rows
    while True:
        for splitter in cells:
            out = []
            for cell in cells:
                if cell & (cell - 1) == 0:
                    out.append(cell)
                    continue
                groups: dict[int, int] = {}
                for v in _bits(cell):
                    k = (rows[v] & splitter).bit_count()
                    groups[k] = groups.get(k, 0) | (1 << v)
                out.extend(groups[k] for k in sorted(groups))
            if len(out) != len(cells):
                cells = out
                break
        else:
            return cells


def _are_twins(g: Graph, u: int, v: int) -> bool:
    # the transposition (u v) is an automorphism
    return g.rows[u] & ~(1 << v) == g.rows[v] & ~(1 << u)


def _relabeled_rows(g: Graph, order: Sequence[int]) -> tuple[int, ...]:
    pos = [0] * g.n
    for i, v in enumerate(order):
        pos[v] = i
    out = []
    for v in order:
        row = 0
        for u in _bits(g.rows[v]):
            row |= 1 << pos[u]
        out.append(row)
    return tuple(out)


def canonical_labeling(g: Graph) -> list[int]:
    """Vertex order whose relabelled graph is the canonical representative.

    Individualisation/refinement search over the whole tree of refined
    partitions, keeping the lexicographically least relabelled row tuple.
    Branches that differ by swapping twin vertices produce identical leaves
    and are skipped.
    """
    if g.n > CANON_MAX_N:
        raise ValueError(f"canonical_form supports n <= {CANON_MAX_N}, got {g.n}")
    best_rows = None
    best_order: list[int] = []

    def search(cells: list[int]) -> None:
        nonlocal best_rows, best_order
        cells = _refine(g, cells)
        for idx, cell in enumerate(cells):
            if cell & (cell - 1):
                break
        else:
            order = [c.bit_length() - 1 for c in cells]
            cand = _relabeled_rows(g, order)
            if best_rows is None or cand < best_rows:
                best_rows, best_order = cand, order
            return
        tried: list[int] = []
        for v in _bits(cell):
            if any(_are_twins(g, u, v) for u in tried):
                continue
            tried.append(v)
            single = 1 << v
            search(cells[:idx] + [single, cell & ~single] + cells[idx + 1 :])

    search([(1 << g.n) - 1])
    return best_order


def canonical_form(g: Graph) -> bytes:
    """Isomorphism-invariant key: graph6 bytes of the canonical relabelling."""
    order = canonical_labeling(g)
    return encode_graph6(Graph(g.n, _relabeled_rows(g, order))).encode("ascii")


def canonical_form_bruteforce(g: Graph) -> bytes:
    """Reference key by minimising over all n! labellings. Only for small n."""
    if g.n > 9:
        raise ValueError("brute-force canonical form is limited to n <= 9")
    best = min(_relabeled_rows(g, order) for order in permutations(range(g.n)))
    return encode_graph6(Graph(g.n, best)).encode("ascii")


def is_isomorphic(g: Graph, h: Graph) -> bool:
    return g.n == h.n and g.m == h.m and canonical_form(g) == canonical_form(h)


# -- graph6 ------------------------------------------------------------------

_G6_HEADER = ">>graph6<<"


def _encode_n(n: int) -> str:
    if n < 63:
        return chr(63 + n)
    if n < 258048:
        return "~" + "".join(chr(63 + (n >> s & 63)) for s in (12, 6, 0))
    return "~~" + "".join(chr(63 + (n >> s & 63)) for s in (30, 24, 18, 12, 6, 0))


def encode_graph6(g: Graph) -> str:
    bits = [g.rows[i] >> j & 1 for j in range(1, g.n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    body = "".join(
        chr(63 + int("".join(map(str, bits[k : k + 6])), 2)) for k in range(0, len(bits), 6)
    )
    return _encode_n(g.n) + body


def decode_graph6(text: str | bytes) -> Graph:
    if isinstance(text, bytes):
        text = text.decode("ascii", errors="replace")
    text = text.strip()
    if text.startswith(_G6_HEADER):
        text = text[len(_G6_HEADER) :]
    if not text:
        raise ValueError("empty graph6 string")
    vals = [ord(c) - 63 for c in text]
    if any(not 0 <= v < 64 for v in vals):
        raise ValueError(f"graph6 contains a character outside '?'..'~': {text!r}")
    if vals[0] != 63:
        n, rest = vals[0], vals[1:]
    elif len(vals) > 1 and vals[1] != 63:
        if len(vals) < 4:
            raise ValueError("truncated graph6 size field")
        n = vals[1] << 12 | vals[2] << 6 | vals[3]
        rest = vals[4:]
    else:
        if len(vals) < 8:
            raise ValueError("truncated graph6 size field")
        n = 0
        for v in vals[2:8]:
            n = n << 6 | v
        rest = vals[8:]
    nbits = n * (n - 1) // 2
    if len(rest) != (nbits + 5) // 6:
        raise ValueError(f"graph6 body has {len(rest)} bytes, expected {(nbits + 5) // 6} for n={n}")
    bits = [v >> s & 1 for v in rest for s in range(5, -1, -1)]
    if any(bits[nbits:]):
        raise ValueError("graph6 padding bits are not zero")
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.append((i, j))
            k += 1
    return new_graph(n, edges)
