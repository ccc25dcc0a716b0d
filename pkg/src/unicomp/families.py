"""Named graph families.

Vertex numbering is fixed so that graph6 output and role maps are
reproducible: the star block comes first (its centre is vertex 0), then the
two bridge vertices, then the S_{q+1}^3 or triangle block.

Role names follow the labelled figure for U(p, q) (v1..v7) and U'(p)
(u1..u5). A role maps to the tuple of vertices in that class; classes such
as v1 (the non-bridging star pendants) may be empty.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph, complement, new_graph

STAR_CENTER = 0


@dataclass(frozen=True)
class LabeledFamilyGraph:
    graph: Graph
    roles: dict[str, tuple[int, ...]]

    def role(self, name: str) -> tuple[int, ...]:
        return self.roles[name]


def star(n: int) -> Graph:
    """K_{1,n-1} with centre at vertex 0."""
    if n < 2:
        raise ValueError(f"star needs n >= 2, got {n}")
    return new_graph(n, [(STAR_CENTER, v) for v in range(1, n)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError(f"cycle needs n >= 3, got {n}")
    return new_graph(n, [(v, (v + 1) % n) for v in range(n)])


def complete(n: int) -> Graph:
    if n < 1:
        raise ValueError(f"complete graph needs n >= 1, got {n}")
    return new_graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def path(n: int) -> Graph:
    if n < 1:
        raise ValueError(f"path needs n >= 1, got {n}")
    return new_graph(n, [(v, v + 1) for v in range(n - 1)])


def s3(n: int) -> LabeledFamilyGraph:
    """Star K_{1,n-1} plus an edge joining two pendants (vertices 1 and 2)."""
    if n < 3:
        raise ValueError(f"S_n^3 needs n >= 3, got {n}")
    edges = [(0, v) for v in range(1, n)] + [(1, 2)]
    roles = {"center": (0,), "triangle": (1, 2), "pendants": tuple(range(3, n))}
    return LabeledFamilyGraph(new_graph(n, edges), roles)


def u_pq(p: int, q: int) -> LabeledFamilyGraph:
    """U(p, q): K_{1,p} joined by one edge between a star pendant and a
    pendant of S_{q+1}^3. Order p + q + 2."""
    if p < 1:
        raise ValueError(f"U(p, q) needs p >= 1, got p={p}")
    if q < 3:
        raise ValueError(f"U(p, q) needs q >= 3, got q={q}")
    v2 = 0
    v1 = tuple(range(1, p))
    v3 = p
    v4 = p + 1
    v5 = p + 2
    v6 = (p + 3, p + 4)
    v7 = tuple(range(p + 5, p + q + 2))
    edges = [(v2, v) for v in v1] + [(v2, v3), (v3, v4), (v4, v5)]
    edges += [(v5, v6[0]), (v5, v6[1]), v6] + [(v5, v) for v in v7]
    roles = {
        "v1": v1, "v2": (v2,), "v3": (v3,), "v4": (v4,),
        "v5": (v5,), "v6": v6, "v7": v7,
    }
    return LabeledFamilyGraph(new_graph(p + q + 2, edges), roles)


def u_prime(p: int) -> LabeledFamilyGraph:
    """U'(p): K_{1,p} joined by one edge between a star pendant and a vertex
    of a triangle. Order p + 4."""
    if p < 1:
        raise ValueError(f"U'(p) needs p >= 1, got {p}")
    u2 = 0
    u1 = tuple(range(1, p))
    u3 = p
    u4 = p + 1
    u5 = (p + 2, p + 3)
    edges = [(u2, v) for v in u1] + [(u2, u3), (u3, u4), (u4, u5[0]), (u4, u5[1]), u5]
    roles = {"u1": u1, "u2": (u2,), "u3": (u3,), "u4": (u4,), "u5": u5}
    return LabeledFamilyGraph(new_graph(p + 4, edges), roles)


def balanced_split(n: int) -> tuple[int, int]:
    """(ceil((n-2)/2), floor((n-2)/2)), the split of the extremal U(p, q)."""
    return (n - 1) // 2, (n - 2) // 2


def valid_splits(n: int) -> list[tuple[int, int]]:
    """All (p, q) with p >= 1, q >= 3 and p + q = n - 2."""
    return [(p, n - 2 - p) for p in range(1, n - 4)]


def class_quotient(g: Graph, classes: list[tuple[int, ...]]) -> list[list[int]]:
    """Quotient matrix of an equitable partition: entry (i, j) is the number of
    neighbours in class j of any vertex of class i.

    Raises ValueError if the partition is not equitable or classes do not
    cover the vertex set exactly once.
    """
    flat = sorted(v for cls in classes for v in cls)
    if flat != list(range(g.n)):
        raise ValueError("classes must partition the vertex set")
    masks = [sum(1 << v for v in cls) for cls in classes]
    out = []
    for cls in classes:
        if not cls:
            raise ValueError("empty class in partition")
        counts = {tuple((g.rows[v] & mask).bit_count() for mask in masks) for v in cls}
        if len(counts) != 1:
            raise ValueError("partition is not equitable")
        out.append(list(counts.pop()))
    return out


def complement_quotient(fam: LabeledFamilyGraph, order: list[str]) -> list[list[int]]:
    """Quotient of the complement over the non-empty role classes in ``order``."""
    classes = [fam.roles[name] for name in order if fam.roles[name]]
    return class_quotient(complement(fam.graph), classes)
