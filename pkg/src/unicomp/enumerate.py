"""Enumeration of free trees and unicyclic graphs, and extremal search over
the unicyclic class."""

from __future__ import annotations

import csv
import io
import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator

from .eigen import DEFAULT_GAP_TOL, DEFAULT_TOL, least_eigenpair
from .graph import Graph, canonical_form, complement, encode_graph6, new_graph
from .poly import char_poly, compare_least_roots

TREE_MAX_N = 20
UNICYCLIC_MAX_N = 14
DESK_MAX_N = 11

# Known class sizes (OEIS A000055 and A001429), used as cross-checks.
KNOWN_TREE_COUNTS = {
    1: 1, 2: 1, 3: 1, 4: 2, 5: 3, 6: 6, 7: 11, 8: 23, 9: 47, 10: 106,
    11: 235, 12: 551, 13: 1301, 14: 3159,
}
KNOWN_UNICYCLIC_COUNTS = {
    3: 1, 4: 2, 5: 5, 6: 13, 7: 33, 8: 89, 9: 240, 10: 657, 11: 1806, 12: 5026, 13: 13999,
}

OBJECTIVES = ("lamin-complement", "lamin-direct")


class BoundError(ValueError):
    """Requested order is beyond what the enumeration is allowed to do."""


# -- free trees ---------------------------------------------------------------
#
# Trees are level sequences of a rooted tree in preorder (root at level 0).
# The generator walks rooted trees in decreasing lexicographic order
# (successor step below) and keeps only the sequences that are the canonical
# rooting of a free tree at its centre, jumping past invalid runs.


def _next_rooted(levels: list[int], p: int | None = None) -> list[int] | None:
    if p is None:
        p = len(levels) - 1
        while levels[p] == 1:
            p -= 1
    if p == 0:
        return None
    q = p - 1
    while levels[q] != levels[p] - 1:
        q -= 1
    out = list(levels)
    for i in range(p, len(out)):
        out[i] = out[i - p + q]
    return out


def _split_first_subtree(levels: list[int]) -> tuple[list[int], list[int]]:
    """(first subtree of the root, rest of the tree), as level sequences."""
    m = len(levels)
    for i in range(2, len(levels)):
        if levels[i] == 1:
            m = i
            break
    first = [v - 1 for v in levels[1:m]]
    rest = [0] + levels[m:]
    return first, rest


def _next_free(levels: list[int]) -> list[int] | None:
    first, rest = _split_first_subtree(levels)
    h_first, h_rest = max(first), max(rest)
    ok = h_rest >= h_first
    if ok and h_rest == h_first:
        if len(first) > len(rest) or (len(first) == len(rest) and first > rest):
            ok = False
    if ok:
        return levels
    p = len(first)
    nxt = _next_rooted(levels, p)
    if nxt is not None and levels[p] > 2:
        new_first, _ = _split_first_subtree(nxt)
        tail = list(range(1, max(new_first) + 2))
        nxt[-len(tail) :] = tail
    return nxt


def _levels_to_graph(levels: list[int]) -> Graph:
    last_at = {}
    edges = []
    for v, lev in enumerate(levels):
        if lev > 0:
            edges.append((last_at[lev - 1], v))
        last_at[lev] = v
    return new_graph(len(levels), edges)


def free_trees(n: int) -> Iterator[Graph]:
    """Every tree on n vertices exactly once up to isomorphism."""
    if n < 1:
        raise ValueError(f"tree order must be >= 1, got {n}")
    if n > TREE_MAX_N:
        raise BoundError(f"free_trees supports n <= {TREE_MAX_N}, got {n}")
    if n <= 2:
        yield new_graph(n, [(0, 1)] if n == 2 else [])
        return
    # path rooted at its centre
    levels: list[int] | None = list(range(n // 2 + 1)) + list(range(1, (n + 1) // 2))
    while levels is not None:
        levels = _next_free(levels)
        if levels is not None:
            yield _levels_to_graph(levels)
            levels = _next_rooted(levels)


def unicyclic_graphs(n: int, with_keys: bool = False) -> Iterator:
    """Every connected graph with n vertices and n edges exactly once up to
    isomorphism: each free tree plus each missing edge, deduplicated by
    canonical form. Output order is deterministic.

    With ``with_keys`` the stream yields (graph, canonical_form) pairs.
    """
    if n < 3:
        raise ValueError(f"unicyclic graphs need n >= 3, got {n}")
    if n > UNICYCLIC_MAX_N:
        raise BoundError(f"unicyclic_graphs supports n <= {UNICYCLIC_MAX_N}, got {n}")
    seen: set[bytes] = set()
    for tree in free_trees(n):
        for u in range(n):
            for v in range(u + 1, n):
                if tree.has_edge(u, v):
                    continue
                g = tree.add_edge(u, v)
                key = canonical_form(g)
                if key in seen:
                    continue
                seen.add(key)
                yield (g, key) if with_keys else g


# -- extremal search ----------------------------------------------------------


def objective_graph(g: Graph, objective: str) -> Graph:
    if objective == "lamin-complement":
        return complement(g)
    if objective == "lamin-direct":
        return g
    raise ValueError(f"unknown objective {objective!r}; expected one of {OBJECTIVES}")


def _objective_value(args: tuple[Graph, str, float, float]) -> float:
    g, objective, tol, gap_tol = args
    lam, _, _ = least_eigenpair(objective_graph(g, objective), tol, gap_tol)
    return lam


def parallel_map(fn, items: list, threads: int = 1, chunksize: int = 32) -> list:
    """Order-preserving map, in-process for threads <= 1, else over a
    process pool."""
    if threads <= 1 or len(items) < 2 * chunksize:
        return [fn(item) for item in items]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items, chunksize=chunksize))


@dataclass
class SearchReport:
    n: int
    objective: str
    class_size: int
    expected_class_size: int | None
    min_value: float
    minimizers: list[dict]
    unique: bool
    tie_resolution: str
    solver_tol: float
    gap_tol: float
    wall_time: float = field(default=0.0, compare=False)

    def to_dict(self, include_time: bool = True) -> dict:
        d = {
            "n": self.n,
            "objective": self.objective,
            "class_size": self.class_size,
            "expected_class_size": self.expected_class_size,
            "min_value": float(f"{self.min_value:.15g}"),
            "minimizers": self.minimizers,
            "unique": self.unique,
            "tie_resolution": self.tie_resolution,
            "solver_tol": self.solver_tol,
            "gap_tol": self.gap_tol,
        }
        if include_time:
            d["wall_time"] = round(self.wall_time, 6)
        return d

    def to_json(self, include_time: bool = True) -> str:
        return json.dumps(self.to_dict(include_time), sort_keys=True)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "objective", "class_size", "min_value", "graph6", "canonical", "unique"])
        for m in self.minimizers:
            w.writerow([
                self.n, self.objective, self.class_size, f"{self.min_value:.15g}",
                m["graph6"], m["canonical"], self.unique,
            ])
        return buf.getvalue()


def minimize(
    n: int,
    objective: str = "lamin-complement",
    tol: float = DEFAULT_TOL,
    gap_tol: float = DEFAULT_GAP_TOL,
    threads: int | None = 1,
    max_n: int = DESK_MAX_N,
) -> SearchReport:
    """Least eigenvalue minimisers over all unicyclic graphs of order n.

    Every graph within gap_tol of the minimum is a co-minimiser. When two or
    three remain, the tie is settled exactly by comparing least roots of the
    characteristic polynomials.
    """
    objective_graph(new_graph(1, []), objective)
    if n > max_n:
        raise BoundError(f"exhaustive search is limited to n <= {max_n}, got {n}")
    threads = threads or os.cpu_count() or 1
    start = time.perf_counter()
    pairs = list(unicyclic_graphs(n, with_keys=True))
    values = parallel_map(_objective_value, [(g, objective, tol, gap_tol) for g, _ in pairs], threads)
    expected = KNOWN_UNICYCLIC_COUNTS.get(n)
    if expected is not None and expected != len(pairs):
        raise AssertionError(f"enumerated {len(pairs)} unicyclic graphs at n={n}, expected {expected}")

    best = min(values)
    cands = sorted(
        ((values[i], pairs[i][1], pairs[i][0]) for i in range(len(pairs)) if values[i] <= best + gap_tol),
        key=lambda t: t[1],
    )
    resolution = "numeric"
    if 2 <= len(cands) <= 3:
        polys = [char_poly(objective_graph(g, objective)) for _, _, g in cands]
        keep = [0]
        for i in range(1, len(cands)):
            c = compare_least_roots(polys[i], polys[keep[0]])
            if c < 0:
                keep = [i]
            elif c == 0:
                keep.append(i)
        cands = [cands[i] for i in sorted(keep)]
        resolution = "exact"
    elif len(cands) > 3:
        resolution = "unresolved"
    return SearchReport(
        n=n,
        objective=objective,
        class_size=len(pairs),
        expected_class_size=expected,
        min_value=min(v for v, _, _ in cands),
        minimizers=[{"graph6": encode_graph6(g), "canonical": key.decode()} for _, key, g in cands],
        unique=len(cands) == 1,
        tie_resolution=resolution,
        solver_tol=tol,
        gap_tol=gap_tol,
        wall_time=time.perf_counter() - start,
    )
