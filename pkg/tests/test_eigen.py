import itertools
import math
import random

import numpy as np
import pytest

from unicomp.eigen import (
    ConvergenceError,
    full_spectrum,
    least_eigenpair,
    rayleigh,
    symmetric_eigh,
    symmetric_eigvals,
    tql_implicit,
)
from unicomp.enumerate import unicyclic_graphs
from unicomp.families import complete, cycle, s3, star, u_pq
from unicomp.graph import complement, components, new_graph
from unicomp.poly import char_poly


def random_graph(n, rng, p=0.5):
    return new_graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def induced(g, vertices):
    index = {v: i for i, v in enumerate(vertices)}
    return new_graph(len(vertices), [(index[u], index[v]) for u, v in g.edges() if u in index and v in index])


def test_spectrum_examples():
    assert full_spectrum(complete(2)).eigenvalues == pytest.approx((-1, 1), abs=1e-12)
    assert full_spectrum(cycle(6)).least_value == pytest.approx(-2, abs=1e-12)
    assert full_spectrum(star(9)).least_value == pytest.approx(-math.sqrt(8), abs=1e-12)
    lam, x, mult = least_eigenpair(complement(cycle(4)))
    assert lam == pytest.approx(-1, abs=1e-12) and mult == 2
    assert least_eigenpair(complement(u_pq(1, 3).graph))[0] < -2


def test_spectrum_invariants():
    rng = random.Random(5)
    for _ in range(100):
        g = random_graph(rng.randint(1, 14), rng, rng.random())
        s = full_spectrum(g)
        assert list(s.eigenvalues) == sorted(s.eigenvalues)
        assert s.least_value == s.eigenvalues[0]
        assert abs(sum(s.eigenvalues)) < 1e-9
        assert np.linalg.norm(s.least_vector) == pytest.approx(1, abs=1e-12)
        assert s.residual <= 1e-10
        ref = np.linalg.eigvalsh(g.adjacency_matrix().astype(float))
        assert np.allclose(s.eigenvalues, ref, atol=1e-10)


def test_sign_convention_and_determinism():
    g = complement(u_pq(4, 5).graph)
    a, b = full_spectrum(g), full_spectrum(g)
    assert np.array_equal(a.least_vector, b.least_vector)
    x = a.least_vector
    assert x[int(np.argmax(np.abs(x)))] < 0


def test_s3_complement_least_equals_large_component():
    for n in range(5, 10):
        gc = complement(s3(n).graph)
        big = max(components(gc), key=len)
        assert least_eigenpair(gc)[0] == pytest.approx(least_eigenpair(induced(gc, big))[0], abs=1e-10)


def test_rayleigh():
    assert rayleigh(complete(2), [1, 1]) == pytest.approx(1)
    with pytest.raises(ValueError):
        rayleigh(complete(2), [0, 0])
    with pytest.raises(ValueError):
        rayleigh(complete(2), [1, 0, 0])
    rng = random.Random(9)
    pool = [complement(g) for n in range(5, 9) for g in unicyclic_graphs(n)]
    for g in rng.sample(pool, 100):
        lam, x, _ = least_eigenpair(g)
        assert rayleigh(g, x) == pytest.approx(lam, abs=1e-10)
    nprng = np.random.default_rng(1)
    for _ in range(1000):
        g = rng.choice(pool)
        lam = least_eigenpair(g)[0]
        assert rayleigh(g, nprng.standard_normal(g.n)) >= lam - 1e-10


def test_least_at_most_minus_one_exhaustive():
    # equality exactly when every component with an edge is complete
    for n in range(2, 6):
        pairs = list(itertools.combinations(range(n), 2))
        for mask in range(1, 1 << len(pairs)):
            g = new_graph(n, [e for i, e in enumerate(pairs) if mask >> i & 1])
            lam = least_eigenpair(g)[0]
            cliques = all(
                induced(g, c).m == len(c) * (len(c) - 1) // 2 for c in components(g)
            )
            assert lam <= -1 + 1e-10
            assert (abs(lam + 1) < 1e-9) == cliques


def test_unicyclic_complements_below_minus_one():
    c4 = None
    for n in range(4, 11):
        for g in unicyclic_graphs(n):
            lam = least_eigenpair(complement(g))[0]
            if n == 4 and g.degrees() == [2, 2, 2, 2]:
                c4 = lam
                continue
            assert lam < -1 - 1e-9
    assert c4 == pytest.approx(-1)


def test_eigenvalues_are_charpoly_roots():
    rng = random.Random(2)
    for _ in range(50):
        g = random_graph(rng.randint(2, 10), rng)
        poly = char_poly(g)
        scale = sum(abs(c) for c in poly.coeffs) * 10 ** g.n
        for lam in full_spectrum(g).eigenvalues:
            assert abs(float(poly(lam))) <= 1e-9 * scale


def test_reconstruction():
    rng = random.Random(4)
    for _ in range(50):
        g = random_graph(rng.randint(1, 8), rng)
        a = g.adjacency_matrix().astype(float)
        vals, vecs = symmetric_eigh(a)
        assert np.allclose(vecs.T @ vecs, np.eye(g.n), atol=1e-12)
        assert np.allclose(vecs @ np.diag(vals) @ vecs.T, a, atol=1e-12)


def test_tql_helpers():
    assert list(symmetric_eigvals(np.array([[2.0]]))) == [2.0]
    # tridiagonal Toeplitz with known spectrum 2cos(k pi/(n+1))
    n = 12
    vals = sorted(tql_implicit([0.0] * n, [1.0] * (n - 1)))
    ref = sorted(2 * math.cos(k * math.pi / (n + 1)) for k in range(1, n + 1))
    assert vals == pytest.approx(ref, abs=1e-12)


def test_tolerance_validation():
    with pytest.raises(ValueError):
        full_spectrum(complete(3), tol=0)
    assert issubclass(ConvergenceError, RuntimeError)


def test_to_dict_format():
    d = full_spectrum(complete(3)).to_dict()
    assert d["least_value"] == -1.0 and d["least_multiplicity"] == 2
    assert d["eigenvalues"][-1] == 2.0
