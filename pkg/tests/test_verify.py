import json
import random

import numpy as np
import pytest

from unicomp.eigen import least_eigenpair
from unicomp.families import s3, star, u_pq
from unicomp.graph import complement, is_tree, is_unicyclic, new_graph
from unicomp.verify import (
    Verdict,
    _rearrangement_instance,
    check_lemma_2_1,
    check_lemma_2_2,
    check_lemma_3_1,
    check_lemma_3_2,
    check_lemma_3_3,
    check_remark_minimizer_un,
    check_theorem_3_4,
    lemma_3_3_instance,
    plane_sign_sweep,
    prufer_to_tree,
    random_tree,
    random_unicyclic,
    rearrangement_bound,
    replay_lemma_3_3,
    replay_rearrangement,
    replay_remark_witness,
    sign_partition,
)


def test_verdict_contract():
    with pytest.raises(ValueError):
        Verdict("x", {}, False)
    v = Verdict("x", {"n": 3}, True)
    assert json.loads(v.to_json())["holds"] is True


def test_lemma_2_1():
    for n in (13, 14, 27, 40):
        v = check_lemma_2_1(n)
        assert v.holds, v.to_dict()
    assert check_lemma_2_1(13).parameters["g_at_minus_3"] == str(95 - 19 * 9)
    with pytest.raises(ValueError):
        check_lemma_2_1(12)
    v = check_lemma_2_1(12, force=True)
    assert any("hypothesis" in note for note in v.notes)


def test_lemma_2_2():
    v = check_lemma_2_2(20)
    assert v.holds and v.parameters["balanced_split"] == [9, 9]
    assert v.parameters["numeric_argmin"] == [9, 9]
    v = check_lemma_2_2(21)
    assert v.holds and v.parameters["balanced_split"] == [10, 9]
    assert v.parameters["runner_up"] == [9, 10]
    with pytest.raises(ValueError):
        check_lemma_2_2(19)


def test_random_generators():
    rng = random.Random(1)
    for n in range(1, 12):
        assert is_tree(random_tree(n, rng))
    for n in range(3, 12):
        assert is_unicyclic(random_unicyclic(n, rng))
    assert prufer_to_tree([0, 0, 0]) == star(5)


def test_rearrangement_bounds_attained_by_extremal_graphs():
    x = [9, 7, 5, 3, 2, 1]
    assert rearrangement_bound(x, False) == 9 * 18
    assert _rearrangement_instance(star(6), x, False) is None
    assert sum(x[0] * v for v in x[1:]) == rearrangement_bound(x, False)
    g = s3(6).graph
    total = sum(x[u] * x[v] for u, v in g.edges())
    assert total == rearrangement_bound(x, True)
    assert _rearrangement_instance(g, x, True) is None


def test_rearrangement_witness_replays():
    # K4 is outside the lemma's class, so it breaks the bound
    g = new_graph(4, [(u, v) for u in range(4) for v in range(u + 1, 4)])
    w = _rearrangement_instance(g, [4, 3, 2, 1], False)
    assert w is not None and w["kind"] == "bound violated"
    assert replay_rearrangement(w)
    # C4 meets the tree bound with equality, which is illegal off the star
    w = _rearrangement_instance(new_graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)]), [4, 3, 2, 1], False)
    assert w["kind"] == "equality off the extremal graph"
    assert replay_rearrangement(w)


def test_lemmas_3_1_and_3_2():
    for n in (5, 8):
        a = check_lemma_3_1(n, trials=2000, seed=3)
        b = check_lemma_3_2(n, trials=2000, seed=3)
        assert a.holds and b.holds
    assert check_lemma_3_1(6, 500, 1).to_json() == check_lemma_3_1(6, 500, 1).to_json()
    with pytest.raises(ValueError):
        check_lemma_3_2(2)


def test_sign_partition():
    u = u_pq(9, 9).graph
    plus, minus, crossing = sign_partition(u, np.ones(u.n))
    assert minus == [] and crossing == []
    plus, minus, crossing = sign_partition(u, np.zeros(u.n))
    assert plus == [] and len(minus) == u.n
    x = least_eigenpair(complement(u))[1]
    plus, minus, crossing = sign_partition(u, x)
    assert len(crossing) == 1
    with pytest.raises(ValueError):
        sign_partition(u, [1.0])


def test_plane_sign_sweep():
    e = np.eye(4)
    assert not plane_sign_sweep(e[0], e[1], 1e-9)
    v1 = np.array([1, 1, -1, -1, 0, 0]) / 2
    v2 = np.array([0, 0, 0, 0, 1, -1]) / np.sqrt(2)
    # cos(t) v1 + sin(t) v2 with t = pi/2 has only one entry of each sign
    assert not plane_sign_sweep(v1, v2, 1e-9)
    w2 = np.array([1, -1, 1, -1, 0, 0]) / 2
    assert plane_sign_sweep(v1, w2, 1e-9) is False  # t = pi/4 zeroes two entries
    # both vectors sum to zero and entries come in equal pairs, so every
    # combination has at least two entries of each sign
    a = np.array([1, 1, -1, -1, 0, 0.0])
    b = np.array([0, 0, 1, 1, -1, -1.0])
    assert plane_sign_sweep(a, b, 1e-9)


def test_lemma_3_3():
    v = check_lemma_3_3(5)
    assert v.holds and v.parameters["class_size"] == 5
    v = check_lemma_3_3(8, threads=2)
    assert v.holds and v.parameters["class_size"] == 89
    assert all(m["passed"] for m in v.parameters["multiplicity_cases"])
    # the complement of S_n^3 has an isolated vertex: its zero entry is a dead-zone entry
    case = lemma_3_3_instance(s3(7).graph)
    assert case["passed"] and max(z for _, _, z in case["counts"]) >= 1
    with pytest.raises(ValueError):
        check_lemma_3_3(4)


def test_lemma_3_3_failing_witness_replays():
    v = check_lemma_3_3(6, sign_tol=0.9)
    assert not v.holds and v.witnesses
    for w in v.witnesses:
        assert replay_lemma_3_3(w)


def test_theorem_3_4():
    v = check_theorem_3_4(20)
    assert v.holds and v.parameters["mode"] == "family" and v.parameters["balanced"] == "U(9, 9)"
    assert any("uncomplemented" in note for note in v.notes)
    v = check_theorem_3_4(8)
    assert v.holds and v.parameters["mode"] == "exhaustive"
    assert v.parameters["matches_balanced_u"] is True
    v = check_theorem_3_4(10)
    assert v.holds and v.parameters["matches_balanced_u"] is False
    a = check_theorem_3_4(9, threads=1).to_json()
    b = check_theorem_3_4(9, threads=3).to_json()
    assert a == b


def test_remark_fails_with_replayable_witness():
    v = check_remark_minimizer_un(6)
    assert not v.holds
    (w,) = v.witnesses
    # C4 with two pendants at one vertex
    assert w["degrees"] == [4, 2, 2, 2, 1, 1]
    assert w["lamin"] < w["lamin_s3"]
    assert replay_remark_witness(w, 6)
    with pytest.raises(ValueError):
        check_remark_minimizer_un(5)
    v = check_remark_minimizer_un(5, force=True)
    assert any("hypothesis" in note for note in v.notes)


@pytest.mark.slow
def test_remark_holds_from_twelve():
    # the direct minimiser switches to S_n^3 once n reaches 12
    v = check_remark_minimizer_un(12, threads=4, max_n=12)
    assert v.holds and v.parameters["report"]["class_size"] == 5026
