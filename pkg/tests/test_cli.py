import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from unicomp.cli import main
from unicomp.families import cycle, s3, u_pq
from unicomp.graph import complement, decode_graph6, encode_graph6, is_isomorphic


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_construct(capsys):
    code, out, _ = run(capsys, "construct", "--family", "u", "--p", "9", "--q", "9")
    assert code == 0
    g = decode_graph6(out)
    assert g.n == 20 and g == u_pq(9, 9).graph
    code, out, _ = run(capsys, "construct", "--family", "s3", "--n", "4")
    assert code == 0 and is_isomorphic(decode_graph6(out), s3(4).graph)
    code, out, _ = run(capsys, "construct", "--family", "cycle", "--n", "4", "--complement")
    assert decode_graph6(out).m == 2


@pytest.mark.parametrize("argv", [
    ["construct", "--family", "u", "--p", "0", "--q", "3"],
    ["construct", "--family", "star"],
    ["construct", "--family", "uprime"],
    ["construct", "--family", "nope", "--n", "3"],
    ["verify", "bogus"],
    ["verify", "lemma2.1", "--n-range", "x:y"],
    ["verify", "lemma2.1", "--n-range", "5:9"],
    ["spectrum", "garbage!"],
    ["poly", "f", "--p", "1"],
    ["poly", "g", "--p", "3", "--eval", "abc"],
    ["spectrum", "A_", "--tol", "0"],
    ["search", "--n", "2"],
])
def test_usage_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert out == ""


def test_spectrum(capsys):
    code, out, _ = run(capsys, "spectrum", "A_")
    d = json.loads(out)
    assert code == 0 and d["least_value"] == -1.0 and d["least_multiplicity"] == 1
    code, out, _ = run(capsys, "spectrum", encode_graph6(complement(cycle(4))))
    d = json.loads(out)
    assert d["least_value"] == -1.0 and d["least_multiplicity"] == 2


def test_spectrum_reads_stdin(capsys, monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.StringIO("A_\n"))
    code, out, _ = run(capsys, "spectrum")
    assert code == 0 and json.loads(out)["least_value"] == -1.0


def test_spectrum_matches_least_root(capsys):
    g6 = encode_graph6(complement(u_pq(9, 9).graph))
    _, out, _ = run(capsys, "spectrum", g6)
    lam = json.loads(out)["least_value"]
    _, out, _ = run(capsys, "poly", "f", "--p", "9", "--q", "9", "--least-root")
    root = json.loads(out)["least_root"]
    assert Fraction(root["lo"]) <= Fraction(root["hi"])
    assert abs(float(Fraction(root["hi"])) - lam) <= 1e-9


def test_poly(capsys):
    _, out, _ = run(capsys, "poly", "f", "--p", "1", "--q", "3")
    assert json.loads(out)["coeffs"] == ["0", "-7", "-10", "10", "22", "8", "-2", "-1"]
    _, out, _ = run(capsys, "poly", "g", "--p", "1")
    assert json.loads(out)["coeffs"] == ["-2", "-2", "5", "5", "-1", "-1"]
    _, out, _ = run(capsys, "poly", "f", "--p", "5", "--q", "5", "--eval", "-2")
    assert json.loads(out)["eval"]["value"] == "-10"
    _, out, _ = run(capsys, "poly", "gbar", "--p", "2", "--eval", "1/2")
    assert json.loads(out)["eval"]["at"] == "1/2"
    _, out, _ = run(capsys, "poly", "charpoly", "--graph6", "A_")
    assert json.loads(out)["coeffs"] == ["-1", "0", "1"]


def test_search(capsys):
    code, out, _ = run(capsys, "search", "--n", "4", "--objective", "lamin-complement", "--no-time")
    d = json.loads(out)
    assert code == 0 and d["class_size"] == 2 and "wall_time" not in d
    code, out, _ = run(capsys, "search", "--n", "5", "--format", "csv")
    assert out.splitlines()[0].startswith("n,objective")
    code, out, err = run(capsys, "search", "--n", "30")
    assert code == 3 and out == "" and "bound" in err


def test_search_direct_n6(capsys):
    code, out, _ = run(capsys, "search", "--n", "6", "--objective", "lamin-direct", "--no-time")
    d = json.loads(out)
    # C4 plus two pendants, not S_6^3
    assert d["unique"] and sorted(decode_graph6(d["minimizers"][0]["graph6"]).degrees()) == [1, 1, 2, 2, 2, 4]


def test_verify_exit_codes(capsys):
    code, out, _ = run(capsys, "verify", "lemma2.1", "--n-range", "13:40")
    assert code == 0 and len(out.splitlines()) == 28
    code, out, _ = run(capsys, "verify", "lemma3.3", "--n-range", "5:9", "--threads", "2")
    assert code == 0
    code, out, _ = run(capsys, "verify", "remark-un", "--n-range", "6:6")
    assert code == 1 and json.loads(out)["witnesses"]


def test_verify_is_thread_and_run_independent(capsys):
    argv = ["verify", "lemma3.2", "--n-range", "5:6", "--trials", "300", "--seed", "4", "--no-time"]
    _, a, _ = run(capsys, *argv, "--threads", "1")
    _, b, _ = run(capsys, *argv, "--threads", "3")
    assert a == b
    argv = ["verify", "theorem3.4", "--n-range", "8:9", "--no-time"]
    _, a, _ = run(capsys, *argv, "--threads", "1")
    _, b, _ = run(capsys, *argv, "--threads", "4")
    assert a == b


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "unicomp", "construct", "--family", "star", "--n", "3"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.strip() == "Bo"
