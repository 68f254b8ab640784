import io
import json

import pytest

from kssearch.cli import main
from kssearch.graph import parse_graph6
from kssearch.ksdata import vector_fixture, write_certificate


def run(capsys, argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr("sys.stdin", io.StringIO(stdin))
    rc = main(argv)
    out = capsys.readouterr()
    return rc, out.out, out.err


def test_gen_ten(capsys):
    rc, out, _ = run(capsys, ["gen", "-n", "10", "--connected"])
    assert rc == 0
    assert len(out.split()) == 5
    assert all(parse_graph6(s).n == 10 for s in out.split())


def test_gen_is_deterministic(capsys):
    first = run(capsys, ["gen", "-n", "7", "--min-degree", "0", "--json"])
    second = run(capsys, ["gen", "-n", "7", "--min-degree", "0", "--json"])
    assert first == second
    assert all("graph6" in json.loads(line) for line in first[1].splitlines())


def test_gen_shards_partition(capsys):
    whole = set(run(capsys, ["gen", "-n", "7", "--min-degree", "0", "--no-squarefree"])[1].split())
    parts = [set(run(capsys, ["gen", "-n", "7", "--min-degree", "0", "--no-squarefree", "--shard", f"{r}/3"])[1].split())
             for r in range(3)]
    assert len(whole) == 1044
    assert set().union(*parts) == whole and sum(map(len, parts)) == len(whole)


def test_color_count_and_type(capsys):
    rc, out, _ = run(capsys, ["color", "Bw", "--count"])
    assert rc == 0 and "colorings=3" in out
    rc, out, _ = run(capsys, ["color", "Bw", "--type", "0,1,2", "--json"])
    rec = json.loads(out)
    assert sorted(map(tuple, rec["type"]["tuples"])) == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]


def test_color_check_exit_codes(capsys):
    assert run(capsys, ["color", "--check", "G_min10A"])[0] == 0
    assert run(capsys, ["color", "--check", "G_AOW17"])[0] == 1


def test_bad_graph6_is_input_error(capsys):
    rc, _, err = run(capsys, ["color", "zz"])
    assert rc == 3 and "error" in err


def test_bad_flag_is_usage_error(capsys):
    assert main(["embed", "Bw", "--restarts", "0"]) == 2
    assert main(["nosuch"]) == 2


def test_stdin_input(capsys, monkeypatch):
    rc, out, _ = run(capsys, ["color", "--count"], stdin="Bw\nA_\n", monkeypatch=monkeypatch)
    assert rc == 0 and len(out.splitlines()) == 2


def test_filter(capsys, monkeypatch):
    text = "Bw\nCr\nnot-a-graph\n"
    rc, out, _ = run(capsys, ["filter", "--pred", "squarefree", "--passing"], stdin=text, monkeypatch=monkeypatch)
    assert rc == 3
    assert out.split() == ["Bw"]


def test_cut(capsys):
    g = "ExCW"  # two triangles joined by a bridge
    rc, out, _ = run(capsys, ["cut", "-k", "2", "--json", g])
    rec = json.loads(out)
    assert rc == 1 and rec["bridges"] == [[2, 3]] and rec["level"] == 1
    rc, out, _ = run(capsys, ["cut", "-k", "2", "--json", "Bw"])
    assert rc == 0 and json.loads(out)["level"] == 2


def test_double(capsys):
    rc, out, _ = run(capsys, ["double", "--vertex", "0", "Bw"])
    h = parse_graph6(out.strip())
    assert rc == 0 and h.n == 6 and h.num_edges == 7


def test_embed_triangle(capsys):
    rc, out, _ = run(capsys, ["embed", "Bw", "--json"])
    rec = json.loads(out)
    assert rc == 0 and rec["verdict"] == "embedded" and rec["residual"] < 1e-9


def test_embed_min10a_is_unknown(capsys):
    rc, out, _ = run(capsys, ["embed", "G_min10A", "--restarts", "20", "--json"])
    rec = json.loads(out)
    assert rc == 1 and rec["verdict"] == "unknown"


def test_embed_reruns_are_identical(capsys):
    a = run(capsys, ["embed", "G_unemb12", "--restarts", "10", "--seed", "3", "--json"])
    b = run(capsys, ["embed", "G_unemb12", "--restarts", "10", "--seed", "3", "--json"])
    assert a == b


def test_embed_certificate(capsys, tmp_path):
    s = vector_fixture("peres33")
    cert = tmp_path / "p.vec"
    cert.write_text(write_certificate(dict(enumerate(s.points))))
    from kssearch.graph import emit_graph6
    from kssearch.ksdata import orthogonality_graph

    g6 = emit_graph6(orthogonality_graph(s))
    rc, out, _ = run(capsys, ["embed", g6, "--certificate", str(cert)])
    assert rc == 0
    wrong = tmp_path / "w.vec"
    wrong.write_text("ring sqrt(2)\n0: 1, 0, 0\n1: 1, 1, 0\n")
    rc, _, _ = run(capsys, ["embed", "A_", "--certificate", str(wrong)])
    assert rc == 1


def test_sentence(capsys, tmp_path):
    rc, out, _ = run(capsys, ["sentence", "Bw"])
    assert rc == 0 and out.startswith("(set-logic QF_NRA)") and "(check-sat)" in out
    dest = tmp_path / "s.smt2"
    assert run(capsys, ["sentence", "Bw", "-o", str(dest)])[0] == 0
    assert dest.read_text() == out
    rc, out, _ = run(capsys, ["sentence", "Bw", "--format", "human"])
    assert out.startswith("exists")


def test_subiso(capsys):
    rc, out, _ = run(capsys, ["subiso", "G_AOW17"])
    assert rc == 0 and "G_min10A" in out
    assert run(capsys, ["subiso", "Bw"])[0] == 1
    assert run(capsys, ["subiso", "--pattern", "Bw", "Cr"])[0] == 1
    assert run(capsys, ["subiso", "--pattern", "Cr", "C~"])[0] == 0


def test_ksys(capsys, tmp_path):
    f = tmp_path / "b.vec"
    f.write_text("ring sqrt(2)\n1, 0, 0\n0, 1, 0\n0, 0, 1\n")
    assert run(capsys, ["ksys", str(f)])[0] == 1
    from importlib import resources

    peres = resources.files("kssearch").joinpath("data", "peres33.vec")
    rc, out, _ = run(capsys, ["ksys", str(peres), "--json"])
    rec = json.loads(out)
    assert rc == 0 and rec["n"] == 33
    bad = tmp_path / "bad.vec"
    bad.write_text("ring sqrt(2)\n1, 0, 0\n-1, 0, 0\n")
    rc, _, err = run(capsys, ["ksys", str(bad)])
    assert rc == 3 and "duplicates" in err


def test_fixtures(capsys):
    rc, out, _ = run(capsys, ["fixtures"])
    assert rc == 0 and "G_AOW17" in out
    rc, out, _ = run(capsys, ["fixtures", "show", "G_min10A"])
    assert out.strip() == "IhEM@_K?w"
    assert run(capsys, ["fixtures", "show", "nope"])[0] == 3


def test_embed_text_lines(capsys):
    rc, out, _ = run(capsys, ["embed", "G_min10A", "--restarts", "10"])
    assert rc == 1 and "unknown residual=inf" in out and "10 degenerate" in out
    rc, out, _ = run(capsys, ["embed", "Cr"])
    assert rc == 1 and "unembeddable" in out and "pattern=C4" in out


def test_embed_with_order(capsys):
    order = "9;8;6;7;5;0,6,5"
    rc, out, _ = run(capsys, ["embed", "G_min10A", "--order", order, "--assignment-only", "--json"])
    assert rc == 0 and json.loads(out)["assignment"]["free"] == [9, 8, 6, 7, 5]
    rc, out, _ = run(capsys, ["embed", "G_min10A", "--order", order, "--restarts", "10", "--json"])
    assert rc == 1 and json.loads(out)["verdict"] == "unknown"
    rc, _, err = run(capsys, ["embed", "G_min10A", "--order", "9;8;0,6,5"])
    assert rc == 3 and "free pick" in err
