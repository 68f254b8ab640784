import io
import json
import random

import pytest

from kssearch.canon import certificate
from kssearch.coloring import is_010_colorable
from kssearch.generate import (
    GenSpec,
    annotate,
    count_nonisomorphic,
    dumps_record,
    generate,
    get_predicate,
    parse_predicates,
    parse_shard,
    pipeline_filter,
)
from kssearch.graph import Graph, emit_graph6, is_connected, is_squarefree, min_degree
from oracles import random_graph


def certs(gs):
    return [certificate(g) for g in gs]


def test_spec_validation():
    with pytest.raises(ValueError):
        GenSpec(0)
    with pytest.raises(ValueError):
        GenSpec(65)
    with pytest.raises(ValueError):
        GenSpec(5, shard=(3, 3))
    with pytest.raises(ValueError):
        GenSpec(5, min_degree=-1)


def test_parse_shard():
    assert parse_shard("2/7") == (2, 7)
    for bad in ("7/7", "1", "a/b", "1/0"):
        with pytest.raises(ValueError):
            parse_shard(bad)


def test_triangle_only():
    out = list(generate(GenSpec(3, min_degree=2)))
    assert len(out) == 1 and out[0].num_edges == 3


@pytest.mark.parametrize("n,want", [(1, 1), (2, 2), (3, 4), (4, 11), (5, 34), (6, 156)])
def test_unrestricted_counts(n, want):
    gs = list(generate(GenSpec(n, min_degree=0, require_squarefree=False)))
    assert len(gs) == want
    assert len(set(certs(gs))) == want


@pytest.mark.parametrize("n", [4, 5])
def test_count_nonisomorphic(n):
    assert count_nonisomorphic(n) == {4: 11, 5: 34}[n]


def test_count_nonisomorphic_limits():
    assert count_nonisomorphic(1) == 1
    with pytest.raises(ValueError):
        count_nonisomorphic(8)


def _brute_classes(n, keep):
    from kssearch.graph import all_labeled_graphs

    return {certificate(g) for g in all_labeled_graphs(n) if keep(g)}


@pytest.mark.parametrize("n", range(1, 7))
def test_squarefree_pruning_matches_filtering(n):
    pruned = set(certs(generate(GenSpec(n, min_degree=0))))
    assert pruned == _brute_classes(n, is_squarefree)


@pytest.mark.parametrize("n", [5, 6])
@pytest.mark.parametrize("md", [1, 2])
def test_min_degree_lookahead(n, md):
    got = list(generate(GenSpec(n, min_degree=md, require_squarefree=False, require_connected=True)))
    want = _brute_classes(n, lambda g: min_degree(g) >= md and is_connected(g))
    assert set(certs(got)) == want and len(got) == len(want)


def test_squarefree_seven_against_unpruned():
    full = [g for g in generate(GenSpec(7, min_degree=0, require_squarefree=False)) if is_squarefree(g)]
    pruned = list(generate(GenSpec(7, min_degree=0)))
    assert sorted(certs(full)) == sorted(certs(pruned))


def test_predicates_hold_on_output():
    for n in (10, 11):
        for g in generate(GenSpec(n, min_degree=3, require_connected=True)):
            assert is_squarefree(g) and min_degree(g) >= 3 and is_connected(g)


@pytest.mark.parametrize("mod", [2, 3, 7])
def test_shards_partition(mod):
    spec = dict(n=8, min_degree=0)
    whole = sorted(certs(generate(GenSpec(**spec))))
    parts = []
    for res in range(mod):
        parts.extend(certs(generate(GenSpec(**spec, shard=(res, mod)))))
    assert sorted(parts) == whole


def test_deterministic_and_jobs_independent():
    spec = GenSpec(9, min_degree=2)
    a = [emit_graph6(g) for g in generate(spec)]
    b = [emit_graph6(g) for g in generate(spec)]
    c = [emit_graph6(g) for g in generate(spec, jobs=2)]
    assert a == b == c


# -- pipeline --------------------------------------------------------------------------


def test_predicate_lookup():
    assert get_predicate("mindeg3").test(Graph.complete(4))
    assert not get_predicate("mindeg3").test(Graph.complete(3))
    assert [p.name for p in parse_predicates("squarefree, edge2,")] == ["squarefree", "edge2"]
    with pytest.raises(ValueError):
        get_predicate("nope")


def test_annotate_short_circuit():
    rec = annotate(Graph.complete(4), parse_predicates("squarefree,colorable"))
    assert rec["squarefree"] is False and "colorable" not in rec and rec["pass"] is False
    rec = annotate(Graph.complete(3), parse_predicates("colorable"))
    assert rec["colorable"] is True and rec["pass"] is True


def test_pipeline_skips_malformed_lines():
    errs = []
    lines = ["Bw", "not graph6!", "", "C~"]
    out = list(pipeline_filter(lines, ["squarefree"], on_error=lambda i, m: errs.append(i)))
    assert [r["line"] for r in out] == [1, 4]
    assert errs == [2]


def test_pipeline_order_and_replay():
    rng = random.Random(1)
    lines = [emit_graph6(random_graph(rng, rng.randint(3, 12), 0.3)) for _ in range(150)]
    preds = ["squarefree", "mindeg2", "colorable"]
    one = "\n".join(dumps_record(r) for r in pipeline_filter(lines, preds))
    two = "\n".join(dumps_record(r) for r in pipeline_filter(lines, preds))
    par = "\n".join(dumps_record(r) for r in pipeline_filter(lines, preds, jobs=2))
    assert one == two == par
    for line, rec in zip(lines, (json.loads(x) for x in one.splitlines())):
        assert rec["graph6"] == line


def test_noncolorable_predicate():
    rec = annotate(Graph.complete(4), parse_predicates("noncolorable"))
    assert rec["pass"] and not is_010_colorable(Graph.complete(4))


def test_catalog_predicate(aow17):
    assert get_predicate("catalog").test(aow17)
    assert not get_predicate("catalog").test(Graph.complete(3))
