from __future__ import annotations

import json
import random

import pytest

from vmlink.errors import UsageError
from vmlink.graph6 import encode
from vmlink.harness import (
    PROPERTIES,
    Exhaustive,
    FromFile,
    Random,
    SweepSpec,
    enumerate_graphs,
    get_property,
    random_graph,
    read_report,
    run_sweep,
    tightness_search,
)

from conftest import C5


def test_enumeration_counts():
    assert [sum(1 for _ in enumerate_graphs(n)) for n in (0, 1, 3, 4)] == [1, 1, 8, 64]


def test_enumeration_is_distinct():
    seen = {g.adj for g in enumerate_graphs(4)}
    assert len(seen) == 64


def test_exhaustive_limit():
    with pytest.raises(UsageError):
        list(enumerate_graphs(10))
    with pytest.raises(UsageError):
        SweepSpec(Exhaustive(10), "subeq")


def test_unknown_property():
    with pytest.raises(UsageError):
        get_property("no-such-lemma")


def test_random_spec_validation():
    with pytest.raises(UsageError):
        SweepSpec(Random(65, 0.5, 1), "subeq")
    with pytest.raises(UsageError):
        SweepSpec(Random(5, 1.5, 1), "subeq")


def test_random_graph_is_seeded():
    a = random_graph(random.Random(1), 9, 0.4)
    b = random_graph(random.Random(1), 9, 0.4)
    assert a == b


def test_subeq_exhaustive_five():
    rep = run_sweep(SweepSpec(Exhaustive(5), "subeq"))
    assert rep.passed and rep.graphs == 1024 and rep.checked > 0


def test_oracle_agreement_random_twelve():
    rep = run_sweep(SweepSpec(Random(12, 0.5, 40), "kappa-oracle-agreement", seed=1))
    assert rep.passed and rep.checked == 40


@pytest.mark.parametrize("name", sorted(PROPERTIES))
def test_every_property_small_sweep(name):
    rep = run_sweep(SweepSpec(Exhaustive(4, n_min=1), name))
    assert rep.passed, rep.to_text()


def test_report_format_and_determinism(tmp_path):
    spec = SweepSpec(Random(7, None, 15, n_min=4), "nonflex", seed=9)
    a, b = run_sweep(spec), run_sweep(spec)
    assert a.body_lines() == b.body_lines()
    path = tmp_path / "r.jsonl"
    a.write(path)
    records = read_report(path)
    assert records[-2]["record"] == "summary" and records[-1]["record"] == "timing"
    assert records[-2]["checked"] == a.checked


def test_from_file(tmp_path):
    path = tmp_path / "g.g6"
    path.write_text("# two graphs\n" + encode(C5()) + "\n\nA_\n")
    rep = run_sweep(SweepSpec(FromFile(str(path)), "subeq"))
    assert rep.graphs == 2 and rep.passed
    with pytest.raises(UsageError):
        run_sweep(SweepSpec(FromFile(str(tmp_path / "missing")), "subeq"))


def test_tightness_trivial_bound():
    rep = tightness_search(0, 0, 30, seed=4)
    assert rep.bound == 1 and rep.failures == [] and rep.violations == []
    assert rep.to_text() == tightness_search(0, 0, 30, seed=4).to_text()


def test_tightness_records_witnesses():
    rep = tightness_search(1, 0, 24, seed=0)
    assert rep.violations == []
    for f in rep.failures:
        assert f["free"] < rep.bound
        json.dumps(f)


def test_tightness_rejects_huge_bound():
    with pytest.raises(UsageError):
        tightness_search(3, 1, 1)
