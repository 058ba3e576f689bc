import json
from fractions import Fraction
from itertools import product

import pytest

from conftest import X_COVERS
from orderchain.errors import SizeError
from orderchain.harness import (
    PROPERTIES,
    ConfigError,
    SuiteConfig,
    check_poset,
    corpus,
    enumerate_labeled_posets,
    random_poset,
    run_property_suite,
)
from orderchain.io import parse_poset
from orderchain.poset import cover_pairs, poset_from_covers


def bf_poset_count(d):
    """Count strict relations on d points that are transitive (and hence,
    being irreflexive, antisymmetric)."""
    pairs = [(i, j) for i in range(d) for j in range(d) if i != j]
    count = 0
    for choice in product((False, True), repeat=len(pairs)):
        rel = {pq for pq, c in zip(pairs, choice) if c}
        if any((j, i) in rel for i, j in rel):
            continue
        if all((i, k) in rel for i, j in rel for j2, k in rel if j == j2):
            count += 1
    return count


@pytest.mark.parametrize("d, expected", [(1, 1), (2, 3), (3, 19)])
def test_labeled_poset_counts(d, expected):
    posets = list(enumerate_labeled_posets(d))
    assert len(posets) == expected == bf_poset_count(d)
    assert len(set(posets)) == expected


def test_labeled_poset_counts_larger():
    assert sum(1 for _ in enumerate_labeled_posets(4)) == 219


def test_enumeration_is_deterministic():
    assert list(enumerate_labeled_posets(3)) == list(enumerate_labeled_posets(3))


def test_enumeration_guard():
    with pytest.raises(SizeError):
        list(enumerate_labeled_posets(6))
    with pytest.raises(SizeError):
        list(enumerate_labeled_posets(0))


def test_random_poset_extremes():
    assert cover_pairs(random_poset(6, 0, 1)) == []
    p = random_poset(6, 1, 1)
    assert len(cover_pairs(p)) == 5
    assert all(p.comparable(i, j) for i in range(6) for j in range(6))


def test_random_poset_is_seeded():
    assert random_poset(5, Fraction(1, 2), 42) == random_poset(5, Fraction(1, 2), 42)
    assert len({random_poset(7, Fraction(1, 2), s) for s in range(20)}) > 1
    with pytest.raises(ValueError):
        random_poset(3, 2, 0)


def test_check_poset_on_X():
    res = check_poset(poset_from_covers(5, X_COVERS), oracle_max_d=5)
    assert set(res) == set(PROPERTIES)
    assert all(res.values())


def test_check_poset_skips_oracle_above_guard():
    res = check_poset(random_poset(8, Fraction(1, 3), 3), oracle_max_d=5)
    assert "oracle_edge_agreement" not in res and "x_witness_bruteforce" not in res
    assert all(res.values())


def test_trivial_suite():
    report = run_property_suite(SuiteConfig(exhaustive_max_d=1, random_trials=0))
    assert report.posets == 1
    assert report.all_passed
    assert all(r.checked == 1 for r in report.properties.values())


def test_small_suite_passes():
    report = run_property_suite(SuiteConfig(exhaustive_max_d=3, random_trials=15, oracle_max_d=4))
    assert report.posets == 1 + 3 + 19 + 15
    assert report.all_passed, report.failed_properties()


@pytest.mark.parametrize("mutation, broken", [
    ("chain_edge", "edge_count_equality"),
    ("order_edge", "oracle_edge_agreement"),
])
def test_mutation_is_caught(mutation, broken):
    cfg = SuiteConfig(exhaustive_max_d=3, random_trials=10, random_d_range=(5, 5), mutation=mutation, seed=3)
    report = run_property_suite(cfg)
    assert not report.all_passed
    result = report.properties[broken]
    assert result.failed > 0
    # the counterexample parses back to a poset that still fails
    p = parse_poset(result.counterexample)
    assert not check_poset(p, cfg.oracle_max_d, mutation)[broken]
    assert report.config["seed"] == 3


def test_report_is_reproducible():
    cfg = SuiteConfig(exhaustive_max_d=2, random_trials=10, seed=7)
    assert run_property_suite(cfg).to_json() == run_property_suite(cfg).to_json()


def test_workers_do_not_change_report():
    base = SuiteConfig(exhaustive_max_d=3, random_trials=8, seed=11, mutation="chain_edge")
    par = SuiteConfig(exhaustive_max_d=3, random_trials=8, seed=11, mutation="chain_edge", workers=2)
    assert run_property_suite(base).to_json() == run_property_suite(par).to_json()


def test_report_json_shape():
    report = run_property_suite(SuiteConfig(exhaustive_max_d=1, random_trials=0))
    data = json.loads(report.to_json())
    assert list(data) == ["all_passed", "config", "posets", "properties"]
    assert list(data["properties"]) == list(PROPERTIES)
    assert "runtime_seconds" in json.loads(report.to_json(timing=True))


def test_corpus_order():
    cfg = SuiteConfig(exhaustive_max_d=2, random_trials=3, random_d_range=(6, 6), seed=1)
    ds = [p.d for p in corpus(cfg)]
    assert ds == [1, 2, 2, 2, 6, 6, 6]


@pytest.mark.parametrize("bad", [
    {"exhaustive_max_d": 6},
    {"oracle_max_d": 7},
    {"random_trials": -1},
    {"random_d_range": [4, 2]},
    {"edge_density": "3/2"},
    {"seed": -1},
    {"mutation": "nonsense"},
    {"unknown_key": 1},
    {"random_trials": "ten"},
    {"random_d_range": 5},
])
def test_config_validation(bad):
    with pytest.raises(ConfigError):
        SuiteConfig.from_dict(bad)


def test_config_roundtrip():
    cfg = SuiteConfig.from_dict({"edge_density": "1/3", "random_d_range": [5, 6], "seed": 9})
    assert cfg.edge_density == Fraction(1, 3)
    again = cfg.to_dict()
    assert SuiteConfig.from_dict(again) == cfg
