"""Backtracking searches, the symmetry audit, and the sweep drivers."""

import itertools
import math

import pytest

import oracles
from helpers import all_trees, path, spider, star, tri_y
from tree_amity import (
    BUDGET_EXCEEDED,
    FOUND,
    PROVED_NONE,
    SearchBudget,
    ShapeMismatch,
    SizeMismatch,
    check_friendly_bijection,
    check_friendly_numbering,
    enumerate_free_trees,
    find_subtree_pair,
    make_cb,
    search_bijection,
    search_numbering,
    sweep_cb_universal,
    sweep_hypothesis,
    sweep_question_path,
    symmetry_audit,
)

EXHAUSTIVE = SearchBudget(exhaustive=True)


# -- budgets ---------------------------------------------------------------------


def test_budget_validation():
    with pytest.raises(ValueError):
        SearchBudget(max_nodes=0)
    with pytest.raises(ValueError):
        SearchBudget(time_limit=0)


def test_budget_exhaustion_is_reported():
    result = search_numbering(tri_y(), SearchBudget(max_nodes=50))
    assert result.status == BUDGET_EXCEEDED
    assert result.witness is None
    # the counter includes the node that tripped the limit
    assert result.nodes == 51


def test_exhaustive_flag_overrides_limits():
    result = search_numbering(star(3), SearchBudget(max_nodes=1, exhaustive=True))
    assert result.status == FOUND


# -- numbering search --------------------------------------------------------------


def test_search_agrees_with_brute_force_existence():
    for m in range(1, 6):
        for t in all_trees(m):
            result = search_numbering(t, EXHAUSTIVE)
            exists = any(
                oracles.check_numbering_naive(t.edges, t.n, perm)
                for perm in itertools.permutations(range(1, m + 1))
            )
            assert (result.status == FOUND) == exists, t.edges
            if result.status == FOUND:
                nums = result.witness.numbers
                assert oracles.check_numbering_naive(t.edges, t.n, nums)


def test_search_witness_is_friendly_up_to_nine_edges():
    for t in (tri_y(), spider(3, 3, 3), spider(2, 2, 2, 2)):
        result = search_numbering(t, EXHAUSTIVE)
        assert result.status == FOUND
        assert check_friendly_numbering(result.witness) is None


def test_pruning_changes_nothing_small():
    for m in range(1, 6):
        for t in all_trees(m):
            fast = search_numbering(t, EXHAUSTIVE, prune=True)
            slow = search_numbering(t, EXHAUSTIVE, prune=False)
            assert fast.status == slow.status
            if fast.status == FOUND:
                assert fast.witness.numbers == slow.witness.numbers
            assert fast.nodes <= slow.nodes


def test_search_is_deterministic():
    t = spider(2, 2, 1)
    a = search_numbering(t, EXHAUSTIVE)
    b = search_numbering(t, EXHAUSTIVE)
    assert a.status == b.status == FOUND
    assert a.witness.numbers == b.witness.numbers
    assert a.nodes == b.nodes


# -- bijection search ---------------------------------------------------------------


def test_bijection_search_needs_equal_sizes():
    with pytest.raises(SizeMismatch):
        search_bijection(path(3), path(4))


def test_bijection_search_agrees_with_brute_force():
    for m in range(1, 5):
        shapes = all_trees(m)
        for s in shapes:
            for t in shapes:
                result = search_bijection(s, t, EXHAUSTIVE)
                exists = any(
                    oracles.check_bijection_naive(s.edges, s.n, t.edges, t.n, perm)
                    for perm in itertools.permutations(range(m))
                )
                assert (result.status == FOUND) == exists, (s.edges, t.edges)
                if result.status == FOUND:
                    b = result.witness
                    assert check_friendly_bijection(b) is None
                    assert oracles.check_bijection_naive(
                        s.edges, s.n, t.edges, t.n, b.mapping
                    )


def test_bijection_search_proves_the_known_negative():
    cb = make_cb(5, 5)
    result = search_bijection(cb.tree, spider(3, 3, 3), EXHAUSTIVE)
    assert result.status == PROVED_NONE
    assert result.witness is None


def test_bijection_budget_exhaustion():
    cb = make_cb(5, 5)
    result = search_bijection(cb.tree, spider(3, 3, 3), SearchBudget(max_nodes=5))
    assert result.status == BUDGET_EXCEEDED


# -- symmetry audit -----------------------------------------------------------------


def test_audit_shape_and_totals():
    report = symmetry_audit(3)
    assert report.max_edges == 3
    assert len(report.records) == 1 + 1 + 3
    for rec in report.records:
        assert rec.bijections == math.factorial(rec.edges)
        assert 0 <= rec.friendly <= rec.bijections
        assert rec.inverse_failures == 0
    keys = [(r.edges, r.code_a, r.code_b) for r in report.records]
    assert keys == sorted(keys)
    assert report.total_failures == 0
    assert report.total_friendly == sum(r.friendly for r in report.records)


def test_audit_rejects_nonsense():
    with pytest.raises(ShapeMismatch):
        symmetry_audit(0)


def test_audit_parallel_run_matches_serial():
    serial = symmetry_audit(4, jobs=1)
    parallel = symmetry_audit(4, jobs=2)
    assert serial.to_json_dict() == parallel.to_json_dict()


# -- sweeps ---------------------------------------------------------------------------


def test_question_sweep_finds_everything_small():
    report = sweep_question_path(5)
    assert len(report.records) == 1 + 1 + 2 + 3 + 6
    assert report.counts() == {FOUND: 13}
    assert report.findings == []
    assert all(r.method == "trunk" for r in report.records)
    keys = [(r.edges, r.code) for r in report.records]
    assert keys == sorted(keys)


def test_question_sweep_records_replay():
    from tree_amity import parse_numbering, parse_tree_labeled

    report = sweep_question_path(4)
    for rec in report.records:
        t, labels = parse_tree_labeled(rec.tree_text)
        assert t.canonical_code() == rec.code
        nu = parse_numbering(rec.witness, t, labels)
        assert check_friendly_numbering(nu) is None


def test_diameter_four_sweep():
    report = sweep_hypothesis(5, "d4")
    want = sum(
        1 for m in range(1, 6) for t in all_trees(m) if t.diameter() <= 4
    )
    assert len(report.records) == want
    assert report.counts() == {FOUND: want}
    assert all(r.diameter <= 4 for r in report.records)
    assert all(r.method == "search" for r in report.records)


def test_odd_degree_sweep():
    report = sweep_hypothesis(7, "odd")
    assert report.counts() == {FOUND: 3}
    codes = {r.code for r in report.records}
    assert star(3).canonical_code() in codes
    assert star(5).canonical_code() in codes
    assert star(7).canonical_code() in codes


def test_sweep_rejects_unknown_hypothesis():
    with pytest.raises(ValueError):
        sweep_hypothesis(4, "diameter")


def test_cb_sweep_matches_direct_criterion():
    report = sweep_cb_universal(3, 3)
    trees = {t.canonical_code(): t for t in all_trees(5)}
    assert len(report.records) == len(trees)
    for rec in report.records:
        pair = find_subtree_pair(trees[rec.code], 3, 3)
        assert (rec.outcome == FOUND) == (pair is not None)


def test_sweep_parallel_run_matches_serial():
    serial = sweep_question_path(4, jobs=1)
    parallel = sweep_question_path(4, jobs=2)
    assert serial.to_json_dict() == parallel.to_json_dict()
