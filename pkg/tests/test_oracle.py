import random

import pytest

from casecount import Side, classify_all
from casecount.oracle import (
    ConflictingEdits,
    Merge,
    Move,
    Split,
    brute_force_classify,
    perturb,
    random_clustering,
    random_edit_script,
    random_pair,
)


def test_brute_force_table1(table1):
    assert brute_force_classify(*table1).as_tuple() == (2, 2, 1, 2)


def test_brute_force_identical(table1):
    baseline, _ = table1
    assert brute_force_classify(baseline, baseline.with_side(Side.COUNTERPART)).as_tuple() == (7, 0, 0, 0)


def test_brute_force_agrees_on_random_instances():
    rng = random.Random(200)
    for _ in range(200):
        a, b = random_pair(rng)
        assert brute_force_classify(a, b) == classify_all(a, b)[1]


def test_empty_script(table1):
    counterpart, expected = perturb(table1[0], [])
    assert expected.as_tuple() == (7, 0, 0, 0)
    assert counterpart.member_sets() == table1[0].member_sets()


def test_merge_two_table1_clusters(table1):
    counterpart, expected = perturb(table1[0], [Merge(("a", "b"))])
    assert expected.as_tuple() == (5, 2, 0, 0)
    assert classify_all(table1[0], counterpart)[1] == expected


def test_split_reproduces_table1_e(table1):
    baseline, real = table1
    counterpart, expected = perturb(baseline, [Split("e", (("8", "9"), ("10",)))])
    assert expected.as_tuple() == (6, 0, 1, 0)
    assert classify_all(baseline, counterpart)[1] == expected
    # the split e -> {8,9},{10} is exactly what happens to e in the worked example
    assert {frozenset(real.members[b]) for b in ("w", "t")} == {frozenset({"8", "9"}), frozenset({"10"})}


def test_move_out_of_multi_member_cluster(table1):
    counterpart, expected = perturb(table1[0], [Move("6", "b")])
    assert expected.as_tuple() == (5, 1, 0, 1)
    assert brute_force_classify(table1[0], counterpart) == expected


def test_move_of_a_singleton_is_a_merge(table1):
    counterpart, expected = perturb(table1[0], [Move("1", "b")])
    assert expected.as_tuple() == (5, 2, 0, 0)
    assert brute_force_classify(table1[0], counterpart) == expected


@pytest.mark.parametrize("script", [
    [Merge(("a", "b")), Merge(("b", "c"))],
    [Merge(("a", "b")), Split("b", (("2",), ("3",)))],
    [Move("4", "e"), Split("e", (("8",), ("9", "10")))],
    [Merge(("a", "a"))],
    [Merge(("a",))],
    [Merge(("a", "nope"))],
    [Split("c", (("4",), ("5",)))],
    [Move("99", "a")],
])
def test_conflicting_or_bad_edits(table1, script):
    with pytest.raises(ConflictingEdits):
        perturb(table1[0], script)


@pytest.mark.parametrize("kind", ["merge", "split", "move", "mixed"])
def test_generated_scripts_match_ground_truth(kind):
    rng = random.Random(kind)
    for _ in range(40):
        base = random_clustering(rng, rng.randint(5, 60), rng.randint(2, 20))
        script = random_edit_script(base, rng, kind)
        counterpart, expected = perturb(base, script)
        assert classify_all(base, counterpart)[1] == expected
        assert brute_force_classify(base, counterpart) == expected


def test_exclude_keeps_clusters_untouched():
    rng = random.Random(1)
    base = random_clustering(rng, 50, 10)
    keep = list(base.members)[:5]
    for _ in range(20):
        for edit in random_edit_script(base, rng, "mixed", n_edits=4, exclude=keep):
            touched = {edit.cluster} if isinstance(edit, Split) else \
                set(edit.clusters) if isinstance(edit, Merge) else {base.cluster_of(edit.reference), edit.target}
            assert touched.isdisjoint(keep)
