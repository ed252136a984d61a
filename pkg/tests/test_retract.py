import itertools
import random

import numpy as np
import pytest

from ybsolve.construct import gi_X, trivial_solution
from ybsolve.enumerate import enumerate_square_free
from ybsolve.exceptions import BoundExceededError, MplUndefinedError, NotSymmetricError
from ybsolve.group import is_abelian, orbit_partition, yb_group
from ybsolve.qset import QuadraticSet, classify, from_left_action
from ybsolve.retract import (
    TowerStatus,
    check_mpl3_consequences,
    check_mpl_le2,
    check_mpl_le3_condition,
    mpl,
    mpl_via_tower,
    retract,
    retract_class_decomposition,
    retract_tower,
    tower_identity_holds,
    tower_identity_witness,
    tower_value,
)


def test_retract_of_three_element_solution(three):
    step = retract(three)
    assert step.quotient.n == 2
    assert step.quotient.labels == ("[x1]", "[x3]")
    assert step.class_of.tolist() == [0, 0, 1]
    assert step.classes == [[0, 1], [2]]


def test_mpl_of_small_solutions(three):
    assert mpl(trivial_solution(1)) == 0
    assert mpl(trivial_solution(4)) == 1
    assert mpl(three) == 2


def test_mpl_of_fixtures(gap, jump):
    assert mpl(gap) == 3
    assert mpl(jump) == 4


def test_retract_tower_describes_the_level(gap):
    tower = retract_tower(gap)
    assert tower.status == TowerStatus.TERMINATED
    assert tower.describe() == "mpl 3"
    assert [Q.n for Q in tower.retracts()] == [12, 5, 3, 1]
    assert tower.class_map(2).tolist() == [0] * 8 + [1, 2, 1, 2]


def test_retract_tower_budget(gap):
    tower = retract_tower(gap, max_levels=1)
    assert tower.status == TowerStatus.BUDGET_EXHAUSTED
    assert tower.describe() == "undecided after 1 levels"
    with pytest.raises(BoundExceededError):
        tower.mpl


def test_retract_needs_a_symmetric_set():
    broken = from_left_action([(0, 2, 1), (2, 1, 0), (0, 1, 2)])
    with pytest.raises(NotSymmetricError):
        retract(broken)


def test_retract_keeps_given_right_table():
    n = 3
    flip = QuadraticSet(np.tile(np.arange(n), (n, 1)), np.tile(np.arange(n)[:, None], (1, n)))
    step = retract(flip)
    assert step.quotient.n == 1
    assert not step.quotient.lri_derived


def test_tower_value(three):
    # ^{x3}x1 = x2, then ^{x2}x3 = x3
    assert tower_value(three, [2, 0]) == 1
    assert tower_value(three, [1, 2]) == 2
    assert tower_value(three, [0]) == 0


def test_tower_identity(three):
    assert tower_identity_witness(three, 1) is not None
    assert tower_identity_holds(three, 2)


def test_mpl_via_tower_on_fixtures(three, gap, jump):
    for Q in (trivial_solution(1), trivial_solution(3), three, gap, jump):
        assert mpl_via_tower(Q) == mpl(Q)


@pytest.mark.parametrize("m", [1, 2, 3, 4, 5])
def test_mpl_via_tower_on_the_family(m):
    Q = gi_X(m)
    assert mpl_via_tower(Q) == mpl(Q) == m


@pytest.mark.parametrize("n", [2, 3, 4])
def test_mpl_via_tower_on_enumerated_solutions(n):
    for Q in enumerate_square_free(n):
        assert mpl_via_tower(Q) == mpl(Q)


@pytest.mark.slow
def test_mpl_via_tower_on_order_five():
    for Q in enumerate_square_free(5):
        assert mpl_via_tower(Q) == mpl(Q)


def test_low_level_checks(three, gap, jump):
    assert check_mpl_le2(three)
    assert not check_mpl_le2(gap)
    assert check_mpl_le3_condition(gap)
    assert not check_mpl_le3_condition(jump)


def test_low_level_checks_match_the_retract_engine():
    for n in range(2, 5):
        for Q in enumerate_square_free(n):
            level = mpl(Q)
            assert check_mpl_le2(Q) == (level <= 2)
            assert check_mpl_le3_condition(Q) == (level <= 3)


def test_mpl3_consequences_on_gap(gap):
    report = check_mpl3_consequences(gap)
    assert report.cross_orbit_laws
    assert report.orbit_groups_abelian
    assert report.orbits_stu


def test_retract_classes_of_gap(gap):
    decomposition = retract_class_decomposition(gap)
    assert decomposition.mpl == 3
    assert [c.labels for c in decomposition.classes] == [[f"x{i}" for i in range(1, 9)], ["a", "c"], ["b", "d"]]
    assert all(c.restricted_mpl <= 2 for c in decomposition.classes)
    assert decomposition.stu_union is True


def test_retract_classes_of_trivial_solution():
    decomposition = retract_class_decomposition(trivial_solution(3))
    assert decomposition.partition() == [[0], [1], [2]]
    assert decomposition.stu_union is None


def test_retract_classes_of_one_point():
    with pytest.raises(MplUndefinedError):
        retract_class_decomposition(trivial_solution(1))


def _solutions_up_to_four(three, gap, jump):
    for n in range(1, 5):
        yield from enumerate_square_free(n)
    yield three
    yield gap
    yield jump


def test_retract_lowers_level_and_keeps_properties(three, gap, jump):
    for Q in _solutions_up_to_four(three, gap, jump):
        level = mpl(Q)
        assert mpl_via_tower(Q) == level
        if level == 0:
            continue
        quotient = retract(Q).quotient
        assert mpl(quotient) == level - 1
        flags = classify(quotient)
        assert flags.square_free and flags.lri and flags.cyclic


def _candidate_subsets(Q):
    orbits = [tuple(o) for o in orbit_partition(Q).orbits]
    return orbits + [tuple(range(Q.n))] if len(orbits) > 1 else orbits


def test_truncation_cuts_the_leading_subtower(three, gap, jump):
    rng = random.Random(5)
    premises = 0
    for Q in _solutions_up_to_four(three, gap, jump):
        for Z in _candidate_subsets(Q):
            for k in (1, 2):
                for ys in itertools.product(range(Q.n), repeat=k):
                    base = tower_value(Q, ys)
                    if any(tower_value(Q, [alpha, *ys]) != base for alpha in Z):
                        continue
                    premises += 1
                    for _ in range(3):
                        prefix = [rng.randrange(Q.n) for _ in range(rng.randint(0, 2))]
                        suffix = [rng.randrange(Q.n) for _ in range(rng.randint(0, 2))]
                        alpha = rng.choice(Z)
                        assert tower_value(Q, [*prefix, alpha, *ys, *suffix]) == tower_value(Q, [*ys, *suffix])
    assert premises > 0


def test_truncation_on_three_element_solution(three):
    # ℒ_{x1} and ℒ_{x2} fix x3, so towers over {x1, x2} followed by x3 collapse
    assert tower_value(three, [0, 2]) == tower_value(three, [1, 2]) == tower_value(three, [2])
    assert tower_value(three, [2, 0, 2, 1]) == tower_value(three, [2, 1])


def _stu_premise(Q, Y, Z):
    return all(Q.left[Q.left[alpha, y], z] == Q.left[y, z] for alpha in Z for y in Y for z in Z)


def test_alpha_drops_out_of_towers_under_stu_premise(gap):
    checked = 0
    for Q in [*(s for n in range(1, 5) for s in enumerate_square_free(n)), gap]:
        if not is_abelian(yb_group(Q)):
            continue
        subsets = _candidate_subsets(Q)
        for Y, Z in itertools.product(subsets, repeat=2):
            if not _stu_premise(Q, Y, Z):
                continue
            checked += 1
            for k in (1, 2, 3):
                for ys in itertools.product(Y, repeat=k):
                    for alpha in Z:
                        for z in Z:
                            assert tower_value(Q, [alpha, *ys, z]) == tower_value(Q, [*ys, z])
    assert checked > 0
