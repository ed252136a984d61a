import numpy as np
import pytest

from ybsolve.construct import trivial_solution
from ybsolve.enumerate import enumerate_fixing_quadratic_sets
from ybsolve.exceptions import ConsistencyError, QuadraticSetError
from ybsolve.perm import Permutation
from ybsolve.qset import (
    FLAG_NAMES,
    PropertyFlags,
    QuadraticSet,
    action_components,
    alternative_criteria,
    braid_witness,
    check_split_identity,
    check_stu_laws,
    classify,
    complement,
    from_left_action,
    is_automorphism,
    is_G_invariant,
    is_homomorphism,
    is_r_invariant,
    is_square_free_solution,
    iter_isomorphisms,
    left_perm,
    lri_right_table,
    restrict,
    right_perm,
    split_maps,
)


@pytest.fixture
def broken():
    """ℒ_{x1} = (x2 x3), ℒ_{x2} = (x1 x3), ℒ_{x3} = id: square-free but not braided."""
    return from_left_action([(0, 2, 1), (2, 1, 0), (0, 1, 2)])


def test_identity_rows_give_the_flip():
    Q = from_left_action([tuple(range(4))] * 4)
    for x in range(4):
        for y in range(4):
            assert Q.r(x, y) == (y, x)
    assert classify(Q).square_free_solution


def test_three_element_solution_flags(three):
    flags = classify(three)
    assert flags.square_free_solution
    assert flags.lri and flags.cyclic
    assert flags.first_witness == {}
    assert three.r(2, 0) == (1, 2)


def test_broken_set_reports_least_witness(broken):
    flags = classify(broken)
    assert flags.nondegenerate and flags.square_free
    assert not flags.square_free_solution
    witness = braid_witness(broken)
    assert witness is not None and len(witness) == 3
    assert not is_square_free_solution(broken)


def test_braided_equals_l1_r1_lr3(broken, gap):
    for Q in (broken, gap):
        flags = classify(Q)
        assert flags.braided == (flags.l1 and flags.r1 and flags.lr3)


def test_degenerate_set():
    Q = QuadraticSet(np.zeros((2, 2), dtype=int), np.zeros((2, 2), dtype=int))
    flags = classify(Q)
    assert not flags.nondegenerate
    assert flags.first_witness["nondegenerate"] == (0,)
    assert lri_right_table(Q) is None


@pytest.mark.parametrize(
    "left, right",
    [
        (np.zeros((2, 3)), np.zeros((2, 3))),
        (np.zeros((2, 2)), np.zeros((3, 3))),
        (np.full((2, 2), 2), np.zeros((2, 2))),
    ],
)
def test_rejects_malformed_tables(left, right):
    with pytest.raises(QuadraticSetError):
        QuadraticSet(left, right)


def test_rejects_bad_labels():
    rows = [(0, 1), (0, 1)]
    with pytest.raises(QuadraticSetError):
        from_left_action(rows, ["a", "a"])
    with pytest.raises(QuadraticSetError):
        from_left_action(rows, ["a b", "c"])


def test_from_left_action_needs_bijections():
    with pytest.raises(QuadraticSetError, match="not a bijection"):
        from_left_action([(0, 0), (0, 1)])


def test_left_and_right_translations(three):
    assert left_perm(three, 2) == Permutation((1, 0, 2))
    # ℛ_{x3} = ℒ_{x3}⁻¹ for an lri set
    assert right_perm(three, 2) == Permutation((1, 0, 2))
    with pytest.raises(QuadraticSetError):
        left_perm(three, 3)


def test_basic_equivalences_for_small_orders():
    for n in range(1, 5):
        for Q in enumerate_fixing_quadratic_sets(n):
            flags = classify(Q)
            if not (flags.nondegenerate and flags.involutive and flags.square_free):
                continue
            assert flags.l1 == flags.r1 == flags.lr3 == flags.braided
            if flags.braided:
                assert flags.lri and flags.cyclic


def test_alternative_criteria_agree_with_direct_check():
    for n in range(1, 4):
        for Q in enumerate_fixing_quadratic_sets(n):
            direct = is_square_free_solution(Q)
            assert alternative_criteria(Q) == (direct, direct)


def test_invariant_subsets(three):
    assert is_r_invariant(three, [0, 1])
    assert is_G_invariant(three, [0, 1])
    assert is_G_invariant(three, [2])
    assert not is_G_invariant(three, [0])
    assert complement(three, [0, 1]) == [2]


def test_restrict_relabels_by_index(gap):
    part = [gap.index(label) for label in ("a", "c")]
    sub = restrict(gap, part)
    assert sub.labels == ("a", "c")
    assert classify(sub).square_free_solution
    assert (sub.left == np.arange(2)).all()


def test_restrict_rejects_non_invariant_subset(three):
    with pytest.raises(QuadraticSetError):
        restrict(three, [0, 2])
    with pytest.raises(QuadraticSetError):
        restrict(three, [])


def test_automorphisms_of_the_trivial_solution():
    Q = trivial_solution(3)
    assert is_automorphism(Q, Permutation((2, 0, 1)))


def test_non_automorphism_has_witness(three):
    verdict = is_automorphism(three, Permutation((0, 2, 1)))
    assert not verdict
    assert verdict.witness is not None
    assert verdict.law == "homomorphism"


def test_homomorphism_onto_a_point(three):
    point = trivial_solution(1)
    assert is_homomorphism(three, point, [0, 0, 0])
    with pytest.raises(QuadraticSetError):
        is_homomorphism(three, point, [0, 1, 0])


def test_isomorphisms_between_relabelled_copies(three):
    swapped = from_left_action([(0, 2, 1), (0, 1, 2), (0, 1, 2)])
    found = list(iter_isomorphisms(swapped, three))
    assert found
    for phi in found:
        assert is_homomorphism(swapped, three, phi.images)
    assert phi.images[0] == 2


def test_no_isomorphism_between_different_levels(three):
    assert list(iter_isomorphisms(three, trivial_solution(3))) == []


def test_split_maps_of_an_orbit_decomposition(three):
    f, g = split_maps(three, [0, 1], [2])
    # g is r on Y×Y and the flip on X×X
    assert g.r(2, 2) == three.r(2, 2)
    assert g.r(0, 1) == (1, 0)
    assert f.r(2, 0) == (1, 2)
    report = check_split_identity(three, [0, 1], [2])
    assert report.factorization_holds
    assert report.f_involutive and report.g_involutive


def test_split_maps_need_a_cover(three):
    with pytest.raises(QuadraticSetError):
        split_maps(three, [0], [2])


def test_stu_laws_on_the_gap_example(gap):
    xs = list(range(8))
    rest = list(range(8, 12))
    assert check_stu_laws(gap, xs, rest)
    assert check_stu_laws(gap, rest, xs)


def _least_component_witness(flags):
    found = [flags.first_witness[name] for name in ("l1", "r1", "lr3") if name in flags.first_witness]
    return min(found) if found else None


def test_braid_relation_on_random_tables():
    rng = np.random.default_rng(7)
    for n in (2, 3, 4):
        for _ in range(60):
            Q = QuadraticSet(rng.integers(0, n, (n, n)), rng.integers(0, n, (n, n)))
            flags = classify(Q)
            assert flags.braided == (flags.l1 and flags.r1 and flags.lr3)
            assert braid_witness(Q) == _least_component_witness(flags)


def test_braid_relation_on_fixing_sets():
    for Q in enumerate_fixing_quadratic_sets(3):
        flags = classify(Q)
        assert braid_witness(Q) == _least_component_witness(flags)


def test_inconsistent_flags_are_rejected():
    values = {name: True for name in FLAG_NAMES}
    values["l1"] = False
    with pytest.raises(ConsistencyError):
        PropertyFlags(**values)


def test_split_maps_of_the_gap_example(gap):
    xs = list(range(8))
    ys = [gap.index(label) for label in ("a", "b", "c", "d")]
    f, g = split_maps(gap, xs, ys)
    a, x1 = gap.index("a"), gap.index("x1")
    # f(α, x) = (ᵅx, α) and g is the flip on X×X
    assert f.r(a, x1) == (gap.index("x2"), a)
    assert g.r(x1, gap.index("x5")) == (gap.index("x5"), x1)
    assert g.r(a, gap.index("b")) == gap.r(a, gap.index("b"))

    report = check_split_identity(gap, xs, ys)
    assert report.factorization_holds
    assert report.f_involutive and report.g_involutive
    assert report.f_is_solution == report.f_stu_condition == bool(check_stu_laws(gap, xs, ys))
    assert report.f_is_solution
    assert report.g_is_solution and report.g_stu_condition


def test_action_components_are_orbits(gap):
    assert action_components(gap.left) == [tuple(range(8)), (8, 10), (9, 11)]
    assert action_components(np.arange(3)[None, :]) == [(0,), (1,), (2,)]
