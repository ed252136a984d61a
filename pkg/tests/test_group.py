import pytest

from ybsolve.construct import easy_family, gi_X, trivial_solution
from ybsolve.enumerate import enumerate_square_free
from ybsolve.exceptions import BoundExceededError, NotAbelianError, NotSymmetricError, PartitionError
from ybsolve.group import (
    abelian_invariants,
    automorphism_group,
    check_group_product,
    derived_series,
    elements,
    group_order,
    group_signature,
    is_abelian,
    is_member,
    normalize_invariants,
    normalizes,
    orbit_partition,
    retract_hom,
    solvable_length,
    subgroup,
    yb_group,
    yb_group_solvable_length_G,
)
from ybsolve.perm import Permutation, compose, parse_cycles
from ybsolve.qset import from_left_action, left_perm
from ybsolve.retract import mpl


def test_trivial_solution_has_trivial_group():
    Q = trivial_solution(4)
    G = yb_group(Q)
    assert G.order == 1
    assert G.is_trivial
    assert len(orbit_partition(Q)) == 4
    assert solvable_length(G) == 0
    assert yb_group_solvable_length_G(Q) == 1


def test_gap_example_group(gap):
    G = yb_group(gap)
    assert G.order == 8
    assert is_abelian(G)
    assert abelian_invariants(G) == [2, 2, 2]
    assert solvable_length(G) == 1
    assert yb_group_solvable_length_G(gap) == 2


def test_gap_example_orbits(gap):
    partition = orbit_partition(gap)
    named = [[gap.labels[x] for x in orbit] for orbit in partition.orbits]
    assert named == [[f"x{i}" for i in range(1, 9)], ["a", "c"], ["b", "d"]]
    assert partition.orbit_of[gap.index("d")] == 2


def test_dihedral_group_of_the_third_family_member():
    G = yb_group(gi_X(3))
    assert G.order == 8
    assert not is_abelian(G)
    assert solvable_length(G) == 2
    assert group_signature(G) == (8, (8, 2, 1))


def test_jump_example_group(jump):
    G = yb_group(jump)
    assert G.order == 2**14
    assert solvable_length(G) == 3
    assert yb_group_solvable_length_G(jump) == 4


def test_membership(three):
    G = yb_group(three)
    assert is_member(G, Permutation((1, 0, 2)))
    assert Permutation.identity(3) in G
    assert not is_member(G, Permutation((0, 2, 1)))
    assert not is_member(G, Permutation.identity(4))


def test_derived_series_ends_trivial():
    series = derived_series(yb_group(gi_X(4)))
    assert series[0].order == 128
    assert series[-1].order == 1
    assert [H.order for H in series] == sorted((H.order for H in series), reverse=True)


def test_solvable_length_of_G_needs_a_solution():
    broken = from_left_action([(0, 2, 1), (2, 1, 0), (0, 1, 2)])
    with pytest.raises(NotSymmetricError):
        yb_group_solvable_length_G(broken)


def test_automorphisms_of_trivial_solution_are_everything():
    assert automorphism_group(trivial_solution(3)).order == 6


def test_automorphisms_of_three_element_solution(three):
    # only the swap of x1 and x2 preserves r
    A = automorphism_group(three)
    assert A.order == 2
    assert normalizes(yb_group(three), Permutation((1, 0, 2)))


def test_automorphism_search_bound(monkeypatch):
    from ybsolve.config import settings

    monkeypatch.setattr(settings, "aut_max_n", 2)
    with pytest.raises(BoundExceededError):
        automorphism_group(trivial_solution(3))


def test_element_table_matches_order(gap):
    G = yb_group(gap)
    table = elements(G)
    assert table.shape == (8, 12)
    with pytest.raises(BoundExceededError):
        elements(G, limit=4)


def test_retract_homomorphism_on_gap(gap):
    report = retract_hom(gap)
    assert report.is_homomorphism
    assert report.is_surjective
    assert report.kernel_abelian
    assert report.source_order == 8
    assert report.target_order == 4
    assert report.kernel_order * report.image_order == report.source_order


def test_retract_homomorphism_on_dihedral_group():
    report = retract_hom(gi_X(3))
    assert report.source_order == 8
    assert report.target_order == 2
    assert report.kernel_order == 4
    assert report.kernel_abelian and report.is_surjective


@pytest.mark.slow
def test_retract_homomorphism_on_jump(jump):
    report = retract_hom(jump)
    assert report.is_homomorphism and report.is_surjective and report.kernel_abelian


def test_group_product_over_orbits(gap):
    parts = orbit_partition(gap).orbits
    assert check_group_product(gap, parts)


def test_group_product_rejects_bad_partition(three):
    with pytest.raises(PartitionError):
        check_group_product(three, [[0], [1, 2]])
    with pytest.raises(PartitionError):
        check_group_product(three, [[0, 1]])


def test_subgroup_of_a_part(gap):
    H = subgroup(gap, [gap.index("a"), gap.index("c")])
    assert H.order == 4
    assert subgroup(gap, range(8)).order == 1


@pytest.mark.parametrize(
    "orders, expected",
    [([2], [2]), ([6], [6]), ([2, 3], [6]), ([2, 4], [2, 4]), ([4, 6], [2, 12]), ([2, 2, 2], [2, 2, 2])],
)
def test_normalize_invariants(orders, expected):
    assert normalize_invariants(orders) == expected


def test_abelian_invariants_need_abelian_group():
    with pytest.raises(NotAbelianError):
        abelian_invariants(yb_group(gi_X(3)))


def test_abelian_invariants_of_a_cyclic_group():
    Q = from_left_action([(0, 1, 2, 3, 4, 5, 6)] * 6 + [parse_cycles("(x1 x2 x3 x4 x5 x6)", 7).images])
    assert abelian_invariants(yb_group(Q)) == [6]


def test_product_of_two_translations_on_gap(gap):
    p = parse_cycles("(a c)(b d)(x1 x4)(x2 x3)(x5 x8)(x6 x7)", gap.n, gap.labels)
    assert p == compose(left_perm(gap, gap.index("a")), left_perm(gap, gap.index("b")))
    assert is_member(yb_group(gap), p)
    assert not is_member(yb_group(gap), parse_cycles("(a c)", gap.n, gap.labels))


def test_automorphisms_of_gap_normalize_the_group(gap, monkeypatch):
    from ybsolve.config import settings

    monkeypatch.setattr(settings, "aut_max_n", gap.n)
    A = automorphism_group(gap)
    # the centralizer of 𝒢 on x1..x8 already gives eight automorphisms
    assert A.order >= 8
    G = yb_group(gap)
    for sigma in A.generators:
        assert normalizes(G, sigma)
        for x in range(gap.n):
            conjugate = compose(compose(sigma, left_perm(gap, x)), sigma.inverse())
            assert conjugate == left_perm(gap, sigma(x))


def test_retract_homomorphism_on_three_element_solution(three):
    report = retract_hom(three)
    assert report.is_homomorphism and report.is_surjective and report.kernel_abelian
    assert report.source_order == 2
    assert report.target_order == 1
    assert report.kernel_order == 2
    assert report.image_order == 1


def _small_solutions():
    for n in range(2, 5):
        yield from enumerate_square_free(n)
    for m in range(1, 6):
        yield gi_X(m)


def _closure_order(G):
    identity = tuple(range(G.degree))
    seen = {identity}
    frontier = [identity]
    gens = [g.images for g in G.generators]
    while frontier:
        reached = []
        for h in frontier:
            for g in gens:
                k = tuple(g[i] for i in h)
                if k not in seen:
                    seen.add(k)
                    reached.append(k)
        frontier = reached
    return len(seen)


def test_solvable_length_is_below_the_level(gap, jump):
    for Q in [*_small_solutions(), gap, jump]:
        level = mpl(Q)
        assert solvable_length(yb_group(Q)) <= level - 1


def test_level_two_means_abelian_and_constant_on_orbits(three, gap):
    for Q in [*_small_solutions(), three, gap]:
        G = yb_group(Q)
        constant = all((Q.left[list(orbit)] == Q.left[orbit[0]]).all() for orbit in orbit_partition(Q).orbits)
        assert (mpl(Q) <= 2) == (is_abelian(G) and constant)


@pytest.mark.parametrize("make, m", [(gi_X, m) for m in range(1, 5)] + [(easy_family, m) for m in range(1, 5)])
def test_group_order_matches_naive_closure_on_families(make, m):
    G = yb_group(make(m))
    assert group_order(G) == _closure_order(G) == len(elements(G))


def test_group_order_matches_naive_closure_on_small_solutions(gap):
    for Q in [*enumerate_square_free(3), *enumerate_square_free(4), gap]:
        G = yb_group(Q)
        assert group_order(G) == _closure_order(G) == len(elements(G))
