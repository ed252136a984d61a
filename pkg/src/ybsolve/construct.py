"""
Explicit constructions of square-free solutions.

Index layouts are fixed so that output files are reproducible:

- a union of two parts lists the first part at 0..n₁−1 and the second after it;
- a wreath product puts cell (α, x) at α·|X₀| + x and appends Y;
- abelian and ring constructions enumerate group elements in mixed-radix
  order, last coordinate fastest.

Post-conditions backed by theory are asserted when ``verify_constructions`` is
on and the result has at most ``verify_max_n`` elements; a failure raises
ConsistencyError.
"""

import itertools
import math
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ybsolve.config import settings
from ybsolve.exceptions import (
    BoundExceededError,
    ConsistencyError,
    DepthError,
    FamilyUsageError,
    InvalidLinearParamsError,
    NotAutomorphismError,
    NotSymmetricError,
    PartitionError,
    QuadraticSetError,
    StuLawError,
)
from ybsolve.group import (
    abelian_invariants,
    is_abelian,
    is_member,
    normalize_invariants,
    subgroup,
    yb_group,
)
from ybsolve.logging_config import get_logger
from ybsolve.perm import Permutation, default_labels, format_cycles, parse_cycles, shift, vee
from ybsolve.qset import (
    PropertyFlags,
    QuadraticSet,
    Verdict,
    braid_witness,
    check_stu_laws,
    classify,
    from_left_action,
    is_automorphism,
    is_G_invariant,
    is_square_free_solution,
    restricted_automorphism_criterion,
)
from ybsolve.retract import mpl
from ybsolve.ybs_format import read_ybs

logger = get_logger(__name__)


# Verification helpers


def _verifying(n: int, what: str) -> bool:
    if not settings.verify_constructions:
        return False
    if n > settings.verify_max_n:
        logger.warning(
            "skipping post-construction checks for %s on %d elements (verify_max_n=%d)",
            what,
            n,
            settings.verify_max_n,
        )
        return False
    return True


def _require_solution(Q: QuadraticSet, what: str) -> None:
    if not is_square_free_solution(Q):
        raise NotSymmetricError(f"{what} needs a square-free solution")


def _require_symmetric(Q: QuadraticSet, what: str) -> None:
    if Q.n <= settings.verify_max_n and not classify(Q).symmetric:
        raise NotSymmetricError(f"{what} needs a symmetric set")


def _assert_solution(Z: QuadraticSet, what: str) -> None:
    if not is_square_free_solution(Z):
        raise ConsistencyError(f"{what} is not a square-free solution (braid witness {braid_witness(Z)})")


def _check_size(n: int, what: str) -> None:
    if n > settings.max_construct_n:
        raise BoundExceededError(
            f"{what} would have {n} elements, above the bound {settings.max_construct_n}",
            "max_construct_n",
        )


def _check_depth(m: int, what: str) -> None:
    if m < 0:
        raise QuadraticSetError(f"{what} is defined for m ≥ 0, got {m}")
    if m > settings.max_depth:
        raise DepthError(f"{what} at depth {m} exceeds the maximum depth {settings.max_depth}", "max_depth")


# Unions of two parts


@dataclass(frozen=True)
class StuActions:
    """Cross actions of a union A ∪ B.

    on_second[x] is ℒ_x restricted to B for x in A, and on_first[β] is ℒ_β
    restricted to A for β in B. Both use local indices of the part acted on.
    """

    on_second: Tuple[Permutation, ...]
    on_first: Tuple[Permutation, ...]

    def __post_init__(self):
        on_second, on_first = tuple(self.on_second), tuple(self.on_first)
        object.__setattr__(self, "on_second", on_second)
        object.__setattr__(self, "on_first", on_first)
        if not on_second or not on_first:
            raise QuadraticSetError("both parts of a union need at least one element")
        for x, p in enumerate(on_second):
            if p.degree != len(on_first):
                raise QuadraticSetError(
                    f"action of first-part element {x + 1} has degree {p.degree}, expected {len(on_first)}"
                )
        for beta, p in enumerate(on_first):
            if p.degree != len(on_second):
                raise QuadraticSetError(
                    f"action of second-part element {beta + 1} has degree {p.degree}, expected {len(on_second)}"
                )

    @property
    def first_size(self) -> int:
        return len(self.on_second)

    @property
    def second_size(self) -> int:
        return len(self.on_first)

    @classmethod
    def trivial(cls, n1: int, n2: int) -> "StuActions":
        return cls((Permutation.identity(n2),) * n1, (Permutation.identity(n1),) * n2)

    @classmethod
    def uniform(cls, n1: int, n2: int, on_second: Permutation, on_first: Permutation) -> "StuActions":
        """Every element of A acts on B by on_second, every element of B acts on A by on_first."""
        return cls((on_second,) * n1, (on_first,) * n2)


def _union_labels(first: Sequence[str], second: Sequence[str]) -> Tuple[str, ...]:
    combined = tuple(first) + tuple(second)
    if len(set(combined)) == len(combined):
        return combined
    return default_labels(len(combined))


def assemble_extension(
    Q1: QuadraticSet, Q2: QuadraticSet, actions: StuActions, labels: Optional[Sequence[str]] = None
) -> QuadraticSet:
    """Assemble r on Q1 ∪ Q2 from the four blocks, checking nothing about the result.

    Across the parts xʸ = ℒ_y⁻¹(x). Labels are kept when the two label sets are
    disjoint, otherwise the union gets x1..xN.
    """
    n1, n2 = Q1.n, Q2.n
    if (actions.first_size, actions.second_size) != (n1, n2):
        raise QuadraticSetError(
            f"actions are for parts of sizes {actions.first_size} and {actions.second_size}, got {n1} and {n2}"
        )
    n = n1 + n2
    _check_size(n, "union")
    to_second = np.array([p.images for p in actions.on_second], dtype=np.intp)  # [x, β]
    to_first = np.array([p.images for p in actions.on_first], dtype=np.intp)  # [β, x]

    left = np.empty((n, n), dtype=np.intp)
    right = np.empty((n, n), dtype=np.intp)
    left[:n1, :n1] = Q1.left
    left[n1:, n1:] = Q2.left + n1
    left[:n1, n1:] = to_second + n1
    left[n1:, :n1] = to_first
    right[:n1, :n1] = Q1.right
    right[n1:, n1:] = Q2.right + n1
    right[:n1, n1:] = np.argsort(to_first, axis=1).T
    right[n1:, :n1] = np.argsort(to_second, axis=1).T + n1

    names = tuple(labels) if labels else _union_labels(Q1.labels, Q2.labels)
    return QuadraticSet(left, right, names, Q1.lri_derived and Q2.lri_derived)


def trivial_solution(n: int) -> QuadraticSet:
    """The flip r(x, y) = (y, x) on n points."""
    if n < 1:
        raise QuadraticSetError("a trivial solution needs at least one element")
    _check_size(n, "trivial solution")
    return from_left_action(np.tile(np.arange(n), (n, 1)))


def trivial_extension(Q1: QuadraticSet, Q2: QuadraticSet) -> QuadraticSet:
    """Q1 ♮₀ Q2: the flip across the parts."""
    _require_symmetric(Q1, "trivial extension")
    _require_symmetric(Q2, "trivial extension")
    return assemble_extension(Q1, Q2, StuActions.trivial(Q1.n, Q2.n))


@dataclass
class StuUnion:
    qset: QuadraticSet
    flags: PropertyFlags
    is_solution: bool

    def to_dict(self) -> Dict:
        return {"n": self.qset.n, "is_solution": self.is_solution, "flags": self.flags.to_dict()}


def stu_union(Q1: QuadraticSet, Q2: QuadraticSet, actions: StuActions) -> StuUnion:
    """Strong twisted union Q1 ♮ Q2.

    The cross actions must restrict to automorphisms of the part they act on
    and the assembled set must obey the stu laws in both directions; either
    failure raises StuLawError. Braidedness of the union is then reported,
    not assumed.
    """
    for Q in (Q1, Q2):
        if not classify(Q).symmetric:
            raise NotSymmetricError("strong twisted union needs two symmetric sets")
    n1, n = Q1.n, Q1.n + Q2.n
    for x, p in enumerate(actions.on_second):
        verdict = is_automorphism(Q2, p)
        if not verdict:
            beta, gamma = verdict.witness
            raise StuLawError(
                f"{Q1.labels[x]} does not act on the second part by an automorphism",
                "restricted-automorphism",
                (x, n1 + beta, n1 + gamma),
            )
    for beta, p in enumerate(actions.on_first):
        verdict = is_automorphism(Q1, p)
        if not verdict:
            x, y = verdict.witness
            raise StuLawError(
                f"{Q2.labels[beta]} does not act on the first part by an automorphism",
                "restricted-automorphism",
                (n1 + beta, x, y),
            )

    Z = assemble_extension(Q1, Q2, actions)
    first, second = range(n1), range(n1, n)
    for part_a, part_b in ((first, second), (second, first)):
        laws = check_stu_laws(Z, part_a, part_b)
        if not laws:
            raise StuLawError("cross actions break the strong twisted union laws", laws.law, laws.witness)

    flags = classify(Z)
    if not flags.symmetric:
        logger.info("stu union of %d + %d elements is not braided (witness %s)", Q1.n, Q2.n, braid_witness(Z))
    return StuUnion(Z, flags, flags.symmetric)


def is_stu_decomposition(Q: QuadraticSet, partition: Sequence[Sequence[int]]) -> Verdict:
    """Whether X = X_1 ♮ ⋯ ♮ X_t for the given 𝒢-invariant parts."""
    parts = [sorted(set(int(x) for x in part)) for part in partition]
    if sorted(x for part in parts for x in part) != list(range(Q.n)) or not all(parts):
        raise PartitionError("parts must be a disjoint cover of the set by non-empty subsets")
    for part in parts:
        if not is_G_invariant(Q, part):
            raise PartitionError(f"part {[Q.labels[x] for x in part]} is not 𝒢-invariant")
    return restricted_automorphism_criterion(Q, parts)


# One new element acting by an automorphism


def extend_by_automorphism(Q: QuadraticSet, tau: Permutation) -> QuadraticSet:
    """Q ♮ {α} with ℒ_α = τ; the old elements fix α.

    When τ lies outside 𝒢(Q) the level rises by exactly one.
    """
    if tau.degree != Q.n:
        raise NotAutomorphismError(f"permutation of degree {tau.degree} cannot act on {Q.n} elements")
    verdict = is_automorphism(Q, tau)
    if not verdict:
        raise NotAutomorphismError(
            f"{format_cycles(tau, Q.labels)} is not an automorphism", verdict.witness
        )
    verify = _verifying(Q.n + 1, "extension by an automorphism")
    if verify:
        _require_solution(Q, "extension by an automorphism")

    point = trivial_solution(1).with_labels([f"x{Q.n + 1}"])
    Z = assemble_extension(Q, point, StuActions((Permutation.identity(1),) * Q.n, (tau,)))
    if verify:
        _assert_solution(Z, "extension by an automorphism")
        if not is_member(yb_group(Q), tau):
            before = mpl(Q)
            if before is not None and mpl(Z) != before + 1:
                raise ConsistencyError(f"extension by {tau} did not raise mpl {before} by one")
    logger.debug("extended %d elements by %s", Q.n, tau)
    return Z


def canonical_doubling(Q: QuadraticSet) -> QuadraticSet:
    """X ♮₀ X′ ♮ {α} with ℒ_α = (x₁ x₁′)⋯(x_n x_n′)."""
    n = Q.n
    verify = _verifying(2 * n + 1, "canonical doubling")
    if verify:
        _require_solution(Q, "canonical doubling")
    copies = trivial_extension(Q, Q)
    swap = Permutation(tuple(range(n, 2 * n)) + tuple(range(n)))
    Z = extend_by_automorphism(copies, swap)
    if verify:
        source_order, order = yb_group(Q).order, yb_group(Z).order
        if order != 2 * source_order**2:
            raise ConsistencyError(f"doubling has |𝒢| = {order}, expected 2·{source_order}²")
        if n >= 2:
            before = mpl(Q)
            if before is not None and mpl(Z) != before + 1:
                raise ConsistencyError(f"doubling did not raise mpl {before} by one")
    return Z


def wreath_product(X0: QuadraticSet, Y: QuadraticSet) -> QuadraticSet:
    """|Y| copies of X₀ trivially extended, with Y permuting the copies through its own action.

    The cells t_{α,x} act inside their own copy and fix Y; β in Y sends t_{α,x}
    to t_{ᵝα,x} and acts on Y as in Y.
    """
    n0, ny = X0.n, Y.n
    cells = n0 * ny
    n = cells + ny
    _check_size(n, "wreath product")
    verify = _verifying(n, "wreath product")
    if verify:
        _require_solution(X0, "wreath product")
        _require_solution(Y, "wreath product")

    copy_of = np.arange(cells) // n0
    point_of = np.arange(cells) % n0
    left = np.empty((n, n), dtype=np.intp)
    same_copy = copy_of[:, None] == copy_of[None, :]
    inside = copy_of[:, None] * n0 + X0.left[point_of[:, None], point_of[None, :]]
    left[:cells, :cells] = np.where(same_copy, inside, np.arange(cells)[None, :])
    left[:cells, cells:] = np.arange(cells, n)[None, :]
    left[cells:, :cells] = Y.left[:, copy_of] * n0 + point_of[None, :]
    left[cells:, cells:] = Y.left + cells
    Z = from_left_action(left)

    if verify:
        _assert_solution(Z, "wreath product")
        expected = yb_group(X0).order ** ny * yb_group(Y).order
        order = yb_group(Z).order
        if order != expected:
            raise ConsistencyError(f"wreath product has |𝒢| = {order}, expected {expected}")
        if n0 >= 2 and ny >= 2:
            m0, my = mpl(X0), mpl(Y)
            if m0 is not None and my is not None and mpl(Z) != m0 + my - 1:
                raise ConsistencyError(f"wreath product mpl differs from {m0} + {my} − 1")
    logger.debug("wreath product of %d and %d elements has %d elements", n0, ny, n)
    return Z


# The σ_m / Y_m / X_m family


def gi_sigma(m: int) -> Permutation:
    """σ_m, a 2^m-cycle: σ_1 = (x1 x2) and σ_{k+1} = σ_k ∨ σ_k[2^k]; σ_0 is the identity of one point."""
    _check_depth(m, "σ_m")
    if m == 0:
        return Permutation.identity(1)
    sigma = Permutation((1, 0))
    for k in range(1, m):
        size = 2**k
        sigma = vee(shift(sigma, 0, 2 * size), shift(sigma, size, 2 * size))
    return sigma


def gi_Y(m: int) -> QuadraticSet:
    """Y_1 trivial on two points; Y_{k+1} = Y_k ∪ Y_k[2^k] with each copy acting on the other by σ_k."""
    _check_depth(m, "Y_m")
    if m < 1:
        raise QuadraticSetError("Y_m is defined for m ≥ 1")
    _check_size(2**m, "Y_m")
    Y = trivial_solution(2)
    for k in range(1, m):
        sigma = gi_sigma(k)
        Y = assemble_extension(Y, Y, StuActions.uniform(Y.n, Y.n, sigma, sigma))
    if _verifying(Y.n, f"Y_{m}"):
        _assert_solution(Y, f"Y_{m}")
    return Y


def gi_X(m: int) -> QuadraticSet:
    """X_m = Y_{m−1} ♮ {ξ} with ℒ_ξ = σ_{m−1}: 2^{m−1}+1 elements and mpl m."""
    _check_depth(m, "X_m")
    if m == 0:
        return trivial_solution(1)
    if m == 1:
        return trivial_solution(2)
    X = extend_by_automorphism(gi_Y(m - 1), gi_sigma(m - 1))
    logger.debug("built X_%d with %d elements", m, X.n)
    return X


def easy_family(m: int) -> QuadraticSet:
    """Repeated canonical doubling: easy(0) = trivial(1), easy(1) = trivial(2), easy(m) doubles easy(m−1)."""
    _check_depth(m, "easy family")
    if m == 0:
        return trivial_solution(1)
    if m == 1:
        return trivial_solution(2)
    X = trivial_solution(1)
    for _ in range(2, m + 1):
        previous = X.n
        X = canonical_doubling(X)
        if X.n != 2 * previous + 1:
            raise ConsistencyError(f"doubling {previous} elements gave {X.n}")
    if _verifying(X.n, "easy family") and mpl(X) != m:
        raise ConsistencyError(f"easy family member {m} has mpl {mpl(X)}")
    return X


# Group-theoretic constructions


def _mixed_radix(dims: Sequence[int]) -> Tuple[np.ndarray, np.ndarray]:
    """Coordinates of every element of Π Z/dᵢ and the weights turning them back into indices."""
    coords = np.array(list(itertools.product(*(range(d) for d in dims))), dtype=np.intp)
    coords = coords.reshape(-1, len(dims))
    weights = np.array([math.prod(dims[i + 1:]) for i in range(len(dims))], dtype=np.intp)
    return coords, weights


def abelian_mpl2(invariants: Sequence[int]) -> QuadraticSet:
    """H ∪ {a_1, …, a_r}: H acts trivially, a_i translates H by the i-th generator.

    The result has mpl 2 and 𝒢 ≅ Π C_{dᵢ}.
    """
    dims = [int(d) for d in invariants]
    if not dims:
        raise QuadraticSetError("at least one cyclic factor is required")
    if any(d < 2 for d in dims):
        raise QuadraticSetError(f"cyclic factors must have order ≥ 2, got {dims}")
    size = math.prod(dims)
    n = size + len(dims)
    _check_size(n, "abelian construction")

    coords, weights = _mixed_radix(dims)
    left = np.tile(np.arange(n), (n, 1))
    for i, d in enumerate(dims):
        moved = coords.copy()
        moved[:, i] = (moved[:, i] + 1) % d
        left[size + i, :size] = moved @ weights
    Q = from_left_action(left)

    if _verifying(n, "abelian construction"):
        _assert_solution(Q, "abelian construction")
        if mpl(Q) != 2:
            raise ConsistencyError(f"abelian construction for {dims} does not have mpl 2")
        found = abelian_invariants(yb_group(Q))
        if found != normalize_invariants(dims):
            raise ConsistencyError(f"abelian construction for {dims} has invariants {found}")
    return Q


@dataclass(frozen=True)
class LinearParams:
    """A = (Z/N)^k with ℒ_a(x) = ωx + (1−ω)a."""

    modulus: int
    omega: int
    rank: int = 1

    def __post_init__(self):
        if self.modulus < 2:
            raise InvalidLinearParamsError(f"modulus must be at least 2, got {self.modulus}")
        if self.rank < 1:
            raise InvalidLinearParamsError(f"rank must be at least 1, got {self.rank}")
        omega = self.omega % self.modulus
        object.__setattr__(self, "omega", omega)
        if math.gcd(omega, self.modulus) != 1:
            raise InvalidLinearParamsError(f"ω = {omega} is not a unit modulo {self.modulus}")

    @property
    def obstruction(self) -> int:
        """(1 − ω)² mod N; the maps give a solution exactly when it vanishes."""
        return (1 - self.omega) ** 2 % self.modulus

    @property
    def size(self) -> int:
        return self.modulus**self.rank


def linear_quadratic_set(params: LinearParams) -> QuadraticSet:
    """The quadratic set of the maps ℒ_a, whether or not they form a solution."""
    _check_size(params.size, "ring construction")
    coords, weights = _mixed_radix([params.modulus] * params.rank)
    omega = params.omega
    images = (omega * coords[None, :, :] + (1 - omega) * coords[:, None, :]) % params.modulus  # [a, x]
    return from_left_action(images @ weights)


def linear_solution(params: LinearParams) -> QuadraticSet:
    obstruction = params.obstruction
    if obstruction:
        raise InvalidLinearParamsError(
            f"(1 − ω)² = {obstruction} ≠ 0 mod {params.modulus}: the maps do not form a solution",
            obstruction,
        )
    Q = linear_quadratic_set(params)
    if _verifying(Q.n, "ring construction"):
        _assert_solution(Q, "ring construction")
        expected = 1 if params.omega == 1 else 2
        if mpl(Q) != expected:
            raise ConsistencyError(f"ring construction with ω = {params.omega} does not have mpl {expected}")
        if not is_abelian(yb_group(Q)):
            raise ConsistencyError("left translations of the ring construction do not commute")
    return Q


@dataclass
class SemidirectExtension:
    qset: QuadraticSet
    flags: PropertyFlags
    is_solution: bool
    homomorphism: Verdict
    group_order: Optional[int] = None
    order_bound: Optional[int] = None

    @property
    def order_divides(self) -> Optional[bool]:
        if self.group_order is None or self.order_bound is None:
            return None
        return self.order_bound % self.group_order == 0

    def to_dict(self) -> Dict:
        return {
            "n": self.qset.n,
            "is_solution": self.is_solution,
            "homomorphism": self.homomorphism.to_dict(),
            "group_order": self.group_order,
            "order_bound": self.order_bound,
            "order_divides": self.order_divides,
        }


def _action_respects_relations(Q2: QuadraticSet, table: np.ndarray) -> Verdict:
    """action[α]∘action[β] = action[ᵅβ]∘action[α^β] for all α, β in Y."""
    ny = Q2.n
    lhs = table[np.arange(ny)[:, None, None], table[None, :, :]]
    rhs = table[Q2.left[:, :, None], table[Q2.right]]
    hits = np.argwhere((lhs != rhs).any(axis=2))
    if hits.size == 0:
        return Verdict(True)
    return Verdict(False, tuple(int(v) for v in hits[0]), "homomorphism")


def semidirect_extension(
    Q1: QuadraticSet,
    Q2: QuadraticSet,
    action: Sequence[Permutation],
    check_automorphisms: bool = True,
) -> SemidirectExtension:
    """One-sided extension: α in Y acts on X by action[α], r(α, x) = (ᵅx, α), and X acts trivially on Y.

    With check_automorphisms off a non-automorphic action is assembled anyway and
    the verdict carries the braid witness.
    """
    action = tuple(action)
    if len(action) != Q2.n:
        raise QuadraticSetError(f"expected {Q2.n} action permutations, got {len(action)}")
    for alpha, p in enumerate(action):
        if p.degree != Q1.n:
            raise QuadraticSetError(f"action of {Q2.labels[alpha]} has degree {p.degree}, expected {Q1.n}")
        if check_automorphisms:
            verdict = is_automorphism(Q1, p)
            if not verdict:
                raise NotAutomorphismError(
                    f"{Q2.labels[alpha]} acts by {format_cycles(p, Q1.labels)}, not an automorphism",
                    verdict.witness,
                )

    Z = assemble_extension(Q1, Q2, StuActions((Permutation.identity(Q2.n),) * Q1.n, action))
    flags = classify(Z)
    table = np.array([p.images for p in action], dtype=np.intp)
    result = SemidirectExtension(Z, flags, flags.symmetric, _action_respects_relations(Q2, table))
    if result.is_solution:
        result.group_order = yb_group(Z).order
        result.order_bound = yb_group(Q1).order * subgroup(Z, range(Q1.n, Z.n)).order
    else:
        logger.info("semidirect extension is not a solution (braid witness %s)", braid_witness(Z))
    return result


# The worked examples


def _from_cycle_rows(labels: Sequence[str], rows: Dict[str, str]) -> QuadraticSet:
    n = len(labels)
    return from_left_action([parse_cycles(rows.get(label, ""), n, labels) for label in labels], labels)


def three_element_solution() -> QuadraticSet:
    """ℒ_{x1} = ℒ_{x2} = id, ℒ_{x3} = (x1 x2): the smallest solution of mpl 2."""
    return _from_cycle_rows(default_labels(3), {"x3": "(x1 x2)"})


GAP_LABELS = tuple(f"x{i}" for i in range(1, 9)) + ("a", "b", "c", "d")


def gap_example() -> QuadraticSet:
    """Twelve elements, mpl 3, with 𝒢 ≅ C2×C2×C2."""
    return _from_cycle_rows(
        GAP_LABELS,
        {
            "a": "(b d)(x1 x2)(x3 x4)(x5 x6)(x7 x8)",
            "b": "(a c)(x1 x3)(x2 x4)(x5 x7)(x6 x8)",
            "c": "(b d)(x1 x5)(x2 x6)(x3 x7)(x4 x8)",
            "d": "(a c)(x1 x8)(x2 x7)(x3 x6)(x4 x5)",
        },
    )


JUMP_LABELS = (
    tuple(f"x{j}^{i}" for i in range(1, 5) for j in range(1, 5))
    + tuple(f"a{i}" for i in range(1, 5))
    + tuple(f"a{i}'" for i in range(1, 5))
    + ("b", "c")
)


def jump_example() -> QuadraticSet:
    """Twenty-six elements, mpl 4: X of mpl 2 on sixteen points united with Y of mpl 2 on ten.

    X is the trivial extension of four copies X^i, Y carries a_i, a_i′, b, c.
    The cross actions do not satisfy the stu laws, so the union is assembled
    directly rather than through stu_union.
    """
    square = from_left_action([(0, 3, 2, 1), (2, 1, 0, 3), (0, 3, 2, 1), (2, 1, 0, 3)])
    X = square
    for _ in range(3):
        X = trivial_extension(X, square)
    y_labels = JUMP_LABELS[16:]
    Y = _from_cycle_rows(
        y_labels,
        {
            "b": "(a1 a2)(a3 a4)(a1' a2')(a3' a4')",
            "c": "(a1 a3)(a2 a4)(a1' a3')(a2' a4')",
        },
    )
    # x_j^i sits at 4(i−1) + (j−1); a_i at i−1 and a_i′ at 3+i inside Y
    on_second = tuple(
        Permutation.from_cycles(10, [(i, 4 + i)]) for i in range(4) for _ in range(4)
    )
    block_cycles = [Permutation.from_cycles(16, [tuple(range(4 * i, 4 * i + 4))]) for i in range(4)]
    swap_12_34 = Permutation(tuple(4 * (i ^ 1) + j for i in range(4) for j in range(4)))
    swap_13_24 = Permutation(tuple(4 * (i ^ 2) + j for i in range(4) for j in range(4)))
    on_first = tuple(block_cycles) + tuple(block_cycles) + (swap_12_34, swap_13_24)
    Z = assemble_extension(X, Y, StuActions(on_second, on_first), JUMP_LABELS)
    if _verifying(Z.n, "jump example"):
        _assert_solution(Z, "jump example")
    return Z


# Family registry used by the command line


@dataclass(frozen=True)
class Family:
    name: str
    usage: str
    description: str
    build: Callable[[Sequence[str]], QuadraticSet]

    def __call__(self, args: Sequence[str]) -> QuadraticSet:
        return self.build(list(args))


FAMILIES: Dict[str, Family] = {}


def register_family(name: str, usage: str, description: str):
    """Register a construction family for the construct command."""

    def decorator(build: Callable[[Sequence[str]], QuadraticSet]):
        FAMILIES[name] = Family(name, usage, description, build)
        return build

    return decorator


def get_family(name: str) -> Family:
    if name not in FAMILIES:
        raise FamilyUsageError(f"Unknown family: {name} (known: {', '.join(sorted(FAMILIES))})")
    return FAMILIES[name]


def _arity(args: Sequence[str], count: int, usage: str) -> None:
    if len(args) != count:
        raise FamilyUsageError(f"expected {count} argument(s): {usage}")


def _integer(text: str, what: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise FamilyUsageError(f"{what} must be an integer, got {text!r}") from None


def _load(path: str) -> QuadraticSet:
    return read_ybs(path)


@register_family("trivial", "N", "trivial solution on N points")
def _trivial_family(args: Sequence[str]) -> QuadraticSet:
    _arity(args, 1, "trivial N")
    return trivial_solution(_integer(args[0], "N"))


@register_family("gi", "M", "X_M with 2^(M−1)+1 elements and mpl M")
def _gi_family(args: Sequence[str]) -> QuadraticSet:
    _arity(args, 1, "gi M")
    return gi_X(_integer(args[0], "M"))


@register_family("easy", "M", "M-fold canonical doubling of one point")
def _easy_family(args: Sequence[str]) -> QuadraticSet:
    _arity(args, 1, "easy M")
    return easy_family(_integer(args[0], "M"))


@register_family("double", "FILE", "canonical doubling of a solution")
def _double_family(args: Sequence[str]) -> QuadraticSet:
    _arity(args, 1, "double FILE")
    return canonical_doubling(_load(args[0]))


@register_family("wreath", "FILE_X0 FILE_Y", "wreath product X0 ≀ Y")
def _wreath_family(args: Sequence[str]) -> QuadraticSet:
    _arity(args, 2, "wreath FILE_X0 FILE_Y")
    return wreath_product(_load(args[0]), _load(args[1]))


@register_family("extend-tau", "FILE CYCLES", "one new element acting by an automorphism")
def _extend_family(args: Sequence[str]) -> QuadraticSet:
    _arity(args, 2, "extend-tau FILE CYCLES")
    Q = _load(args[0])
    return extend_by_automorphism(Q, parse_cycles(args[1], Q.n, Q.labels))


@register_family("abelian-mpl2", "D1 [D2 ...]", "mpl-2 solution with 𝒢 ≅ C_D1 × C_D2 × ⋯")
def _abelian_family(args: Sequence[str]) -> QuadraticSet:
    if not args:
        raise FamilyUsageError("expected at least one cyclic order: abelian-mpl2 D1 [D2 ...]")
    return abelian_mpl2([_integer(a, "cyclic order") for a in args])


@register_family("linear", "N OMEGA [K]", "ℒ_a(x) = ωx + (1−ω)a on (Z/N)^K")
def _linear_family(args: Sequence[str]) -> QuadraticSet:
    if len(args) not in (2, 3):
        raise FamilyUsageError("expected 2 or 3 arguments: linear N OMEGA [K]")
    rank = _integer(args[2], "K") if len(args) == 3 else 1
    return linear_solution(LinearParams(_integer(args[0], "N"), _integer(args[1], "OMEGA"), rank))


def _parse_actions(args: Sequence[str], Q1: QuadraticSet, Q2: QuadraticSet) -> StuActions:
    """LABEL=CYCLES pairs; a label of one part acts on the other part, unnamed elements act trivially."""
    on_second = [Permutation.identity(Q2.n)] * Q1.n
    on_first = [Permutation.identity(Q1.n)] * Q2.n
    for item in args:
        label, sep, cycles = item.partition("=")
        if not sep:
            raise FamilyUsageError(f"expected LABEL=CYCLES, got {item!r}")
        if label in Q1.labels:
            on_second[Q1.index(label)] = parse_cycles(cycles, Q2.n, Q2.labels)
        elif label in Q2.labels:
            on_first[Q2.index(label)] = parse_cycles(cycles, Q1.n, Q1.labels)
        else:
            raise QuadraticSetError(f"unknown element {label!r}")
    return StuActions(tuple(on_second), tuple(on_first))


@register_family("stu", "FILE_A FILE_B [LABEL=CYCLES ...]", "strong twisted union with the given cross actions")
def _stu_family(args: Sequence[str]) -> QuadraticSet:
    if len(args) < 2:
        raise FamilyUsageError("expected: stu FILE_A FILE_B [LABEL=CYCLES ...]")
    Q1, Q2 = _load(args[0]), _load(args[1])
    union = stu_union(Q1, Q2, _parse_actions(args[2:], Q1, Q2))
    if not union.is_solution:
        raise NotSymmetricError("the strong twisted union is not a solution")
    return union.qset


@register_family("three", "", "the three-element solution of mpl 2")
def _three_family(args: Sequence[str]) -> QuadraticSet:
    _arity(args, 0, "three")
    return three_element_solution()


@register_family("gap", "", "twelve elements, mpl 3, 𝒢 ≅ C2³")
def _gap_family(args: Sequence[str]) -> QuadraticSet:
    _arity(args, 0, "gap")
    return gap_example()


@register_family("jump", "", "twenty-six elements, mpl 4, |𝒢| = 2¹⁴")
def _jump_family(args: Sequence[str]) -> QuadraticSet:
    _arity(args, 0, "jump")
    return jump_example()


def family_names() -> List[str]:
    return sorted(FAMILIES)
