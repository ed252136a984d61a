"""
Finite permutation groups acting on the underlying set of a solution.

Order, membership and derived subgroups come from sympy's Schreier-Sims
machinery. Kernels, product decompositions and invariant factors use a
bounded full element enumeration on numpy arrays.
"""

import math
from dataclasses import asdict, dataclass, field
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from sympy import factorint
from sympy.combinatorics import Permutation as SympyPermutation
from sympy.combinatorics import PermutationGroup

from ybsolve.config import settings
from ybsolve.exceptions import (
    BoundExceededError,
    LriError,
    NotAbelianError,
    NotSolvableError,
    NotSymmetricError,
    PartitionError,
    QuadraticSetError,
)
from ybsolve.logging_config import get_logger
from ybsolve.perm import Permutation, compose, inverse
from ybsolve.qset import (
    QuadraticSet,
    action_components,
    classify,
    is_G_invariant,
    is_square_free_solution,
    iter_isomorphisms,
)

logger = get_logger(__name__)


@dataclass
class PermGroup:
    """Subgroup of Sym(degree) given by generators; order and BSGS computed lazily."""

    degree: int
    generators: Tuple[Permutation, ...] = ()

    def __post_init__(self):
        self.generators = tuple(self.generators)
        for g in self.generators:
            if g.degree != self.degree:
                raise QuadraticSetError(f"generator of degree {g.degree} in a group of degree {self.degree}")

    @classmethod
    def from_sympy(cls, group: PermutationGroup, degree: int) -> "PermGroup":
        gens = []
        for g in group.generators:
            images = list(g.array_form) + list(range(g.size, degree))
            p = Permutation(tuple(images))
            if not p.is_identity() and p not in gens:
                gens.append(p)
        result = cls(degree, tuple(gens))
        result.__dict__["_sympy"] = group
        return result

    @cached_property
    def _sympy(self) -> PermutationGroup:
        gens = [g.to_sympy() for g in self.generators]
        if not gens:
            gens = [SympyPermutation(list(range(self.degree)), size=self.degree)]
        return PermutationGroup(gens)

    @cached_property
    def order(self) -> int:
        return int(self._sympy.order())

    @property
    def bsgs(self) -> Tuple[List[int], List[Permutation]]:
        group = self._sympy
        group.schreier_sims()
        strong = [
            Permutation(tuple(list(g.array_form) + list(range(g.size, self.degree))))
            for g in group.strong_gens
        ]
        return list(group.base), strong

    @property
    def is_trivial(self) -> bool:
        return not self.generators

    def __contains__(self, p: Permutation) -> bool:
        return is_member(self, p)


@dataclass
class OrbitPartition:
    orbit_of: np.ndarray
    orbits: Tuple[Tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.orbits)

    def nontrivial(self) -> List[Tuple[int, ...]]:
        return [o for o in self.orbits if len(o) > 1]

    def to_dict(self) -> Dict:
        return {"orbits": [list(o) for o in self.orbits]}


def yb_group(Q: QuadraticSet) -> PermGroup:
    """𝒢(X, r): the group generated by the left translations ℒ_x."""
    n = Q.n
    if not (np.sort(Q.left, axis=1) == np.arange(n)).all():
        raise QuadraticSetError("left translations are not all bijections")
    seen = set()
    gens = []
    identity = np.arange(n).tobytes()
    for x in range(n):
        key = Q.left[x].tobytes()
        if key == identity or key in seen:
            continue
        seen.add(key)
        gens.append(Permutation(tuple(int(i) for i in Q.left[x])))
    return PermGroup(n, tuple(gens))


def orbits(G: PermGroup) -> OrbitPartition:
    table = np.array([g.images for g in G.generators], dtype=np.intp).reshape(-1, G.degree)
    parts = action_components(table)
    orbit_of = np.empty(G.degree, dtype=np.intp)
    for k, part in enumerate(parts):
        orbit_of[list(part)] = k
    return OrbitPartition(orbit_of, tuple(parts))


def orbit_partition(Q: QuadraticSet) -> OrbitPartition:
    return orbits(yb_group(Q))


def group_order(G: PermGroup) -> int:
    return G.order


def is_member(G: PermGroup, p: Permutation) -> bool:
    if p.degree != G.degree:
        return False
    if p.is_identity():
        return True
    return bool(G._sympy.contains(p.to_sympy()))


def is_abelian(G: PermGroup) -> bool:
    gens = G.generators
    for i, a in enumerate(gens):
        for b in gens[i + 1:]:
            if compose(a, b) != compose(b, a):
                return False
    return True


def derived_series(G: PermGroup) -> List[PermGroup]:
    """G ⊇ G′ ⊇ G″ ⊇ … down to the trivial group or to a perfect subgroup."""
    series = [G]
    current = G
    while current.order > 1:
        nxt = PermGroup.from_sympy(current._sympy.derived_subgroup(), G.degree)
        if nxt.order == current.order:
            break
        series.append(nxt)
        current = nxt
    return series


def solvable_length(G: PermGroup) -> Optional[int]:
    series = derived_series(G)
    if series[-1].order != 1:
        return None
    return len(series) - 1


def group_signature(G: PermGroup) -> Tuple[int, Tuple[int, ...]]:
    """(order, orders along the derived series), the isomorphism summary for non-abelian groups."""
    return G.order, tuple(H.order for H in derived_series(G))


def yb_group_solvable_length_G(Q: QuadraticSet) -> int:
    """sol(G(X, r)) of the structure group, reported as sol(𝒢) + 1."""
    if not is_square_free_solution(Q):
        raise NotSymmetricError("solvable length of G(X, r) needs a square-free solution")
    length = solvable_length(yb_group(Q))
    if length is None:
        raise NotSolvableError("𝒢(X, r) is not solvable")
    return length + 1


def normalizes(G: PermGroup, sigma: Permutation) -> bool:
    sigma_inv = inverse(sigma)
    return all(is_member(G, compose(compose(sigma, g), sigma_inv)) for g in G.generators)


def automorphism_group(Q: QuadraticSet) -> PermGroup:
    """Aut(X, r) from coset representatives along the point stabilizer chain 0, 1, 2, …"""
    if not classify(Q).lri:
        raise LriError("automorphism search needs the lri property")
    if Q.n > settings.aut_max_n:
        raise BoundExceededError(
            f"automorphism search on {Q.n} elements exceeds the bound {settings.aut_max_n}",
            "aut_max_n",
        )
    gens: List[Permutation] = []
    for i in range(Q.n):
        fixed = {j: j for j in range(i)}
        for y in range(i + 1, Q.n):
            found = next(iter_isomorphisms(Q, Q, {**fixed, i: y}), None)
            if found is not None and found not in gens:
                gens.append(found)
    logger.debug("automorphism group of %d elements has %d strong generators", Q.n, len(gens))
    return PermGroup(Q.n, tuple(gens))


# Bounded element enumeration


def _check_bound(order: int, limit: Optional[int]) -> None:
    limit = settings.max_group_enum if limit is None else limit
    if order > limit:
        raise BoundExceededError(f"group of order {order} exceeds the enumeration bound {limit}", "max_group_enum")


def elements(G: PermGroup, limit: Optional[int] = None) -> np.ndarray:
    """All elements as rows of an (order × degree) array."""
    _check_bound(G.order, limit)
    rows = list(G._sympy.generate(af=True))
    table = np.array(rows, dtype=np.intp).reshape(len(rows), -1)
    if table.shape[1] < G.degree:
        pad = np.broadcast_to(np.arange(table.shape[1], G.degree), (len(rows), G.degree - table.shape[1]))
        table = np.hstack([table, pad])
    return table


def _closure(generators: Sequence[np.ndarray], degree: int) -> Dict[bytes, np.ndarray]:
    identity = np.arange(degree, dtype=np.intp)
    found = {identity.tobytes(): identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for g in frontier:
            for s in generators:
                h = g[s]
                key = h.tobytes()
                if key not in found:
                    found[key] = h
                    nxt.append(h)
        frontier = nxt
    return found


def _pairwise_commute(gens: Sequence[np.ndarray]) -> bool:
    return all(np.array_equal(a[b], b[a]) for i, a in enumerate(gens) for b in gens[i + 1:])


@dataclass
class RetractHomReport:
    source_order: int
    target_order: int
    image_order: int
    kernel_order: int
    is_homomorphism: bool
    is_surjective: bool
    kernel_abelian: bool
    witness: Optional[Tuple[int, ...]] = None

    def to_dict(self) -> Dict:
        return asdict(self)


def retract_hom(Q: QuadraticSet, limit: Optional[int] = None) -> RetractHomReport:
    """φ₀: 𝒢(X) → 𝒢(Ret X), ℒ_x ↦ ℒ_[x], checked on every element reached by words."""
    from ybsolve.retract import retract

    if not is_square_free_solution(Q):
        raise NotSymmetricError("retract homomorphism needs a square-free solution")
    source = yb_group(Q)
    _check_bound(source.order, limit)
    step = retract(Q)
    target = yb_group(step.quotient)

    pairs = {}
    for x in range(Q.n):
        s0 = Q.left[x]
        s1 = step.quotient.left[step.class_of[x]]
        pairs[(s0.tobytes(), s1.tobytes())] = (s0, s1)
    generators = list(pairs.values())

    n0, n1 = Q.n, step.quotient.n
    id0, id1 = np.arange(n0, dtype=np.intp), np.arange(n1, dtype=np.intp)
    image_of = {id0.tobytes(): id1}
    frontier = [(id0, id1)]
    is_hom = True
    witness = None
    while frontier:
        nxt = []
        for g0, g1 in frontier:
            for s0, s1 in generators:
                h0, h1 = g0[s0], g1[s1]
                key = h0.tobytes()
                known = image_of.get(key)
                if known is None:
                    image_of[key] = h1
                    nxt.append((h0, h1))
                elif is_hom and not np.array_equal(known, h1):
                    is_hom = False
                    witness = tuple(int(i) for i in h0)
        frontier = nxt

    identity_key = id1.tobytes()
    kernel = [np.frombuffer(k, dtype=np.intp) for k, v in image_of.items() if v.tobytes() == identity_key]
    images = {v.tobytes() for v in image_of.values()}

    kernel_gens: List[np.ndarray] = []
    span = _closure([], n0)
    for k in kernel:
        if k.tobytes() not in span:
            kernel_gens.append(k)
            span = _closure(kernel_gens, n0)

    report = RetractHomReport(
        source_order=source.order,
        target_order=target.order,
        image_order=len(images),
        kernel_order=len(kernel),
        is_homomorphism=is_hom,
        is_surjective=len(images) == target.order,
        kernel_abelian=_pairwise_commute(kernel_gens),
        witness=witness,
    )
    logger.debug("retract homomorphism: %s", report)
    return report


def check_group_product(Q: QuadraticSet, partition: Sequence[Iterable[int]], limit: Optional[int] = None) -> bool:
    """Whether 𝒢 = 𝒢(Y_1)𝒢(Y_2)⋯𝒢(Y_s) as an ordered product of subsets."""
    parts = [sorted(set(int(y) for y in part)) for part in partition]
    covered = sorted(y for part in parts for y in part)
    if covered != list(range(Q.n)):
        raise PartitionError("parts must be a disjoint cover of the set")
    for part in parts:
        if not is_G_invariant(Q, part):
            raise PartitionError(f"part {part} is not 𝒢-invariant")
    whole = yb_group(Q)
    _check_bound(whole.order, limit)

    product: Optional[np.ndarray] = None
    for part in parts:
        sub = subgroup(Q, part)
        block = elements(sub, limit)
        if product is None:
            product = block
            continue
        # p∘h for every p in the running product and h in the next factor
        combined = product[:, block].reshape(-1, Q.n)
        product = np.unique(combined, axis=0)
        if product.shape[0] > whole.order:
            raise QuadraticSetError("product set left the group")
    assert product is not None
    return int(np.unique(product, axis=0).shape[0]) == whole.order


def subgroup(Q: QuadraticSet, part: Iterable[int]) -> PermGroup:
    """𝒢(Y): generated by ℒ_y for y in Y, acting on the whole set."""
    gens = []
    for y in sorted(set(int(v) for v in part)):
        p = Permutation(tuple(int(i) for i in Q.left[y]))
        if not p.is_identity() and p not in gens:
            gens.append(p)
    return PermGroup(Q.n, tuple(gens))


# Abelian invariants


def _primary_to_invariant_factors(primary: Dict[int, List[int]]) -> List[int]:
    """Combine prime-power exponents per prime into d₁ | d₂ | …"""
    columns = max((len(e) for e in primary.values()), default=0)
    factors = []
    for j in range(columns):
        d = 1
        for p, exps in primary.items():
            ordered = sorted(exps, reverse=True)
            if j < len(ordered):
                d *= p ** ordered[j]
        factors.append(d)
    return sorted(factors)


def normalize_invariants(orders: Iterable[int]) -> List[int]:
    """Invariant factors of a direct product of cyclic groups of the given orders."""
    primary: Dict[int, List[int]] = {}
    for d in orders:
        for p, e in factorint(int(d)).items():
            primary.setdefault(int(p), []).append(int(e))
    return _primary_to_invariant_factors(primary)


def abelian_invariants(G: PermGroup, limit: Optional[int] = None) -> List[int]:
    """Invariant factors from the full element table.

    For each prime p the counts N_k = #{g : g^(p^k) = 1} grow as p^(Σ min(k, e_i)),
    which peels off the exponents e_i of the p-primary part.
    """
    if not is_abelian(G):
        raise NotAbelianError("abelian invariants need an abelian group")
    order = G.order
    if order == 1:
        return []
    table = elements(G, limit)
    identity = np.arange(G.degree)
    primary: Dict[int, List[int]] = {}
    for p in factorint(order):
        p = int(p)
        powers = table
        previous_log = 0
        exponent_counts = []  # number of cyclic factors with exponent ≥ k
        while True:
            raised = powers
            for _ in range(p - 1):
                raised = np.take_along_axis(raised, powers, axis=1)
            powers = raised
            count = int((powers == identity).all(axis=1).sum())
            log = round(math.log(count, p))
            if p ** log != count:
                raise QuadraticSetError(f"element count {count} is not a power of {p}")
            exponent_counts.append(log - previous_log)
            previous_log = log
            if exponent_counts[-1] == 0:
                break
        exps = []
        for k, at_least in enumerate(exponent_counts[:-1], start=1):
            exactly = at_least - exponent_counts[k]
            exps.extend([k] * exactly)
        primary[p] = exps
    return _primary_to_invariant_factors(primary)
