"""
Retracts, retract towers and the multipermutation level.

Two independent routes to mpl are provided: iterating the retract quotient,
and the tower identity checked through the closure of actor pairs.
"""

from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from ybsolve.config import settings
from ybsolve.exceptions import (
    BoundExceededError,
    ConsistencyError,
    MplUndefinedError,
    NotSymmetricError,
    QuadraticSetError,
)
from ybsolve.group import is_abelian, orbit_partition, subgroup
from ybsolve.logging_config import get_logger
from ybsolve.qset import (
    QuadraticSet,
    classify,
    is_G_invariant,
    is_square_free_solution,
    restrict,
    restricted_automorphism_criterion,
)

logger = get_logger(__name__)

Witness = Tuple[int, ...]


class TowerStatus(str, Enum):
    TERMINATED = "terminated"
    STABILIZED = "stabilized"
    BUDGET_EXHAUSTED = "budget_exhausted"


@dataclass
class RetractStep:
    """One quotient X → Ret(X); class_of[x] is the index of [x]."""

    class_of: np.ndarray
    quotient: QuadraticSet

    @property
    def classes(self) -> List[List[int]]:
        groups: List[List[int]] = [[] for _ in range(self.quotient.n)]
        for x, c in enumerate(self.class_of):
            groups[int(c)].append(x)
        return groups


def _require_symmetric(Q: QuadraticSet) -> None:
    if Q.n <= settings.verify_max_n:
        if not classify(Q).symmetric:
            raise NotSymmetricError("retract needs a nondegenerate involutive braided set")
        return
    # above verify_max_n only the quadratic-time conditions are checked
    L, R = Q.left, Q.right
    nondegenerate = (np.sort(L, axis=1) == np.arange(Q.n)).all() and (np.sort(R, axis=0) == np.arange(Q.n)[:, None]).all()
    involutive = np.array_equal(L[L, R], np.broadcast_to(np.arange(Q.n)[:, None], L.shape)) and np.array_equal(
        R[L, R], np.broadcast_to(np.arange(Q.n), R.shape)
    )
    if not (nondegenerate and involutive):
        raise NotSymmetricError("retract needs a nondegenerate involutive braided set")


def retract(Q: QuadraticSet) -> RetractStep:
    """Identify elements with equal left translations; [α] acts on [x] as [ᵅx]."""
    _require_symmetric(Q)
    L, R = Q.left, Q.right
    _, first, inverse = np.unique(L, axis=0, return_index=True, return_inverse=True)
    by_least = np.argsort(first)
    rank = np.empty_like(by_least)
    rank[by_least] = np.arange(by_least.size)
    class_of = rank[np.ravel(inverse)]
    reps = first[by_least]

    block = np.ix_(reps, reps)
    q_left = class_of[L[block]]
    q_right = class_of[R[block]]
    lifted = np.ix_(class_of, class_of)
    if not (np.array_equal(class_of[L], q_left[lifted]) and np.array_equal(class_of[R], q_right[lifted])):
        raise ConsistencyError("induced action on retract classes depends on representatives")

    labels = tuple(f"[{Q.labels[r]}]" for r in reps)
    return RetractStep(class_of, QuadraticSet(q_left, q_right, labels, Q.lri_derived))


@dataclass
class RetractTower:
    source: QuadraticSet
    levels: List[RetractStep] = field(default_factory=list)
    status: TowerStatus = TowerStatus.TERMINATED
    level: int = 0

    @property
    def mpl(self) -> Optional[int]:
        if self.status == TowerStatus.TERMINATED:
            return self.level
        if self.status == TowerStatus.STABILIZED:
            return None
        raise BoundExceededError(f"retract tower stopped after {self.level} levels without terminating")

    def retracts(self) -> List[QuadraticSet]:
        return [self.source] + [step.quotient for step in self.levels]

    def class_map(self, k: int) -> np.ndarray:
        """Composite map X → Ret^k."""
        if not 0 <= k <= len(self.levels):
            raise QuadraticSetError(f"tower has no level {k}")
        mapping = np.arange(self.source.n)
        for step in self.levels[:k]:
            mapping = step.class_of[mapping]
        return mapping

    def describe(self) -> str:
        if self.status == TowerStatus.TERMINATED:
            return f"mpl {self.level}"
        if self.status == TowerStatus.STABILIZED:
            return f"not a multipermutation solution (irretractable at level {self.level})"
        return f"undecided after {self.level} levels"


def retract_tower(Q: QuadraticSet, max_levels: Optional[int] = None) -> RetractTower:
    max_levels = Q.n if max_levels is None else max_levels
    tower = RetractTower(Q)
    current = Q
    while current.n > 1:
        if len(tower.levels) >= max_levels:
            tower.status = TowerStatus.BUDGET_EXHAUSTED
            tower.level = len(tower.levels)
            return tower
        step = retract(current)
        if step.quotient.n == current.n:
            tower.status = TowerStatus.STABILIZED
            tower.level = len(tower.levels)
            logger.debug("retract tower of %d elements stabilized at level %d", Q.n, tower.level)
            return tower
        tower.levels.append(step)
        current = step.quotient
    tower.status = TowerStatus.TERMINATED
    tower.level = len(tower.levels)
    return tower


def mpl(Q: QuadraticSet) -> Optional[int]:
    return retract_tower(Q).mpl


# Towers of actions


def tower_value(Q: QuadraticSet, elements: Sequence[int]) -> int:
    """(⋯((ζ_m ▷ ζ_{m−1}) ▷ ζ_{m−2}) ⋯) ▷ ζ_1 for elements = (ζ_m, …, ζ_1)."""
    if not elements:
        raise QuadraticSetError("a tower needs at least one element")
    value = int(elements[0])
    for z in elements[1:]:
        value = int(Q.left[value, int(z)])
    return value


def _pair_levels(Q: QuadraticSet, max_m: int) -> Iterator[Tuple[int, Optional[Witness]]]:
    """Yield (m, witness) for m = 1..max_m.

    Level m holds the distinct pairs (T_m, T_{m−1}) of towers built from a common
    tail y_{m−1}, …, y_1; the identity for m holds iff ℒ agrees on every pair.
    Index n stands for the empty tower, which acts trivially.
    """
    n = Q.n
    extended = np.vstack([Q.left, np.arange(n)])
    pairs = np.stack([np.arange(n), np.full(n, n)], axis=1)
    history: List[Tuple[np.ndarray, np.ndarray]] = []
    for m in range(1, max_m + 1):
        if m > 1:
            tops = extended[pairs[:, 0]].ravel()
            tails = extended[pairs[:, 1]].ravel()
            codes = tops * (n + 1) + tails
            _, first = np.unique(codes, return_index=True)
            history.append((first // n, first % n))
            pairs = np.stack([tops[first], tails[first]], axis=1)
        differs = extended[pairs[:, 0]] != extended[pairs[:, 1]]
        hits = np.argwhere(differs)
        if hits.size == 0:
            yield m, None
            continue
        index, x = (int(v) for v in hits[0])
        tail = []
        for parents, ys in reversed(history):
            tail.append(int(ys[index]))
            index = int(parents[index])
        yield m, (index, *reversed(tail), x)


def tower_identity_witness(Q: QuadraticSet, m: int) -> Optional[Witness]:
    """A tuple (y_m, …, y_1, x) breaking the level-m identity, or None if it holds."""
    if m < 1:
        raise QuadraticSetError("tower identity is defined for m ≥ 1")
    for level, witness in _pair_levels(Q, m):
        if level == m:
            return witness
    return None


def tower_identity_holds(Q: QuadraticSet, m: int) -> bool:
    return tower_identity_witness(Q, m) is None


def mpl_via_tower(Q: QuadraticSet) -> Optional[int]:
    if Q.n == 1:
        return 0
    for m, witness in _pair_levels(Q, Q.n):
        if witness is None:
            return m
    return None


# Low levels


def _require_solution(Q: QuadraticSet) -> None:
    if not is_square_free_solution(Q):
        raise NotSymmetricError("operation needs a square-free solution")


def check_mpl_le2(Q: QuadraticSet) -> bool:
    """ℒ is constant on every 𝒢-orbit."""
    _require_solution(Q)
    L = Q.left
    for orbit in orbit_partition(Q).orbits:
        rows = L[list(orbit)]
        if not (rows == rows[0]).all():
            return False
    return True


def check_mpl_le3_condition(Q: QuadraticSet) -> bool:
    """ℒ_{ᵝx} = ℒ_{ᵅx} whenever α and β share an orbit."""
    _require_solution(Q)
    L = Q.left
    for orbit in orbit_partition(Q).orbits:
        if len(orbit) < 2:
            continue
        targets = L[list(orbit)]  # [α, x] = ᵅx
        rows = L[targets]  # [α, x, :] = ℒ_{ᵅx}
        if not (rows == rows[0]).all():
            return False
    return True


@dataclass
class Mpl3Report:
    cross_orbit_laws: bool
    orbit_groups_abelian: bool
    orbits_stu: bool

    def to_dict(self) -> Dict:
        return asdict(self)


def check_mpl3_consequences(Q: QuadraticSet) -> Mpl3Report:
    """Consequences of ℒ_{ᵝx} = ℒ_{ᵅx} on orbit mates, evaluated on the orbit decomposition.

    For x, y in one orbit and α, β in another: ^{ᵝx}α = ˣα and ^{ʸα}x = ᵅx;
    each orbit group 𝒢(X_j) is abelian; the orbits form a strong twisted union.
    """
    _require_solution(Q)
    L = Q.left
    parts = [np.array(o, dtype=np.intp) for o in orbit_partition(Q).orbits]
    laws = True
    for i, Xi in enumerate(parts):
        for j, Xj in enumerate(parts):
            if i == j or not laws:
                continue
            beta_x = L[np.ix_(Xj, Xi)]  # [β, x]
            if not (L[beta_x[:, :, None], Xj[None, None, :]] == L[np.ix_(Xi, Xj)][None, :, :]).all():
                laws = False
                continue
            y_alpha = L[np.ix_(Xi, Xj)]  # [y, α]
            if not (L[y_alpha[:, :, None], Xi[None, None, :]] == L[np.ix_(Xj, Xi)][None, :, :]).all():
                laws = False
    return Mpl3Report(
        cross_orbit_laws=laws,
        orbit_groups_abelian=all(is_abelian(subgroup(Q, part)) for part in parts),
        orbits_stu=bool(restricted_automorphism_criterion(Q, parts)),
    )


# Retract classes


@dataclass
class ClassReport:
    members: List[int]
    labels: List[str]
    g_invariant: bool
    restricted_mpl: Optional[int]
    union_of_orbits: bool

    def to_dict(self) -> Dict:
        return asdict(self)


@dataclass
class RetractClassDecomposition:
    mpl: int
    classes: List[ClassReport]
    stu_union: Optional[bool] = None

    def partition(self) -> List[List[int]]:
        return [c.members for c in self.classes]

    def to_dict(self) -> Dict:
        return {"mpl": self.mpl, "classes": [c.to_dict() for c in self.classes], "stu_union": self.stu_union}


def retract_class_decomposition(Q: QuadraticSet) -> RetractClassDecomposition:
    """Split X into the fibres of X → Ret^{m−1}, m = mpl(X)."""
    _require_solution(Q)
    tower = retract_tower(Q)
    m = tower.mpl
    if m is None:
        raise MplUndefinedError(tower.describe())
    if m == 0:
        raise MplUndefinedError("a one-element solution has no retract classes")
    mapping = tower.class_map(m - 1)
    orbit_of = orbit_partition(Q).orbit_of

    reports = []
    for c in range(int(mapping.max()) + 1):
        members = [int(x) for x in np.flatnonzero(mapping == c)]
        g_invariant = is_G_invariant(Q, members)
        if not g_invariant:
            raise ConsistencyError(f"retract class {members} is not 𝒢-invariant")
        restricted_mpl = mpl(restrict(Q, members))
        if restricted_mpl is None or restricted_mpl > m - 1:
            raise ConsistencyError(f"retract class {members} restricts to mpl {restricted_mpl} > {m - 1}")
        member_set = set(members)
        union = all(set(np.flatnonzero(orbit_of == orbit_of[x]).tolist()) <= member_set for x in members)
        if not union:
            raise ConsistencyError(f"retract class {members} is not a union of orbits")
        reports.append(ClassReport(members, [Q.labels[x] for x in members], g_invariant, restricted_mpl, union))

    decomposition = RetractClassDecomposition(m, reports)
    if 2 <= m <= 3:
        decomposition.stu_union = bool(restricted_automorphism_criterion(Q, decomposition.partition()))
    return decomposition
