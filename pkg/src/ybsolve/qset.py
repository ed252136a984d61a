"""
Quadratic sets (X, r) with r(x, y) = (ˣy, xʸ) stored as two n×n action tables.

left[x, y] = ˣy = ℒ_x(y) and right[x, y] = xʸ. Every axiom of a set-theoretic
solution is evaluated here by exhaustive numpy scans; a failing check records
the lexicographically least counterexample.
"""

import functools
from dataclasses import asdict, dataclass, field
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

import networkx as nx
import numpy as np

from ybsolve.config import settings
from ybsolve.exceptions import ConsistencyError, QuadraticSetError
from ybsolve.logging_config import get_logger
from ybsolve.perm import Permutation, cycle_type, default_labels

logger = get_logger(__name__)

Witness = Tuple[int, ...]
RowLike = Union[Permutation, Sequence[int]]

FLAG_NAMES = (
    "nondegenerate",
    "involutive",
    "braided",
    "l1",
    "r1",
    "lr3",
    "square_free",
    "lri",
    "cyclic_cl1",
    "cyclic_cl2",
    "cyclic_cr1",
    "cyclic_cr2",
)


@dataclass(frozen=True, eq=False)
class QuadraticSet:
    """The pair of action tables of a quadratic set.

    Equality and hashing look at the tables only; labels are presentation.
    """

    left: np.ndarray
    right: np.ndarray
    labels: Tuple[str, ...] = ()
    lri_derived: bool = False

    def __post_init__(self):
        left = np.array(self.left, dtype=np.intp)
        right = np.array(self.right, dtype=np.intp)
        if left.ndim != 2 or left.shape[0] != left.shape[1] or left.shape[0] == 0:
            raise QuadraticSetError(f"left table must be a non-empty square table, got {left.shape}")
        if right.shape != left.shape:
            raise QuadraticSetError(f"right table shape {right.shape} != left table shape {left.shape}")
        n = left.shape[0]
        for name, table in (("left", left), ("right", right)):
            if table.min() < 0 or table.max() >= n:
                raise QuadraticSetError(f"{name} table has entries outside 0..{n - 1}")
        labels = tuple(self.labels) if self.labels else default_labels(n)
        if len(labels) != n:
            raise QuadraticSetError(f"expected {n} labels, got {len(labels)}")
        if len(set(labels)) != n:
            raise QuadraticSetError("labels must be distinct")
        for label in labels:
            if not label or any(ch.isspace() or ch in "()#" for ch in label):
                raise QuadraticSetError(f"invalid label {label!r}")
        left.setflags(write=False)
        right.setflags(write=False)
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)
        object.__setattr__(self, "labels", labels)

    @property
    def n(self) -> int:
        return self.left.shape[0]

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other) -> bool:
        if not isinstance(other, QuadraticSet):
            return NotImplemented
        return (
            self.n == other.n
            and np.array_equal(self.left, other.left)
            and np.array_equal(self.right, other.right)
        )

    def __hash__(self) -> int:
        return hash((self.n, self.left.tobytes(), self.right.tobytes()))

    def __repr__(self) -> str:
        return f"QuadraticSet(n={self.n}, labels={self.labels[:4]}{'...' if self.n > 4 else ''})"

    def r(self, x: int, y: int) -> Tuple[int, int]:
        return int(self.left[x, y]), int(self.right[x, y])

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise QuadraticSetError(f"unknown element {label!r}") from None

    def with_labels(self, labels: Optional[Sequence[str]]) -> "QuadraticSet":
        return QuadraticSet(self.left, self.right, tuple(labels or ()), self.lri_derived)

    def has_default_labels(self) -> bool:
        return self.labels == default_labels(self.n)


@dataclass
class Verdict:
    """Outcome of a yes/no check with the least counterexample when it fails."""

    holds: bool
    witness: Optional[Witness] = None
    law: Optional[str] = None

    def __bool__(self) -> bool:
        return self.holds

    def to_dict(self) -> Dict:
        return asdict(self)


@dataclass
class PropertyFlags:
    nondegenerate: bool
    involutive: bool
    braided: bool
    l1: bool
    r1: bool
    lr3: bool
    square_free: bool
    lri: bool
    cyclic_cl1: bool
    cyclic_cl2: bool
    cyclic_cr1: bool
    cyclic_cr2: bool
    first_witness: Dict[str, Witness] = field(default_factory=dict)

    def __post_init__(self):
        if self.braided != (self.l1 and self.r1 and self.lr3):
            raise ConsistencyError("braid relation disagrees with the l1/r1/lr3 decomposition")

    @property
    def symmetric(self) -> bool:
        return self.nondegenerate and self.involutive and self.braided

    @property
    def square_free_solution(self) -> bool:
        return self.symmetric and self.square_free

    @property
    def cyclic(self) -> bool:
        return self.cyclic_cl1 and self.cyclic_cl2 and self.cyclic_cr1 and self.cyclic_cr2

    def as_bools(self) -> Dict[str, bool]:
        return {name: getattr(self, name) for name in FLAG_NAMES}

    def to_dict(self) -> Dict:
        return {
            **self.as_bools(),
            "first_witness": {k: list(v) for k, v in self.first_witness.items()},
        }


def _as_rows(rows: Iterable[RowLike]) -> np.ndarray:
    rows = [r.images if isinstance(r, Permutation) else tuple(int(i) for i in r) for r in rows]
    if not rows:
        raise QuadraticSetError("at least one row is required")
    n = len(rows)
    for x, row in enumerate(rows):
        if len(row) != n:
            raise QuadraticSetError(f"row {x} has {len(row)} entries, expected {n}")
    return np.array(rows, dtype=np.intp)


def _rows_are_bijections(table: np.ndarray) -> np.ndarray:
    n = table.shape[0]
    return (np.sort(table, axis=1) == np.arange(n)).all(axis=1)


def from_left_action(rows: Iterable[RowLike], labels: Optional[Sequence[str]] = None) -> QuadraticSet:
    """Build (X, r) from ℒ with xʸ = ℒ_y⁻¹(x)."""
    left = _as_rows(rows)
    bad = np.flatnonzero(~_rows_are_bijections(left))
    if bad.size:
        raise QuadraticSetError(f"left row {int(bad[0]) + 1} is not a bijection")
    inverse_rows = np.argsort(left, axis=1)
    return QuadraticSet(left, inverse_rows.T, tuple(labels or ()), lri_derived=True)


def lri_right_table(Q: QuadraticSet) -> Optional[np.ndarray]:
    """The right table lri would force, or None if some ℒ_x is not a bijection."""
    if not _rows_are_bijections(Q.left).all():
        return None
    return np.argsort(Q.left, axis=1).T


# Axiom scans


def _first_hit(fail: np.ndarray) -> Optional[Witness]:
    hits = np.argwhere(fail)
    if hits.size == 0:
        return None
    return tuple(int(i) for i in hits[0])


def _braid_sides_agree(L: np.ndarray, R: np.ndarray, x: int) -> np.ndarray:
    """r₁₂r₂₃r₁₂(x, y, z) == r₂₃r₁₂r₂₃(x, y, z) over the (y, z) grid."""
    n = L.shape[0]
    y = np.arange(n)[:, None]
    z = np.arange(n)[None, :]
    # r₁₂ r₂₃ r₁₂
    a, b = L[x, y], R[x, y]
    c, d = L[b, z], R[b, z]
    first = (L[a, c], R[a, c], d)
    # r₂₃ r₁₂ r₂₃
    u, v = L[y, z], R[y, z]
    p, q = L[x, u], R[x, u]
    second = (p, L[q, v], R[q, v])
    return (first[0] == second[0]) & (first[1] == second[1]) & (first[2] == second[2])


def _triple_scans(L: np.ndarray, R: np.ndarray) -> Dict[str, Optional[Witness]]:
    """Least failing (x, y, z) for l1, r1, lr3 and the braid relation, chunked by x."""
    n = L.shape[0]
    found: Dict[str, Optional[Witness]] = {"l1": None, "r1": None, "lr3": None, "braided": None}
    Lyz, Ryz = L, R  # [y, z] indexed tables
    for x in range(n):
        if all(v is not None for v in found.values()):
            break
        Lxy = L[x][:, None]  # ˣy as a column over y
        Rxy = R[x][:, None]  # xʸ
        x_yz = L[x][Lyz]  # ˣ(ʸz)
        l1 = L[Lxy, L[Rxy, np.arange(n)[None, :]]] == x_yz
        inner = R[x][Lyz]  # x^{ʸz}
        r1 = R[Rxy, np.arange(n)[None, :]] == R[inner, Ryz]
        lr3 = R[Lxy, L[Rxy, np.arange(n)[None, :]]] == L[inner, Ryz]
        braided = _braid_sides_agree(L, R, x)
        for name, ok in (("l1", l1), ("r1", r1), ("lr3", lr3), ("braided", braided)):
            if found[name] is None:
                hit = _first_hit(~ok)
                if hit is not None:
                    found[name] = (x, *hit)
    return found


def _scan(Q: QuadraticSet) -> PropertyFlags:
    L, R = Q.left, Q.right
    n = Q.n
    idx = np.arange(n)
    witnesses: Dict[str, Witness] = {}

    left_ok = _rows_are_bijections(L)
    right_ok = _rows_are_bijections(R.T)
    if not left_ok.all():
        witnesses["nondegenerate"] = (int(np.flatnonzero(~left_ok)[0]),)
    elif not right_ok.all():
        witnesses["nondegenerate"] = (int(np.flatnonzero(~right_ok)[0]),)

    checks = {
        "involutive": (L[L, R] == idx[:, None]) & (R[L, R] == idx[None, :]),
        # (ˣy)ˣ = y = ˣ(yˣ), indexed [x, y]
        "lri": (R[L, idx[:, None]] == idx[None, :]) & (L[idx[:, None], R.T] == idx[None, :]),
        # ^{yˣ}x = ʸx, indexed [x, y]
        "cyclic_cl1": L[R.T, idx[:, None]] == L.T,
        # ^{ˣy}x = ʸx
        "cyclic_cl2": L[L, idx[:, None]] == L.T,
        # x^{ˣy} = xʸ
        "cyclic_cr1": R[idx[:, None], L] == R,
        # x^{yˣ} = xʸ
        "cyclic_cr2": R[idx[:, None], R.T] == R,
    }
    values = {}
    # ˣx = x and xˣ = x
    diagonal = (np.diag(L) == idx) & (np.diag(R) == idx)
    values["square_free"] = bool(diagonal.all())
    if not values["square_free"]:
        witnesses["square_free"] = (int(np.flatnonzero(~diagonal)[0]),)
    for name, ok in checks.items():
        hit = _first_hit(~ok)
        values[name] = hit is None
        if hit is not None:
            witnesses[name] = hit

    triples = _triple_scans(L, R)
    for name, hit in triples.items():
        values[name] = hit is None
        if hit is not None:
            witnesses[name] = hit

    return PropertyFlags(
        nondegenerate=bool(left_ok.all() and right_ok.all()),
        involutive=values["involutive"],
        braided=values["braided"],
        l1=values["l1"],
        r1=values["r1"],
        lr3=values["lr3"],
        square_free=values["square_free"],
        lri=values["lri"],
        cyclic_cl1=values["cyclic_cl1"],
        cyclic_cl2=values["cyclic_cl2"],
        cyclic_cr1=values["cyclic_cr1"],
        cyclic_cr2=values["cyclic_cr2"],
        first_witness=witnesses,
    )


@functools.lru_cache(maxsize=512)
def _classify_cached(Q: QuadraticSet) -> PropertyFlags:
    return _scan(Q)


def classify(Q: QuadraticSet) -> PropertyFlags:
    flags = _classify_cached(Q)
    # callers get their own copy of the witness dict
    return PropertyFlags(**{**flags.as_bools(), "first_witness": dict(flags.first_witness)})


def alternative_criteria(Q: QuadraticSet) -> Tuple[bool, bool]:
    """Evaluate the two left-action criteria for square-free solutions.

    The first is ˣx = x, ^{yˣ}x = ʸx and ˣ(ʸz) = ^{ˣy}(^{xʸ}z); the second is
    ˣx = x together with ^{ʸx}(ʸz) = ^{ˣy}(ˣz). Both read xʸ as ℒ_y⁻¹(x).
    """
    L = Q.left
    n = Q.n
    idx = np.arange(n)
    right = lri_right_table(Q)
    if right is None:
        return False, False
    fixes = bool((np.diag(L) == idx).all())
    cl1 = bool((L[right.T, idx[:, None]] == L.T).all())
    l1 = True
    cyclic = True
    for x in range(n):
        Lxy = L[x][:, None]
        if l1:
            lhs = L[x][L]
            rhs = L[Lxy, L[right[x][:, None], idx[None, :]]]
            l1 = bool((lhs == rhs).all())
        if cyclic:
            # [y, z]: ^{ʸx}(ʸz) against ^{ˣy}(ˣz)
            lhs = L[L[:, x][:, None], L]
            rhs = L[Lxy, L[x][None, :]]
            cyclic = bool((lhs == rhs).all())
        if not (l1 or cyclic):
            break
    return fixes and cl1 and l1, fixes and cyclic


def is_square_free_solution(Q: QuadraticSet) -> bool:
    flags = classify(Q)
    result = flags.square_free_solution
    if settings.debug_checks:
        derived = lri_right_table(Q)
        if derived is not None and np.array_equal(derived, Q.right):
            via_lemma, via_corollary = alternative_criteria(Q)
            if not (via_lemma == via_corollary == result):
                raise ConsistencyError(
                    f"solution criteria disagree: direct={result}, "
                    f"three-condition={via_lemma}, cyclic={via_corollary}"
                )
    return result


def braid_witness(Q: QuadraticSet) -> Optional[Witness]:
    return classify(Q).first_witness.get("braided")


# Row extraction, invariant subsets, restriction


def _check_index(Q: QuadraticSet, x: int) -> None:
    if not 0 <= x < Q.n:
        raise QuadraticSetError(f"element index {x} outside 0..{Q.n - 1}")


def left_perm(Q: QuadraticSet, x: int) -> Permutation:
    _check_index(Q, x)
    return Permutation(tuple(int(i) for i in Q.left[x]))


def right_perm(Q: QuadraticSet, x: int) -> Permutation:
    """ℛ_x: y ↦ yˣ."""
    _check_index(Q, x)
    return Permutation(tuple(int(i) for i in Q.right[:, x]))


def _subset(Q: QuadraticSet, Y: Iterable[int]) -> np.ndarray:
    members = np.array(sorted(set(int(y) for y in Y)), dtype=np.intp)
    if members.size and (members[0] < 0 or members[-1] >= Q.n):
        raise QuadraticSetError(f"subset has elements outside 0..{Q.n - 1}")
    return members


def _inside(values: np.ndarray, members: np.ndarray, n: int) -> bool:
    mask = np.zeros(n, dtype=bool)
    mask[members] = True
    return bool(mask[values].all())


def is_r_invariant(Q: QuadraticSet, Y: Iterable[int]) -> bool:
    members = _subset(Q, Y)
    if members.size == 0:
        return True
    block = np.ix_(members, members)
    return _inside(Q.left[block], members, Q.n) and _inside(Q.right[block], members, Q.n)


def is_G_invariant(Q: QuadraticSet, Y: Iterable[int]) -> bool:
    members = _subset(Q, Y)
    if members.size == 0:
        return True
    return _inside(Q.left[:, members], members, Q.n)


def complement(Q: QuadraticSet, Y: Iterable[int]) -> List[int]:
    members = set(int(y) for y in Y)
    return [x for x in range(Q.n) if x not in members]


def restrict(Q: QuadraticSet, Y: Iterable[int]) -> QuadraticSet:
    """Sub-solution on an r-invariant subset, relabelled by increasing index."""
    members = _subset(Q, Y)
    if members.size == 0:
        raise QuadraticSetError("cannot restrict to an empty subset")
    if not is_r_invariant(Q, members):
        raise QuadraticSetError("subset is not r-invariant")
    local = np.full(Q.n, -1, dtype=np.intp)
    local[members] = np.arange(members.size)
    block = np.ix_(members, members)
    if settings.debug_checks and is_square_free_solution(Q):
        rest = complement(Q, members)
        g_inv = is_G_invariant(Q, members)
        if not (g_inv == is_G_invariant(Q, rest) == (is_r_invariant(Q, members) and is_r_invariant(Q, rest))):
            raise ConsistencyError("invariance conditions disagree for a square-free solution")
    return QuadraticSet(
        local[Q.left[block]],
        local[Q.right[block]],
        tuple(Q.labels[i] for i in members),
        Q.lri_derived,
    )


# Homomorphisms


def is_homomorphism(Q1: QuadraticSet, Q2: QuadraticSet, phi: Sequence[int]) -> Verdict:
    """(φ×φ)∘r₁ = r₂∘(φ×φ), with the least failing pair."""
    phi = np.asarray(phi, dtype=np.intp)
    if phi.shape != (Q1.n,) or (Q1.n and (phi.min() < 0 or phi.max() >= Q2.n)):
        raise QuadraticSetError("map does not send the first set into the second")
    grid = np.ix_(phi, phi)
    ok = (phi[Q1.left] == Q2.left[grid]) & (phi[Q1.right] == Q2.right[grid])
    hit = _first_hit(~ok)
    return Verdict(hit is None, hit, None if hit is None else "homomorphism")


def is_automorphism(Q: QuadraticSet, sigma: Union[Permutation, Sequence[int]]) -> Verdict:
    images = sigma.images if isinstance(sigma, Permutation) else tuple(sigma)
    if len(images) != Q.n:
        raise QuadraticSetError(f"permutation has degree {len(images)}, expected {Q.n}")
    return is_homomorphism(Q, Q, images)


def action_components(table: np.ndarray) -> List[Tuple[int, ...]]:
    """Components of the graph x — table[a, x] over all rows a, ordered by least element.

    For the rows ℒ_a of a nondegenerate set these are the 𝒢-orbits.
    """
    n = table.shape[1]
    graph = nx.Graph()
    graph.add_nodes_from(range(n))
    sources = np.broadcast_to(np.arange(n), table.shape)
    graph.add_edges_from(zip(sources.ravel().tolist(), table.ravel().tolist()))
    return sorted((tuple(sorted(c)) for c in nx.connected_components(graph)), key=lambda c: c[0])


def _orbit_sizes(L: np.ndarray) -> np.ndarray:
    sizes = np.empty(L.shape[1], dtype=np.intp)
    for component in action_components(L):
        sizes[list(component)] = len(component)
    return sizes


def _row_signature(row: np.ndarray) -> Tuple:
    n = row.shape[0]
    if (np.sort(row) == np.arange(n)).all():
        return ("perm",) + cycle_type(Permutation(tuple(int(i) for i in row)))
    return ("map",) + tuple(sorted(np.bincount(row, minlength=n).tolist()))


def _initial_colors(Q: QuadraticSet) -> List[Tuple]:
    L, R = Q.left, Q.right
    n = Q.n
    idx = np.arange(n)
    orbit_sizes = _orbit_sizes(L)
    row_bytes = [L[x].tobytes() for x in range(n)]
    multiplicity = {b: row_bytes.count(b) for b in set(row_bytes)}
    fixers = (L == idx[None, :]).sum(axis=0)
    keys = []
    for x in range(n):
        keys.append((
            int(L[x, x] == x),
            int(R[x, x] == x),
            int(orbit_sizes[x]),
            int(fixers[x]),
            multiplicity[row_bytes[x]],
            _row_signature(L[x]),
            _row_signature(R[:, x]),
        ))
    return keys


def refine_colors(sets: Sequence[QuadraticSet]) -> List[np.ndarray]:
    """Joint colour refinement; equal colours are necessary for an isomorphism to match elements."""
    keys = [_initial_colors(Q) for Q in sets]
    palette = sorted(set(k for ks in keys for k in ks))
    rank = {k: i for i, k in enumerate(palette)}
    colors = [np.array([rank[k] for k in ks], dtype=np.int64) for ks in keys]
    count = len(palette)
    while True:
        signatures = []
        for Q, c in zip(sets, colors):
            L, R = Q.left, Q.right
            sig = []
            for x in range(Q.n):
                profile = np.stack([c, c[L[x]], c[L[:, x]], c[R[x]], c[R[:, x]]], axis=1)
                profile = profile[np.lexsort(profile.T[::-1])]
                sig.append((int(c[x]), profile.tobytes()))
            signatures.append(sig)
        palette = sorted(set(s for sig in signatures for s in sig))
        if len(palette) == count:
            return colors
        rank = {s: i for i, s in enumerate(palette)}
        colors = [np.array([rank[s] for s in sig], dtype=np.int64) for sig in signatures]
        count = len(palette)


def iter_isomorphisms(
    Q1: QuadraticSet,
    Q2: QuadraticSet,
    fixed: Optional[Dict[int, int]] = None,
) -> Iterator[Permutation]:
    """Yield every isomorphism Q1 → Q2 extending the partial map fixed.

    Backtracking over colour classes; each choice is closed under
    φ(ˣy) = ^{φx}φy and φ(xʸ) = (φx)^{φy} before branching further.
    """
    if Q1.n != Q2.n:
        return
    n = Q1.n
    c1, c2 = refine_colors([Q1, Q2])
    if sorted(c1.tolist()) != sorted(c2.tolist()):
        return
    classes: Dict[int, List[int]] = {}
    for y in range(n):
        classes.setdefault(int(c2[y]), []).append(y)

    L1, R1, L2, R2 = Q1.left, Q1.right, Q2.left, Q2.right
    phi = [-1] * n
    used = [False] * n
    mapped: List[int] = []

    def assign(a: int, b: int, trail: List[int]) -> bool:
        queue = [(a, b)]
        while queue:
            u, v = queue.pop()
            if phi[u] == v:
                continue
            if phi[u] != -1 or used[v] or c1[u] != c2[v]:
                return False
            phi[u] = v
            used[v] = True
            mapped.append(u)
            trail.append(u)
            for w in list(mapped):
                pw = phi[w]
                for t1, t2 in ((L1, L2), (R1, R2)):
                    for s, ps, t, pt in ((u, v, w, pw), (w, pw, u, v)):
                        image = int(t1[s, t])
                        target = int(t2[ps, pt])
                        if phi[image] == -1:
                            queue.append((image, target))
                        elif phi[image] != target:
                            return False
        return True

    def undo(trail: List[int]) -> None:
        for u in reversed(trail):
            used[phi[u]] = False
            phi[u] = -1
            mapped.pop()

    def search() -> Iterator[Permutation]:
        free = [x for x in range(n) if phi[x] == -1]
        if not free:
            candidate = Permutation(tuple(phi))
            if is_homomorphism(Q1, Q2, candidate.images):
                yield candidate
            return
        x = min(free, key=lambda p: (len(classes[int(c1[p])]), p))
        for y in classes[int(c1[x])]:
            if used[y]:
                continue
            trail: List[int] = []
            if assign(x, y, trail):
                yield from search()
            undo(trail)

    trail: List[int] = []
    ok = True
    for a, b in sorted((fixed or {}).items()):
        if not assign(a, b, trail):
            ok = False
            break
    if ok:
        yield from search()
    undo(trail)


# Split maps


@dataclass
class SplitReport:
    f_involutive: bool
    g_involutive: bool
    factorization_holds: bool
    f_is_solution: bool
    g_is_solution: bool
    f_stu_condition: bool
    g_stu_condition: bool

    def to_dict(self) -> Dict:
        return asdict(self)


def _check_cover(Q: QuadraticSet, X_part: Iterable[int], Y_part: Iterable[int]) -> Tuple[np.ndarray, np.ndarray]:
    xs, ys = _subset(Q, X_part), _subset(Q, Y_part)
    if xs.size == 0 or ys.size == 0:
        raise QuadraticSetError("both parts must be non-empty")
    if set(xs.tolist()) & set(ys.tolist()) or xs.size + ys.size != Q.n:
        raise QuadraticSetError("parts must be a disjoint cover of the set")
    if not (is_r_invariant(Q, xs) and is_r_invariant(Q, ys)):
        raise QuadraticSetError("parts must be r-invariant")
    return xs, ys


def split_maps(Q: QuadraticSet, X_part: Iterable[int], Y_part: Iterable[int]) -> Tuple[QuadraticSet, QuadraticSet]:
    """The X- and Y-split maps f and g of r, as pair tables on the same set.

    f(α, x) = (ᵅx, α), f(x, α) = (α, x^α), f = r on X×X and the flip on Y×Y;
    g(x, α) = (ˣα, x), g(α, x) = (x, α^x), g is the flip on X×X and r on Y×Y.
    """
    xs, ys = _check_cover(Q, X_part, Y_part)
    L, R = Q.left, Q.right
    n = Q.n
    in_x = np.zeros(n, dtype=bool)
    in_x[xs] = True
    first = np.repeat(np.arange(n)[:, None], n, axis=1)  # u
    second = first.T  # v
    ux, vx = in_x[first], in_x[second]

    f_left = np.where(ux & vx, L, second)
    f_right = np.where(ux & vx, R, first)
    f_left = np.where(~ux & vx, L, f_left)  # f(α, x) = (ᵅx, α)
    f_right = np.where(~ux & vx, first, f_right)
    f_left = np.where(ux & ~vx, second, f_left)  # f(x, α) = (α, x^α)
    f_right = np.where(ux & ~vx, R, f_right)

    g_left = np.where(~ux & ~vx, L, second)
    g_right = np.where(~ux & ~vx, R, first)
    g_left = np.where(ux & ~vx, L, g_left)  # g(x, α) = (ˣα, x)
    g_right = np.where(ux & ~vx, first, g_right)
    g_left = np.where(~ux & vx, second, g_left)  # g(α, x) = (x, α^x)
    g_right = np.where(~ux & vx, R, g_right)

    f = QuadraticSet(f_left, f_right, Q.labels)
    g = QuadraticSet(g_left, g_right, Q.labels)
    return f, g


def _is_involutive(P: QuadraticSet) -> bool:
    idx = np.arange(P.n)
    L, R = P.left, P.right
    return bool(((L[L, R] == idx[:, None]) & (R[L, R] == idx[None, :])).all())


def check_split_identity(Q: QuadraticSet, X_part: Iterable[int], Y_part: Iterable[int]) -> SplitReport:
    xs, ys = _check_cover(Q, X_part, Y_part)
    f, g = split_maps(Q, xs, ys)
    # f∘τ∘g evaluated on every pair
    gl, gr = g.left, g.right
    composed_left = f.left[gr, gl]
    composed_right = f.right[gr, gl]
    factorization = bool(np.array_equal(composed_left, Q.left) and np.array_equal(composed_right, Q.right))

    L, R = Q.left, Q.right
    # ^{α^y}x = ᵅx for x, y ∈ X, α ∈ Y
    alpha_y = R[np.ix_(ys, xs)]
    f_stu = bool((L[alpha_y[:, :, None], xs[None, None, :]] == L[np.ix_(ys, xs)][:, None, :]).all())
    # ^{x^β}α = ˣα for x ∈ X, α, β ∈ Y
    x_beta = R[np.ix_(xs, ys)]
    g_stu = bool((L[x_beta[:, :, None], ys[None, None, :]] == L[np.ix_(xs, ys)][:, None, :]).all())

    return SplitReport(
        f_involutive=_is_involutive(f),
        g_involutive=_is_involutive(g),
        factorization_holds=factorization,
        f_is_solution=classify(f).square_free_solution,
        g_is_solution=classify(g).square_free_solution,
        f_stu_condition=f_stu,
        g_stu_condition=g_stu,
    )


# Strong twisted union laws


def check_stu_laws(Q: QuadraticSet, part_a: Iterable[int], part_b: Iterable[int]) -> Verdict:
    """Evaluate the stu laws with x, y in part_a and α, β in part_b.

    Laws, in order: ^{α^y}x = ᵅx, α^{ᵝx} = α^x, ^{ʸα}x = ᵅx, α^{x^β} = α^x.
    The witness lists the quantified elements in that reading order.
    """
    A, B = _subset(Q, part_a), _subset(Q, part_b)
    L, R = Q.left, Q.right
    LBA = L[np.ix_(B, A)]  # ᵅx
    RBA = R[np.ix_(B, A)]  # α^x

    # [α, y, x]
    lhs = L[RBA[:, :, None], A[None, None, :]]
    hit = _first_hit(lhs != LBA[:, None, :])
    if hit is not None:
        return Verdict(False, (int(B[hit[0]]), int(A[hit[1]]), int(A[hit[2]])), "stu-left")
    # [α, β, x]
    lhs = R[B[:, None, None], LBA[None, :, :]]
    hit = _first_hit(lhs != RBA[:, None, :])
    if hit is not None:
        return Verdict(False, (int(B[hit[0]]), int(B[hit[1]]), int(A[hit[2]])), "stu-right")
    # [α, y, x] with ʸα
    LAB = L[np.ix_(A, B)]  # ʸα indexed [y, α]
    lhs = L[LAB.T[:, :, None], A[None, None, :]]
    hit = _first_hit(lhs != LBA[:, None, :])
    if hit is not None:
        return Verdict(False, (int(B[hit[0]]), int(A[hit[1]]), int(A[hit[2]])), "stu1-left")
    # [α, β, x] with x^β
    RAB = R[np.ix_(A, B)]  # x^β indexed [x, β]
    lhs = R[B[:, None, None], RAB.T[None, :, :]]
    hit = _first_hit(lhs != RBA[:, None, :])
    if hit is not None:
        return Verdict(False, (int(B[hit[0]]), int(B[hit[1]]), int(A[hit[2]])), "stu1-right")
    return Verdict(True)


def restricted_automorphism_criterion(Q: QuadraticSet, parts: Sequence[Iterable[int]]) -> Verdict:
    """(ℒ_x)|X_j ∈ Aut(X_j, r_j) for every x in X_i and every pair of distinct parts.

    Parts must be r-invariant. The witness is (x, β, γ) where ℒ_x|X_j breaks
    the automorphism law at the pair (β, γ) of X_j.
    """
    members = [_subset(Q, part) for part in parts]
    for j, Xj in enumerate(members):
        local = np.full(Q.n, -1, dtype=np.intp)
        local[Xj] = np.arange(Xj.size)
        block = np.ix_(Xj, Xj)
        Lj, Rj = local[Q.left[block]], local[Q.right[block]]
        for i, Xi in enumerate(members):
            if i == j:
                continue
            restricted = local[Q.left[np.ix_(Xi, Xj)]]
            if (restricted < 0).any():
                raise QuadraticSetError(f"part {j} is not invariant under the action of part {i}")
            for x, sigma in zip(Xi, restricted):
                grid = np.ix_(sigma, sigma)
                fail = (sigma[Lj] != Lj[grid]) | (sigma[Rj] != Rj[grid])
                hit = _first_hit(fail)
                if hit is not None:
                    return Verdict(False, (int(x), int(Xj[hit[0]]), int(Xj[hit[1]])), "restricted-automorphism")
    return Verdict(True)
