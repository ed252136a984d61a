"""
Exhaustive enumeration of small square-free solutions.

Solutions are determined by their left action, so the search assigns one
permutation ℒ_x with ℒ_x(x) = x per element, in index order, trying candidates
in lexicographic image order. A partial assignment is pruned as soon as a
decidable instance of ℒ_{ʸx}ℒ_y = ℒ_{ˣy}ℒ_x or of ^{(y^x)}x = ʸx fails.
Complete assignments are confirmed by the full axiom scan.

The search is split into shards by the first two rows; shards run on a process
pool when more than one worker is configured and are merged in shard order,
so the stream does not depend on the worker count.
"""

import itertools
import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from ybsolve.config import settings
from ybsolve.exceptions import BoundExceededError, ConsistencyError, QuadraticSetError
from ybsolve.group import is_abelian, yb_group
from ybsolve.logging_config import get_logger
from ybsolve.perm import Permutation
from ybsolve.qset import QuadraticSet, from_left_action, is_square_free_solution, iter_isomorphisms, refine_colors
from ybsolve.retract import mpl

logger = get_logger(__name__)

Rows = Tuple[Tuple[int, ...], ...]

SHARD_DEPTH = 2


def _check_enum_size(n: int, allow_large: bool) -> None:
    if n < 1:
        raise QuadraticSetError("enumeration needs n ≥ 1")
    if n > settings.enum_hard_max_n:
        raise BoundExceededError(
            f"enumeration of order {n} is beyond the hard cap {settings.enum_hard_max_n}",
            "enum_hard_max_n",
        )
    if n > settings.enum_max_n and not allow_large:
        raise BoundExceededError(
            f"enumeration of order {n} is above the default cap {settings.enum_max_n}; pass allow_large",
            "enum_max_n",
        )


@lru_cache(maxsize=None)
def _candidates(n: int, x: int) -> Tuple[Tuple[int, ...], ...]:
    return tuple(p for p in itertools.permutations(range(n)) if p[x] == x)


def _consistent(rows: List[Tuple[int, ...]], k: int) -> bool:
    """Check every constraint that became decidable when row k was placed."""
    assigned = k + 1
    n = len(rows[0])
    for x in range(assigned):
        Lx = rows[x]
        for y in range(assigned):
            Ly = rows[y]
            # ^{(y^x)}x = ʸx with y^x = ℒ_x⁻¹(y)
            u = Lx.index(y)
            if u < assigned and k in (x, y, u) and rows[u][x] != Ly[x]:
                return False
            if y <= x:
                continue
            a, b = Ly[x], Lx[y]
            if a < assigned and b < assigned and k in (x, y, a, b):
                La, Lb = rows[a], rows[b]
                if any(La[Ly[z]] != Lb[Lx[z]] for z in range(n)):
                    return False
    return True


def _extend(n: int, rows: List[Tuple[int, ...]], depth: int, out: List[Rows]) -> None:
    k = len(rows)
    if k == depth:
        out.append(tuple(rows))
        return
    for candidate in _candidates(n, k):
        rows.append(candidate)
        if _consistent(rows, k):
            _extend(n, rows, depth, out)
        rows.pop()


def _search_shard(job: Tuple[int, Rows]) -> List[Rows]:
    n, prefix = job
    out: List[Rows] = []
    _extend(n, list(prefix), n, out)
    return out


def _shards(n: int) -> List[Rows]:
    prefixes: List[Rows] = []
    _extend(n, [], min(SHARD_DEPTH, n), prefixes)
    return prefixes


def _iter_rows(n: int, workers: int) -> Iterator[Rows]:
    jobs = [(n, prefix) for prefix in _shards(n)]
    logger.debug("enumerating order %d over %d shards with %d worker(s)", n, len(jobs), workers)
    if workers <= 1:
        for job in jobs:
            yield from _search_shard(job)
        return
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for found in pool.map(_search_shard, jobs):
            yield from found


def enumerate_fixing_quadratic_sets(n: int) -> Iterator[QuadraticSet]:
    """Every quadratic set with fixing left rows and ℛ_x = ℒ_x⁻¹, in lexicographic row order."""
    _check_enum_size(n, allow_large=False)
    for rows in itertools.product(*(_candidates(n, x) for x in range(n))):
        yield from_left_action(rows)


def enumerate_square_free(
    n: int,
    up_to_iso: bool = False,
    workers: Optional[int] = None,
    allow_large: bool = False,
) -> Iterator[QuadraticSet]:
    """All square-free solutions on n points.

    With up_to_iso only the canonical form of each isomorphism class is
    emitted, in order of first discovery.
    """
    _check_enum_size(n, allow_large)
    workers = settings.workers if workers is None else workers
    seen = set()
    for rows in _iter_rows(n, workers):
        Q = from_left_action(rows)
        if not is_square_free_solution(Q):
            continue
        if up_to_iso:
            canonical = canonical_form(Q)
            key = _table_key(canonical)
            if key in seen:
                continue
            seen.add(key)
            yield canonical
        else:
            yield Q


# Isomorphism and canonical forms


def is_isomorphic(Q1: QuadraticSet, Q2: QuadraticSet) -> Optional[Permutation]:
    """A bijection φ with (φ×φ)∘r₁ = r₂∘(φ×φ), or None."""
    if Q1.n != Q2.n:
        return None
    if Q1.n > settings.iso_max_n:
        raise BoundExceededError(
            f"isomorphism test on {Q1.n} elements exceeds the bound {settings.iso_max_n}",
            "iso_max_n",
        )
    return next(iter_isomorphisms(Q1, Q2), None)


def _table_key(Q: QuadraticSet) -> bytes:
    return Q.left.astype(np.int64).tobytes() + Q.right.astype(np.int64).tobytes()


def _class_orderings(colors: np.ndarray) -> Tuple[List[List[int]], int]:
    classes: Dict[int, List[int]] = {}
    for x, c in enumerate(colors.tolist()):
        classes.setdefault(c, []).append(x)
    ordered = [classes[c] for c in sorted(classes)]
    return ordered, math.prod(math.factorial(len(c)) for c in ordered)


def _relabelings(classes: List[List[int]], chunk: int) -> Iterator[np.ndarray]:
    """Chunks of arrays ψ (new position → old element) respecting the colour order."""
    per_class = [list(itertools.permutations(c)) for c in classes]
    buffer = []
    for combo in itertools.product(*per_class):
        buffer.append([x for part in combo for x in part])
        if len(buffer) == chunk:
            yield np.array(buffer, dtype=np.intp)
            buffer = []
    if buffer:
        yield np.array(buffer, dtype=np.intp)


def canonical_form(Q: QuadraticSet) -> QuadraticSet:
    """The lexicographically least (left, right) tables over colour-respecting relabelings."""
    n = Q.n
    if n > settings.canon_max_n:
        raise BoundExceededError(
            f"canonical form on {n} elements exceeds the bound {settings.canon_max_n}",
            "canon_max_n",
        )
    (colors,) = refine_colors([Q])
    classes, total = _class_orderings(colors)
    if total > settings.canon_max_candidates:
        raise BoundExceededError(
            f"canonical form needs {total} candidate relabelings",
            "canon_max_candidates",
        )

    best: Optional[np.ndarray] = None
    for psi in _relabelings(classes, chunk=4096):
        phi = np.argsort(psi, axis=1)
        rows, cols = psi[:, :, None], psi[:, None, :]
        left = np.take_along_axis(phi, Q.left[rows, cols].reshape(len(psi), -1), axis=1)
        right = np.take_along_axis(phi, Q.right[rows, cols].reshape(len(psi), -1), axis=1)
        keys = np.hstack([left, right])
        least = keys[np.lexsort(keys.T[::-1])[0]]
        if best is None or tuple(least) < tuple(best):
            best = least
    assert best is not None
    left, right = best[: n * n].reshape(n, n), best[n * n:].reshape(n, n)
    return QuadraticSet(left, right, (), Q.lri_derived)


def canonical_key(Q: QuadraticSet) -> bytes:
    return _table_key(canonical_form(Q))


# Scans


def min_order_scan(
    target_mpl: int,
    max_n: int,
    workers: Optional[int] = None,
    allow_large: bool = False,
) -> Optional[int]:
    """Least n ≤ max_n carrying a square-free solution of the given level."""
    if target_mpl < 0:
        raise QuadraticSetError("multipermutation level is non-negative")
    _check_enum_size(max_n, allow_large)
    for n in range(1, max_n + 1):
        for Q in enumerate_square_free(n, workers=workers, allow_large=allow_large):
            if mpl(Q) == target_mpl:
                logger.info("first solution of mpl %d found at order %d", target_mpl, n)
                return n
    return None


@dataclass
class CensusRow:
    n: int
    count: int = 0
    by_mpl: Dict[str, int] = field(default_factory=dict)
    by_group_order: Dict[int, int] = field(default_factory=dict)
    abelian: int = 0
    irretractable: int = 0
    max_mpl: int = 0
    mpl_at_least_log2: int = 0

    def to_dict(self) -> Dict:
        return asdict(self)


def _census_row(n: int, solutions: Sequence[QuadraticSet]) -> CensusRow:
    by_mpl: Counter = Counter()
    by_order: Counter = Counter()
    row = CensusRow(n)
    for Q in solutions:
        row.count += 1
        level = mpl(Q)
        group = yb_group(Q)
        by_order[group.order] += 1
        if is_abelian(group):
            row.abelian += 1
        if level is None:
            row.irretractable += 1
            by_mpl["irretractable"] += 1
            logger.error("irretractable square-free solution of order %d: left rows %s", n, Q.left.tolist())
            continue
        by_mpl[str(level)] += 1
        row.max_mpl = max(row.max_mpl, level)
        if n > 1 and level >= math.log2(n):
            row.mpl_at_least_log2 += 1
    row.by_mpl = dict(sorted(by_mpl.items()))
    row.by_group_order = dict(sorted(by_order.items()))
    return row


def census(
    max_n: int,
    up_to_iso: bool = True,
    workers: Optional[int] = None,
    allow_large: bool = False,
) -> List[CensusRow]:
    """Per-order statistics of square-free solutions for 2 ≤ n ≤ max_n."""
    _check_enum_size(max_n, allow_large)
    rows = []
    for n in range(2, max_n + 1):
        solutions = list(enumerate_square_free(n, up_to_iso=up_to_iso, workers=workers, allow_large=allow_large))
        row = _census_row(n, solutions)
        if row.irretractable:
            logger.error("order %d has %d irretractable square-free solutions", n, row.irretractable)
        rows.append(row)
    return rows


CENSUS_COLUMNS = ("n", "count", "by_mpl", "by_group_order", "abelian", "irretractable", "max_mpl", "mpl_at_least_log2")


def census_to_tsv(rows: Sequence[CensusRow]) -> str:
    lines = ["\t".join(CENSUS_COLUMNS)]
    for row in rows:
        cells = [
            str(row.n),
            str(row.count),
            ",".join(f"{k}:{v}" for k, v in row.by_mpl.items()) or "-",
            ",".join(f"{k}:{v}" for k, v in row.by_group_order.items()) or "-",
            str(row.abelian),
            str(row.irretractable),
            str(row.max_mpl),
            str(row.mpl_at_least_log2),
        ]
        lines.append("\t".join(cells))
    return "\n".join(lines) + "\n"


def verify_enumeration(n: int) -> None:
    """Compare the pruned search with the direct braid filter over all fixing quadratic sets."""
    pruned = [_table_key(Q) for Q in enumerate_square_free(n, workers=1)]
    direct = [_table_key(Q) for Q in enumerate_fixing_quadratic_sets(n) if is_square_free_solution(Q)]
    if pruned != direct:
        raise ConsistencyError(f"pruned enumeration of order {n} disagrees with the direct filter")
