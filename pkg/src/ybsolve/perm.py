"""
Permutations of {0..n-1}.

Points are 0-based internally. Cycle notation on the outside is 1-based and
uses the labels x1..xn unless a label list is supplied.
"""

import math
import re
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
from sympy.combinatorics import Permutation as SympyPermutation

from ybsolve.exceptions import PermutationError

CYCLE_RE = re.compile(r"\(([^()]*)\)")
DIGITS_RE = re.compile(r"[0-9]+")


@dataclass(frozen=True)
class Permutation:
    """A bijection of {0..degree-1}; images[i] is the image of point i."""

    images: Tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(i) for i in self.images)
        object.__setattr__(self, "images", images)
        n = len(images)
        if sorted(images) != list(range(n)):
            raise PermutationError(f"images {images} are not a bijection of 0..{n - 1}")

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        if degree < 0:
            raise PermutationError("degree must be non-negative")
        return cls(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, degree: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        """Build from disjoint 0-based cycles; overlapping cycles are rejected."""
        images = list(range(degree))
        seen = set()
        for cycle in cycles:
            for point in cycle:
                if not 0 <= point < degree:
                    raise PermutationError(f"point {point} outside 0..{degree - 1}")
                if point in seen:
                    raise PermutationError(f"point {point} repeated in cycle notation")
                seen.add(point)
            for i, point in enumerate(cycle):
                images[point] = cycle[(i + 1) % len(cycle)]
        return cls(tuple(images))

    @classmethod
    def from_array(cls, array: Sequence[int]) -> "Permutation":
        return cls(tuple(int(i) for i in array))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __len__(self) -> int:
        return len(self.images)

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __str__(self) -> str:
        return format_cycles(self)

    def compose(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def inverse(self) -> "Permutation":
        return inverse(self)

    def order(self) -> int:
        return order(self)

    def cycles(self) -> List[List[int]]:
        return cycles(self)

    def is_identity(self) -> bool:
        return all(i == p for i, p in enumerate(self.images))

    def support(self) -> List[int]:
        return [i for i, p in enumerate(self.images) if i != p]

    def to_array(self) -> np.ndarray:
        return np.asarray(self.images, dtype=np.int64)

    def to_sympy(self) -> SympyPermutation:
        return SympyPermutation(list(self.images), size=self.degree)


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Return p∘q, applying q first."""
    if p.degree != q.degree:
        raise PermutationError(f"degree mismatch: {p.degree} != {q.degree}")
    return Permutation(tuple(p.images[i] for i in q.images))


def inverse(p: Permutation) -> Permutation:
    images = [0] * p.degree
    for i, image in enumerate(p.images):
        images[image] = i
    return Permutation(tuple(images))


def cycles(p: Permutation) -> List[List[int]]:
    """Nontrivial cycles, each starting at its least point, sorted by that point."""
    seen = [False] * p.degree
    result = []
    for start in range(p.degree):
        if seen[start]:
            continue
        cycle = [start]
        seen[start] = True
        point = p.images[start]
        while point != start:
            cycle.append(point)
            seen[point] = True
            point = p.images[point]
        if len(cycle) > 1:
            result.append(cycle)
    return result


def order(p: Permutation) -> int:
    return math.lcm(*(len(c) for c in cycles(p))) if not p.is_identity() else 1


def cycle_type(p: Permutation) -> Tuple[int, ...]:
    """Sorted cycle lengths including fixed points."""
    lengths = [len(c) for c in cycles(p)]
    lengths.extend([1] * (p.degree - sum(lengths)))
    return tuple(sorted(lengths))


def shift(p: Permutation, offset: int, new_degree: int) -> Permutation:
    """Move every cycle of p up by offset inside a permutation of new_degree points."""
    images = list(range(new_degree))
    for i in p.support():
        if i + offset >= new_degree or p.images[i] + offset >= new_degree:
            raise PermutationError(
                f"shifted support overflows degree {new_degree} (point {i} + {offset})"
            )
        images[i + offset] = p.images[i] + offset
    return Permutation(tuple(images))


def vee(rho: Permutation, sigma: Permutation) -> Permutation:
    """Interleave two disjoint cycles of equal length into one cycle of twice the length.

    With rho = (a1 a2 ... ak) read from its least point and sigma = (b1 ... bk)
    likewise, the result is (a1 b1 a2 b2 ... ak bk), so that its square is rho∘sigma.
    """
    if rho.degree != sigma.degree:
        raise PermutationError("vee needs permutations of equal degree")
    rho_cycles, sigma_cycles = cycles(rho), cycles(sigma)
    if len(rho_cycles) != 1 or len(sigma_cycles) != 1:
        raise PermutationError("vee needs two single cycles")
    a, b = rho_cycles[0], sigma_cycles[0]
    if len(a) != len(b):
        raise PermutationError(f"vee needs cycles of equal length, got {len(a)} and {len(b)}")
    if set(a) & set(b):
        raise PermutationError("vee needs cycles with disjoint supports")
    interleaved = [point for pair in zip(a, b) for point in pair]
    return Permutation.from_cycles(rho.degree, [interleaved])


def default_labels(n: int) -> Tuple[str, ...]:
    return tuple(f"x{i + 1}" for i in range(n))


def parse_cycles(text: str, degree: int, labels: Optional[Sequence[str]] = None) -> Permutation:
    """Parse a product of disjoint cycles such as "(x1 x2)(x3 x4)".

    Points are given by label (x1..xn unless labels are supplied) or as 1-based
    integers. The empty string and "()" both denote the identity.
    """
    names = {name: i for i, name in enumerate(labels or default_labels(degree))}
    stripped = re.sub(r"\s+", " ", text).strip()
    position = 0
    parsed = []
    for match in CYCLE_RE.finditer(stripped):
        gap = stripped[position:match.start()].strip()
        if gap:
            raise PermutationError(f"malformed cycle notation near {gap!r} in {text!r}")
        position = match.end()
        body = match.group(1).replace(",", " ").split()
        if body:
            parsed.append([_parse_point(token, names, degree) for token in body])
    if stripped[position:].strip():
        raise PermutationError(f"malformed cycle notation near {stripped[position:]!r} in {text!r}")
    return Permutation.from_cycles(degree, parsed)


def _parse_point(token: str, names: dict, degree: int) -> int:
    if token in names:
        return names[token]
    if DIGITS_RE.fullmatch(token):
        point = int(token) - 1
        if 0 <= point < degree:
            return point
    raise PermutationError(f"unknown point {token!r}")


def format_cycles(p: Permutation, labels: Optional[Sequence[str]] = None) -> str:
    names = labels or default_labels(p.degree)
    parts = ["(" + " ".join(names[i] for i in cycle) + ")" for cycle in cycles(p)]
    return "".join(parts) or "()"
