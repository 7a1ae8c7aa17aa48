"""Exact quaternions with coordinates in a real quadratic field Q(sqrt d)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import DiscriminantMismatch, ElementCapExceeded, MalformedInputError


def _squarefree(d: int) -> bool:
    if d < 1:
        return False
    k = 2
    while k * k <= d:
        if d % (k * k) == 0:
            return False
        k += 1
    return True


@dataclass(frozen=True)
class QuadExt:
    """``rational + surd * sqrt(d)`` with exact rational parts."""

    rational: Fraction
    surd: Fraction = Fraction(0)
    d: int = 1

    def __post_init__(self) -> None:
        if not _squarefree(self.d):
            raise MalformedInputError(f"discriminant {self.d} is not a squarefree positive integer")
        r, s = Fraction(self.rational), Fraction(self.surd)
        if self.d == 1:
            r, s = r + s, Fraction(0)
        object.__setattr__(self, "rational", r)
        object.__setattr__(self, "surd", s)

    def _check(self, other: QuadExt) -> None:
        if self.d != other.d and self.surd and other.surd:
            raise DiscriminantMismatch(f"Q(sqrt {self.d}) vs Q(sqrt {other.d})")

    def _common_d(self, other: QuadExt) -> int:
        self._check(other)
        return self.d if self.surd or other.d == 1 else other.d

    def __add__(self, other: QuadExt) -> QuadExt:
        return QuadExt(self.rational + other.rational, self.surd + other.surd, self._common_d(other))

    def __neg__(self) -> QuadExt:
        return QuadExt(-self.rational, -self.surd, self.d)

    def __sub__(self, other: QuadExt) -> QuadExt:
        return self + (-other)

    def __mul__(self, other: QuadExt) -> QuadExt:
        d = self._common_d(other)
        a, b, c, e = self.rational, self.surd, other.rational, other.surd
        return QuadExt(a * c + b * e * d, a * e + b * c, d)

    def __bool__(self) -> bool:
        return bool(self.rational or self.surd)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QuadExt):
            return NotImplemented
        if self.surd or other.surd:
            return (self.rational, self.surd, self.d) == (other.rational, other.surd, other.d)
        return self.rational == other.rational

    def __hash__(self) -> int:
        return hash((self.rational, self.surd, self.d if self.surd else 1))

    def __str__(self) -> str:
        if not self.surd:
            return str(self.rational)
        return f"{self.rational}+{self.surd}*sqrt({self.d})"


def qe(rational=0, surd=0, d: int = 1) -> QuadExt:
    return QuadExt(Fraction(rational), Fraction(surd), d)


ZERO = qe(0)
ONE = qe(1)


@dataclass(frozen=True)
class Quaternion:
    w: QuadExt
    x: QuadExt
    y: QuadExt
    z: QuadExt

    @classmethod
    def of(cls, w=0, x=0, y=0, z=0, d: int = 1) -> Quaternion:
        """Rational components; use :class:`QuadExt` values for surds."""
        comps = [c if isinstance(c, QuadExt) else qe(c, 0, d) for c in (w, x, y, z)]
        return cls(*comps)

    @property
    def discriminant(self) -> int:
        ds = {c.d for c in (self.w, self.x, self.y, self.z) if c.surd}
        if len(ds) > 1:
            raise DiscriminantMismatch(f"mixed discriminants {sorted(ds)}")
        return ds.pop() if ds else 1

    def norm(self) -> QuadExt:
        return self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z

    def conjugate(self) -> Quaternion:
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    def __mul__(self, other: Quaternion) -> Quaternion:
        return quat_mul(self, other)

    def __neg__(self) -> Quaternion:
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def inverse(self) -> Quaternion:
        """Inverse of a unit quaternion (its conjugate)."""
        if self.norm() != ONE:
            raise MalformedInputError("inverse is only provided for unit quaternions")
        return self.conjugate()

    def __str__(self) -> str:
        return f"({self.w}, {self.x}, {self.y}, {self.z})"


def quat_mul(p: Quaternion, q: Quaternion) -> Quaternion:
    """Hamilton product in exact arithmetic."""
    if p.discriminant != 1 and q.discriminant != 1 and p.discriminant != q.discriminant:
        raise DiscriminantMismatch(f"Q(sqrt {p.discriminant}) vs Q(sqrt {q.discriminant})")
    a1, b1, c1, d1 = p.w, p.x, p.y, p.z
    a2, b2, c2, d2 = q.w, q.x, q.y, q.z
    return Quaternion(
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    )


def quaternion_closure(gens: Iterable[Quaternion], cap: int = 10_000) -> list[Quaternion]:
    """All products of ``gens``, deduplicated by exact equality.

    Raises :class:`ElementCapExceeded` when more than ``cap`` elements
    appear, which means the generators do not span a small finite group.
    """
    gens = list(gens)
    ds = {g.discriminant for g in gens} - {1}
    if len(ds) > 1:
        raise DiscriminantMismatch(f"mixed discriminants {sorted(ds)}")
    for g in gens:
        if g.norm() != ONE:
            raise MalformedInputError(f"generator {g} is not a unit quaternion")
    one = Quaternion.of(1)
    seen = {one: None}
    frontier = [one]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = quat_mul(x, g)
                if y not in seen:
                    seen[y] = None
                    if len(seen) > cap:
                        raise ElementCapExceeded(f"closure exceeded {cap} elements")
                    nxt.append(y)
        frontier = nxt
    return list(seen)


I = Quaternion.of(0, 1)
J = Quaternion.of(0, 0, 1)
K = Quaternion.of(0, 0, 0, 1)
# (-1 + i + j + k)/2, a Hurwitz unit of order 3
OMEGA = Quaternion.of(Fraction(-1, 2), Fraction(1, 2), Fraction(1, 2), Fraction(1, 2))
# (1 + i)/sqrt 2, order 8
OCT = Quaternion(qe(0, Fraction(1, 2), 2), qe(0, Fraction(1, 2), 2), qe(0, 0, 2), qe(0, 0, 2))
# (phi + phi^-1 i + j)/2 with phi = (1 + sqrt 5)/2, order 10
ICO = Quaternion(
    qe(Fraction(1, 4), Fraction(1, 4), 5),
    qe(Fraction(-1, 4), Fraction(1, 4), 5),
    qe(Fraction(1, 2), 0, 5),
    qe(0, 0, 5),
)


def root_of_unity(n: int) -> Quaternion:
    """``exp(pi i / n)`` as a quaternion; available for n in {1, 2, 3, 4, 6}."""
    half = Fraction(1, 2)
    table = {
        1: Quaternion.of(-1),
        2: I,
        3: Quaternion.of(half, QuadExt(Fraction(0), half, 3)),
        4: Quaternion(qe(0, half, 2), qe(0, half, 2), qe(0, 0, 2), qe(0, 0, 2)),
        6: Quaternion(qe(0, half, 3), qe(half, 0, 3), qe(0, 0, 3), qe(0, 0, 3)),
    }
    if n not in table:
        raise MalformedInputError(f"exp(pi i/{n}) has no coordinates in a quadratic field here")
    return table[n]
