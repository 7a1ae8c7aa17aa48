"""Abelianization: relation matrices, Smith normal form, H1 obstructions.

Entries are Python ints throughout; intermediate growth in the Smith
reduction is the usual way fixed-width implementations go wrong.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod

from .errors import MalformedInputError
from .words import Presentation


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0 or len(self.entries) != self.rows * self.cols:
            raise MalformedInputError(
                f"{len(self.entries)} entries for a {self.rows}x{self.cols} matrix"
            )
        object.__setattr__(self, "entries", tuple(int(x) for x in self.entries))

    @classmethod
    def from_rows(cls, rows: list[list[int]], cols: int | None = None) -> IntMatrix:
        if cols is None:
            cols = len(rows[0]) if rows else 0
        flat = [x for r in rows for x in r]
        return cls(len(rows), cols, tuple(flat))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def tolist(self) -> list[list[int]]:
        c = self.cols
        return [list(self.entries[i * c : (i + 1) * c]) for i in range(self.rows)]


@dataclass(frozen=True)
class InvariantFactors:
    """Canonical abelian invariants ``d1 | d2 | ...``; ``0`` stands for a copy of Z.

    Units are dropped, torsion factors come first in increasing order and
    zeros trail, so two equal groups always compare equal.
    """

    factors: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        fs = [abs(int(f)) for f in self.factors]
        torsion = sorted(f for f in fs if f > 1)
        zeros = [0] * fs.count(0)
        for a, b in zip(torsion, torsion[1:]):
            if b % a:
                raise MalformedInputError(f"factors {tuple(torsion)} do not form a divisor chain")
        object.__setattr__(self, "factors", tuple(torsion + zeros))

    @property
    def rank(self) -> int:
        return self.factors.count(0)

    @property
    def torsion(self) -> tuple[int, ...]:
        return tuple(f for f in self.factors if f)

    @property
    def is_finite(self) -> bool:
        return self.rank == 0

    @property
    def order(self) -> int | None:
        """Group order, or ``None`` for an infinite group."""
        return prod(self.torsion) if self.is_finite else None

    def to_json(self) -> list[int]:
        return list(self.factors)

    def __str__(self) -> str:
        if not self.factors:
            return "0"
        return " + ".join("Z" if f == 0 else f"Z/{f}" for f in self.factors)


def relation_matrix(p: Presentation) -> IntMatrix:
    """Exponent-sum matrix: one row per relator, one column per generator."""
    rows = [[r.exponent_sum(g) for g in range(p.ngens)] for r in p.relators]
    return IntMatrix.from_rows(rows, cols=p.ngens)


def _snf_diagonal(a: list[list[int]], nrows: int, ncols: int) -> list[int]:
    """Diagonalize in place; return the diagonal entries, divisor chain enforced."""
    diag: list[int] = []
    t = 0
    while t < min(nrows, ncols):
        # smallest nonzero |entry| in the remaining block, lowest (row, col) on ties
        best = None
        for i in range(t, nrows):
            row = a[i]
            for j in range(t, ncols):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
        if best is None:
            break
        _, pi, pj = best
        a[t], a[pi] = a[pi], a[t]
        if pj != t:
            for row in a:
                row[t], row[pj] = row[pj], row[t]
        while True:
            piv = a[t][t]
            changed = False
            for i in range(t + 1, nrows):
                q = a[i][t] // piv
                if q:
                    ri, rt = a[i], a[t]
                    for j in range(t, ncols):
                        ri[j] -= q * rt[j]
            for j in range(t + 1, ncols):
                q = a[t][j] // piv
                if q:
                    for i in range(t, nrows):
                        a[i][j] -= q * a[i][t]
            # any remainder left in the pivot row/column is smaller than the pivot
            rem = None
            for i in range(t + 1, nrows):
                if a[i][t] and (rem is None or abs(a[i][t]) < rem[0]):
                    rem = (abs(a[i][t]), i, t)
            for j in range(t + 1, ncols):
                if a[t][j] and (rem is None or abs(a[t][j]) < rem[0]):
                    rem = (abs(a[t][j]), t, j)
            if rem is not None:
                _, ri, rj = rem
                if ri != t:
                    a[t], a[ri] = a[ri], a[t]
                else:
                    for row in a:
                        row[t], row[rj] = row[rj], row[t]
                changed = True
            if not changed:
                # the pivot must divide the rest of the block
                bad = None
                for i in range(t + 1, nrows):
                    for j in range(t + 1, ncols):
                        if a[i][j] % piv:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                for j in range(t, ncols):
                    a[t][j] += a[bad][j]
        diag.append(abs(a[t][t]))
        t += 1
    return diag


def smith_normal_form(m: IntMatrix) -> InvariantFactors:
    """Invariant factors of the cokernel of the row space of ``m``.

    Columns index generators; a matrix with ``c`` columns and rank ``r``
    contributes ``c - r`` zeros (free factors).
    """
    a = m.tolist()
    diag = _snf_diagonal(a, m.rows, m.cols)
    zeros = m.cols - len(diag)
    return InvariantFactors(tuple(d for d in diag if d != 1) + (0,) * zeros)


def h1_invariants(p: Presentation) -> InvariantFactors:
    return smith_normal_form(relation_matrix(p))


def surjects_onto_z2(f: InvariantFactors) -> bool:
    """Whether the abelian group admits a surjection onto Z/2."""
    return any(d == 0 or d % 2 == 0 for d in f.factors)


def is_finite_odd(f: InvariantFactors) -> bool:
    return all(d != 0 and d % 2 == 1 for d in f.factors)
