"""Todd-Coxeter coset enumeration and the questions it answers.

Enumeration never proves a group infinite.  When the coset limit is hit the
table comes back with ``complete=False`` and downstream answers are
``None`` ("unknown").
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import _kernels
from .abelian import h1_invariants
from .errors import IncompleteTableError, MalformedInputError
from .words import GroupHom, Presentation, Word, apply_hom

DEFAULT_MAX_COSETS = 10**6


def _default_limit() -> int:
    env = os.environ.get("DDB_COSET_LIMIT")
    if env:
        try:
            value = int(env)
        except ValueError:
            raise MalformedInputError(f"DDB_COSET_LIMIT={env!r} is not an integer") from None
        if value > 0:
            return value
        raise MalformedInputError("DDB_COSET_LIMIT must be positive")
    return DEFAULT_MAX_COSETS


@dataclass(frozen=True)
class EnumLimit:
    max_cosets: int = 0

    def __post_init__(self) -> None:
        if self.max_cosets == 0:
            object.__setattr__(self, "max_cosets", _default_limit())
        if self.max_cosets <= 0:
            raise MalformedInputError("max_cosets must be positive")


@dataclass(frozen=True, eq=False)
class CosetTable:
    """Result of an enumeration.

    ``rows[c, 2g]`` is the coset reached from ``c`` by generator ``g`` and
    ``rows[c, 2g+1]`` by its inverse.  Row 0 is the subgroup itself.  For
    an incomplete table ``rows`` is empty.
    """

    presentation: Presentation
    subgroup_gens: tuple[Word, ...]
    rows: np.ndarray
    complete: bool
    cosets_defined: int = 0

    @property
    def index(self) -> int | None:
        return int(self.rows.shape[0]) if self.complete else None

    def action(self, gen: int) -> np.ndarray:
        return self.rows[:, 2 * gen]

    def trace(self, w: Word, start: int = 0) -> int:
        if not self.complete:
            raise IncompleteTableError("cannot trace words in an incomplete table")
        cols = np.asarray(w.columns(), dtype=np.int64)
        return int(_kernels.trace_word(self.rows, start, cols))

    def to_json(self) -> dict:
        return {
            "presentation": self.presentation.format(),
            "subgroup": [w.format(self.presentation.generators) for w in self.subgroup_gens],
            "complete": self.complete,
            "index": self.index,
            "cosets_defined": self.cosets_defined,
            "rows": self.rows.tolist(),
        }


def _flatten(words: Sequence[Word]) -> tuple[np.ndarray, np.ndarray]:
    cols: list[int] = []
    offs = [0]
    for w in words:
        cols.extend(w.columns())
        offs.append(len(cols))
    return np.asarray(cols, dtype=np.int64), np.asarray(offs, dtype=np.int64)


def todd_coxeter(
    p: Presentation,
    subgroup_gens: Sequence[Word] = (),
    limit: EnumLimit | None = None,
) -> CosetTable:
    """Enumerate the cosets of the subgroup generated by ``subgroup_gens``."""
    limit = limit or EnumLimit()
    subs = tuple(subgroup_gens)
    for w in subs:
        for g, _ in w.syllables:
            if not 0 <= g < p.ngens:
                raise MalformedInputError(f"subgroup word uses generator index {g}")
    rels, rel_off = _flatten(p.relators)
    sub, sub_off = _flatten(subs)
    init_cap = min(limit.max_cosets + 1, 1024)
    table, parent, n, status = _kernels.hlt_enumerate(
        2 * p.ngens, rels, rel_off, sub, sub_off, limit.max_cosets, init_cap
    )
    if status != _kernels.STATUS_OK:
        empty = np.zeros((0, 2 * p.ngens), dtype=np.int64)
        return CosetTable(p, subs, empty, False, int(n))
    rows = _kernels.compact_table(table, parent, n)
    return CosetTable(p, subs, rows, True, int(n))


def group_order(p: Presentation, limit: EnumLimit | None = None) -> int | None:
    """Order of the group, or ``None`` if it could not be determined.

    An infinite abelianization already rules out a finite group, so the
    enumeration is skipped in that case.
    """
    if not h1_invariants(p).is_finite:
        return None
    return todd_coxeter(p, (), limit).index


def words_equal(
    p: Presentation, u: Word, v: Word, limit: EnumLimit | None = None
) -> bool | None:
    table = _regular_table(p, limit)
    if table is None:
        return None
    return table.trace(u * v.inverse()) == 0


def _regular_table(p: Presentation, limit: EnumLimit | None) -> CosetTable | None:
    if not h1_invariants(p).is_finite:
        return None
    table = todd_coxeter(p, (), limit)
    return table if table.complete else None


def is_identity(p: Presentation, w: Word, limit: EnumLimit | None = None) -> bool | None:
    return words_equal(p, w, Word(), limit)


def hom_is_well_defined(h: GroupHom, limit: EnumLimit | None = None) -> bool | None:
    """Check every source relator maps to the identity of the (finite) target."""
    table = _regular_table(h.target, limit)
    if table is None:
        return None
    return all(table.trace(apply_hom(h, r)) == 0 for r in h.source.relators)


def image_index(h: GroupHom, limit: EnumLimit | None = None) -> int | None:
    """Index of the image subgroup in the target; 1 means surjective."""
    return todd_coxeter(h.target, h.images, limit).index


def perm_rep(t: CosetTable):
    """Permutation action of the generators on the cosets of ``t``."""
    from .perm import PermGroup

    if not t.complete:
        raise IncompleteTableError("perm_rep needs a complete coset table")
    gens = [tuple(int(x) for x in t.action(g)) for g in range(t.presentation.ngens)]
    return PermGroup(int(t.rows.shape[0]), tuple(gens))
