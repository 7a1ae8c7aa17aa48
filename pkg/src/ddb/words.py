"""Words in abstract generators, finite presentations and homomorphisms.

A word is stored as runs ``(generator index, exponent)`` so that relators
such as ``a^(2*beta)`` stay compact for large exponents.  Generator names
only live on :class:`Presentation`; maps between presentations always go
through :class:`GroupHom` images.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import InvalidEliminationError, MalformedInputError

IDENT_RE = re.compile(r"[a-zA-Z][a-zA-Z0-9_]*\Z")

Syllable = tuple[int, int]


def _reduce_syllables(syllables: Iterable[Syllable]) -> tuple[Syllable, ...]:
    stack: list[Syllable] = []
    for gen, exp in syllables:
        if exp == 0:
            continue
        if stack and stack[-1][0] == gen:
            total = stack[-1][1] + exp
            if total:
                stack[-1] = (gen, total)
            else:
                stack.pop()
        else:
            stack.append((gen, exp))
    return tuple(stack)


@dataclass(frozen=True)
class Word:
    """An element of the free group on generators ``0, 1, 2, ...``.

    The constructor keeps whatever syllables it is given; every operation
    returns freely reduced words.  Use :func:`free_reduce` (or
    :meth:`Word.of`) to canonicalize raw input.
    """

    syllables: tuple[Syllable, ...] = ()

    @classmethod
    def of(cls, *syllables: Syllable) -> Word:
        return cls(_reduce_syllables((int(g), int(e)) for g, e in syllables))

    @classmethod
    def gen(cls, index: int, exponent: int = 1) -> Word:
        return cls.of((index, exponent))

    @classmethod
    def from_letters(cls, letters: Iterable[int]) -> Word:
        """Build from signed letters: ``k+1`` is generator ``k``, ``-(k+1)`` its inverse."""
        return cls.of(*((abs(x) - 1, 1 if x > 0 else -1) for x in letters))

    def __mul__(self, other: Word) -> Word:
        return Word(_reduce_syllables(self.syllables + other.syllables))

    def inverse(self) -> Word:
        return Word(tuple((g, -e) for g, e in reversed(self.syllables)))

    def __pow__(self, n: int) -> Word:
        if n < 0:
            return self.inverse() ** (-n)
        base = free_reduce(self)
        if n == 0 or not base.syllables:
            return Word()
        core = cyclic_reduce(base)
        if len(core.syllables) == 1:
            # power of a conjugate of a single syllable stays compact
            g, e = core.syllables[0]
            k = (len(base.syllables) - 1) // 2
            head = Word(base.syllables[:k])
            return head * Word(((g, e * n),)) * head.inverse()
        out = Word()
        acc = base
        while n:
            if n & 1:
                out = out * acc
            acc = acc * acc
            n >>= 1
        return out

    def __len__(self) -> int:
        return sum(abs(e) for _, e in self.syllables)

    def __bool__(self) -> bool:
        return bool(self.syllables)

    @property
    def is_identity(self) -> bool:
        return not _reduce_syllables(self.syllables)

    def generators_used(self) -> frozenset[int]:
        return frozenset(g for g, _ in self.syllables)

    def exponent_sum(self, gen: int) -> int:
        return sum(e for g, e in self.syllables if g == gen)

    def letters(self) -> list[int]:
        """Signed letters, inverse of :meth:`from_letters`."""
        out: list[int] = []
        for g, e in self.syllables:
            out.extend([g + 1 if e > 0 else -(g + 1)] * abs(e))
        return out

    def columns(self) -> list[int]:
        """Coset-table columns: ``2g`` for a generator, ``2g+1`` for its inverse."""
        out: list[int] = []
        for g, e in self.syllables:
            out.extend([2 * g if e > 0 else 2 * g + 1] * abs(e))
        return out

    def format(self, names: Sequence[str]) -> str:
        return format_word(self, names)


def free_reduce(w: Word) -> Word:
    """Return the freely reduced representative of ``w`` (idempotent)."""
    return Word(_reduce_syllables(w.syllables))


def cyclic_reduce(w: Word) -> Word:
    """Strip conjugating ends so the result is cyclically reduced.

    When the first and last syllables share a generator but do not cancel
    they are merged at the front, which is a cyclic rotation.
    """
    syl = list(_reduce_syllables(w.syllables))
    while len(syl) >= 2 and syl[0][0] == syl[-1][0]:
        g = syl[0][0]
        total = syl[0][1] + syl[-1][1]
        if total == 0:
            syl = syl[1:-1]
        else:
            syl = [(g, total)] + syl[1:-1]
            break
    return Word(tuple(syl))


def format_word(w: Word, names: Sequence[str]) -> str:
    if not w.syllables:
        return "1"
    parts = []
    for g, e in w.syllables:
        parts.append(names[g] if e == 1 else f"{names[g]}^{e}")
    return " ".join(parts)


def _check_word(w: Word, ngens: int, what: str) -> None:
    for g, _ in w.syllables:
        if not 0 <= g < ngens:
            raise MalformedInputError(
                f"{what} uses generator index {g}, only {ngens} generators exist"
            )


@dataclass(frozen=True)
class Presentation:
    """Finite presentation ``< generators | relators >``.

    Relators are freely and cyclically reduced on construction and empty
    ones are dropped; their order is otherwise preserved.
    """

    generators: tuple[str, ...]
    relators: tuple[Word, ...] = ()

    def __post_init__(self) -> None:
        gens = tuple(self.generators)
        if len(set(gens)) != len(gens):
            raise MalformedInputError(f"duplicate generator names in {gens}")
        for name in gens:
            if not IDENT_RE.match(name):
                raise MalformedInputError(f"invalid generator name {name!r}")
        rels = []
        for r in self.relators:
            _check_word(r, len(gens), "relator")
            r = cyclic_reduce(r)
            if r.syllables:
                rels.append(r)
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "relators", tuple(rels))

    @property
    def ngens(self) -> int:
        return len(self.generators)

    def index(self, name: str) -> int:
        try:
            return self.generators.index(name)
        except ValueError:
            raise MalformedInputError(f"no generator named {name!r}") from None

    def gen(self, name: str, exponent: int = 1) -> Word:
        return Word.gen(self.index(name), exponent)

    def word(self, *syllables: tuple[str, int]) -> Word:
        """Build a word from ``(name, exponent)`` pairs."""
        return Word.of(*((self.index(n), e) for n, e in syllables))

    def with_relators(self, extra: Iterable[Word]) -> Presentation:
        return Presentation(self.generators, self.relators + tuple(extra))

    def format(self) -> str:
        gens = ", ".join(self.generators)
        rels = ", ".join(format_word(r, self.generators) for r in self.relators)
        left = f"< {gens} |" if gens else "< |"
        return f"{left} {rels} >" if rels else f"{left} >"

    def __str__(self) -> str:
        return self.format()


@dataclass(frozen=True)
class GroupHom:
    """Map from ``source`` to ``target`` given by one image word per generator.

    Whether relators are preserved is not checked here; see
    :func:`ddb.cosets.hom_is_well_defined`.
    """

    source: Presentation
    target: Presentation
    images: tuple[Word, ...] = field(default=())

    def __post_init__(self) -> None:
        images = tuple(free_reduce(w) for w in self.images)
        if len(images) != self.source.ngens:
            raise MalformedInputError(
                f"{len(images)} images given for {self.source.ngens} generators"
            )
        for w in images:
            _check_word(w, self.target.ngens, "image word")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, p: Presentation) -> GroupHom:
        return cls(p, p, tuple(Word.gen(i) for i in range(p.ngens)))

    def __call__(self, w: Word) -> Word:
        return apply_hom(self, w)


def apply_hom(h: GroupHom, w: Word) -> Word:
    """Substitute every generator of ``w`` by its image and freely reduce."""
    _check_word(w, h.source.ngens, "word")
    syl: list[Syllable] = []
    for g, e in w.syllables:
        syl.extend((h.images[g] ** e).syllables)
    return Word(_reduce_syllables(syl))


def tietze_eliminate(p: Presentation, gen: int, expr: Word) -> Presentation:
    """Remove generator ``gen`` by substituting ``expr`` for it everywhere.

    The caller is responsible for ``gen = expr`` holding in the group;
    relators that become trivial are dropped.
    """
    if not 0 <= gen < p.ngens:
        raise MalformedInputError(f"generator index {gen} out of range")
    _check_word(expr, p.ngens, "elimination expression")
    expr = free_reduce(expr)
    if gen in expr.generators_used():
        raise InvalidEliminationError(
            f"expression for {p.generators[gen]!r} mentions that generator"
        )

    def shift(g: int) -> int:
        return g - 1 if g > gen else g

    sub = Word(tuple((shift(g), e) for g, e in expr.syllables))
    new_rels = []
    for r in p.relators:
        syl: list[Syllable] = []
        for g, e in r.syllables:
            if g == gen:
                syl.extend((sub ** e).syllables)
            else:
                syl.append((shift(g), e))
        new_rels.append(Word(_reduce_syllables(syl)))
    names = p.generators[:gen] + p.generators[gen + 1 :]
    return Presentation(names, tuple(new_rels))
