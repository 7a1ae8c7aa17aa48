"""Fundamental groups of 3-manifolds glued from two disk bundles.

The common boundary (regular leaf) is a 2-sphere or a 2-torus.  Each side
is a disk bundle over a point, RP^2, a circle, a torus or a Klein bottle;
its fundamental group is that of the base, and the boundary inclusion is
the sphere-bundle projection on fundamental groups.  The group of the
union is the Seifert-van Kampen pushout of the two projections.
"""

from __future__ import annotations

import enum
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Iterator

from .abelian import InvariantFactors, h1_invariants
from .catalog import prism_presentation
from .cosets import EnumLimit, group_order, words_equal
from .errors import InadmissibleSideError, MalformedInputError, VerificationFailed
from .words import GroupHom, Presentation, Word, format_word, tietze_eliminate


class Leaf(str, enum.Enum):
    SPHERE2 = "S2"
    TORUS2 = "T2"


class Base(str, enum.Enum):
    POINT = "pt"
    RP2 = "RP2"
    CIRCLE = "S1"
    TORUS2 = "T2"
    KLEIN_BOTTLE = "K"


# (leaf, base) -> fiber sphere dimension
ADMISSIBLE = {
    (Leaf.SPHERE2, Base.POINT): 2,
    (Leaf.SPHERE2, Base.RP2): 0,
    (Leaf.TORUS2, Base.CIRCLE): 1,
    (Leaf.TORUS2, Base.TORUS2): 0,
    (Leaf.TORUS2, Base.KLEIN_BOTTLE): 0,
}


@dataclass(frozen=True)
class SideDescriptor:
    leaf: Leaf
    base: Base
    ell: int

    def __post_init__(self) -> None:
        leaf, base = Leaf(self.leaf), Base(self.base)
        object.__setattr__(self, "leaf", leaf)
        object.__setattr__(self, "base", base)
        expected = ADMISSIBLE.get((leaf, base))
        if expected is None or expected != self.ell:
            raise InadmissibleSideError(
                f"no disk bundle over {base.value} with fiber S^{self.ell} and boundary {leaf.value}"
            )

    @classmethod
    def of(cls, leaf: Leaf | str, base: Base | str) -> SideDescriptor:
        leaf, base = Leaf(leaf), Base(base)
        if (leaf, base) not in ADMISSIBLE:
            raise InadmissibleSideError(f"no disk bundle over {base.value} with boundary {leaf.value}")
        return cls(leaf, base, ADMISSIBLE[leaf, base])


BALL = SideDescriptor.of(Leaf.SPHERE2, Base.POINT)
TWISTED_RP2 = SideDescriptor.of(Leaf.SPHERE2, Base.RP2)
SOLID_TORUS = SideDescriptor.of(Leaf.TORUS2, Base.CIRCLE)
TORUS_SIDE = SideDescriptor.of(Leaf.TORUS2, Base.TORUS2)
KLEIN_SIDE = SideDescriptor.of(Leaf.TORUS2, Base.KLEIN_BOTTLE)


@dataclass(frozen=True)
class GluingMatrix:
    """Integer 2x2 matrix ``[[alpha, beta], [gamma, delta]]`` of determinant +-1.

    Columns are the images of the torus generators ``b`` and ``c``:
    ``b -> b^alpha c^gamma`` and ``c -> b^beta c^delta``.
    """

    alpha: int
    beta: int
    gamma: int
    delta: int

    def __post_init__(self) -> None:
        if abs(self.det) != 1:
            raise MalformedInputError(f"gluing matrix {self.entries} has determinant {self.det}")

    @property
    def det(self) -> int:
        return self.alpha * self.delta - self.beta * self.gamma

    @property
    def entries(self) -> tuple[int, int, int, int]:
        return (self.alpha, self.beta, self.gamma, self.delta)

    @classmethod
    def parse(cls, text: str) -> GluingMatrix:
        try:
            vals = [int(x) for x in text.split(",")]
        except ValueError:
            raise MalformedInputError(f"matrix {text!r} must be four comma-separated integers") from None
        if len(vals) != 4:
            raise MalformedInputError(f"matrix {text!r} must have four entries")
        return cls(*vals)

    def __str__(self) -> str:
        return ",".join(str(x) for x in self.entries)


def matrix_orbit_reduce(m: GluingMatrix) -> GluingMatrix:
    """Canonical orientation-preserving representative.

    ``diag(1, -1)`` on the solid-torus side extends over ``D^2 x S^1``, so
    a determinant -1 gluing is equivalent to ``diag(1, -1) @ m``.
    """
    if m.det == 1:
        return m
    return GluingMatrix(m.alpha, m.beta, -m.gamma, -m.delta)


@dataclass(frozen=True)
class GluingDatum:
    side_minus: SideDescriptor
    side_plus: SideDescriptor
    matrix: GluingMatrix | None = None

    def __post_init__(self) -> None:
        if self.side_minus.leaf != self.side_plus.leaf:
            raise InadmissibleSideError("both sides must have the same boundary")
        if self.side_minus.leaf == Leaf.TORUS2:
            if self.side_plus != SOLID_TORUS:
                raise InadmissibleSideError("torus gluings need the solid torus as the plus side")
            if self.matrix is None:
                raise MalformedInputError("torus gluings need a gluing matrix")


class ManifoldName(str, enum.Enum):
    S3 = "S3"
    RP3 = "RP3"
    RP3_SUM_RP3 = "RP3#RP3"


@dataclass(frozen=True)
class Classification:
    kind: str
    params: tuple[int, ...] = ()

    KINDS = ("Trivial", "Cyclic", "PrismGroup", "FreeAbelianRank", "Z2FreeProductZ2", "Other")

    def __post_init__(self) -> None:
        if self.kind not in self.KINDS:
            raise ValueError(f"unknown classification {self.kind!r}")

    def __str__(self) -> str:
        if not self.params:
            return self.kind
        return f"{self.kind}({','.join(str(p) for p in self.params)})"


@dataclass(frozen=True)
class WordEquality:
    """One checked equation ``lhs = rhs`` inside a named group."""

    group: str
    lhs: str
    rhs: str
    holds: bool | None

    def to_json(self) -> dict[str, Any]:
        return {"group": self.group, "lhs": self.lhs, "rhs": self.rhs, "holds": self.holds}


@dataclass(frozen=True)
class Pi1Report:
    presentation: Presentation
    invariants: InvariantFactors
    order: int | None
    classification: Classification
    certificate: tuple[WordEquality, ...] = ()
    abelian: bool | None = None
    manifold: str | None = None

    def to_json(self) -> dict[str, Any]:
        out = {
            "presentation": self.presentation.format(),
            "invariant_factors": self.invariants.to_json(),
            "order": self.order,
            "classification": str(self.classification),
            "certificate": [c.to_json() for c in self.certificate],
            "abelian": self.abelian,
        }
        if self.manifold is not None:
            out["manifold"] = self.manifold
        return out


def _unique_name(name: str, taken: set[str]) -> str:
    while name in taken:
        name += "_"
    return name


def svk_pushout(leaf_pres: Presentation, to_minus: GroupHom, to_plus: GroupHom) -> Presentation:
    """Amalgamate the two targets over the leaf group.

    Generators: those of the plus target, then those of the minus target
    (renamed on collision).  Relators: minus target relators, plus target
    relators, then ``to_plus(g) to_minus(g)^-1`` for every leaf generator.
    """
    if to_minus.source != leaf_pres or to_plus.source != leaf_pres:
        raise MalformedInputError("both maps must start at the leaf presentation")
    plus, minus = to_plus.target, to_minus.target
    taken = set(plus.generators)
    minus_names = []
    for n in minus.generators:
        n = _unique_name(n, taken)
        taken.add(n)
        minus_names.append(n)
    shift = plus.ngens

    def from_minus(w: Word) -> Word:
        return Word(tuple((g + shift, e) for g, e in w.syllables))

    rels = [from_minus(r) for r in minus.relators] + list(plus.relators)
    for g in range(leaf_pres.ngens):
        rels.append(to_plus.images[g] * from_minus(to_minus.images[g]).inverse())
    return Presentation(plus.generators + tuple(minus_names), tuple(rels))


TORUS = Presentation(("b", "c"), (Word.of((0, 1), (1, 1), (0, -1), (1, -1)),))
SPHERE = Presentation((), ())

# index-2 sublattices of Z^2 for the torus double-covering a torus: images of (b, c)
SUBLATTICES = {
    "first": (((0, 2),), ((1, 1),)),
    "second": (((0, 1),), ((1, 2),)),
    "diagonal": (((0, 1), (1, 1)), ((1, 2),)),
}


def _minus_side_hom(side: SideDescriptor, sublattice: str) -> GroupHom:
    if side.base == Base.CIRCLE:
        target = Presentation(("x",), ())
        return GroupHom(TORUS, target, (Word.gen(0), Word()))
    if side.base == Base.TORUS2:
        if sublattice not in SUBLATTICES:
            raise MalformedInputError(f"sublattice must be one of {sorted(SUBLATTICES)}")
        target = Presentation(("d", "e"), (Word.of((0, 1), (1, 1), (0, -1), (1, -1)),))
        b_img, c_img = SUBLATTICES[sublattice]
        return GroupHom(TORUS, target, (Word.of(*b_img), Word.of(*c_img)))
    if side.base == Base.KLEIN_BOTTLE:
        # the abelian index-2 subgroup of the Klein bottle group is <d^2, e>
        target = Presentation(("d", "e"), (Word.of((0, 1), (1, 1), (0, -1), (1, 1)),))
        return GroupHom(TORUS, target, (Word.gen(0, 2), Word.gen(1)))
    raise InadmissibleSideError(f"{side.base.value} does not bound a torus")


def _plus_side_hom(matrix: GluingMatrix) -> GroupHom:
    target = Presentation(("a",), ())
    return GroupHom(TORUS, target, (Word.gen(0, matrix.alpha), Word.gen(0, matrix.beta)))


@dataclass(frozen=True)
class PrismRecognition:
    alpha: int
    beta: int
    eliminated: Presentation
    prism: Presentation
    certificate: tuple[WordEquality, ...] = field(default=())

    @property
    def valid(self) -> bool:
        return all(c.holds is True for c in self.certificate)


def recognize_prism(
    p: Presentation, matrix: GluingMatrix, limit: EnumLimit | None = None
) -> PrismRecognition | None:
    """Show the Klein-bottle pushout ``p`` is a prism group.

    ``p`` is ``< a, d, e | d e d^-1 e, a^alpha d^-2, a^beta e^-1 >``.
    Since ``alpha delta - beta gamma = 1`` we have ``a = d^(2 delta) e^-gamma``;
    ``a`` is eliminated with that expression and the relators of the
    result and of the prism presentation are checked to imply each other
    by coset enumeration in each finite group.  Returns ``None`` when
    ``alpha`` or ``beta`` vanishes (not a finite prism group).
    """
    if matrix.det != 1:
        raise MalformedInputError("recognize_prism needs a determinant +1 matrix")
    al, be, ga, de = matrix.entries
    if al == 0 or be == 0:
        return None
    ia, id_, ie = p.index("a"), p.index("d"), p.index("e")
    expr = Word.of((id_, 2 * de), (ie, -ga))
    certificate = [_check(p, "pushout", Word.gen(ia), expr, limit)]

    eliminated = tietze_eliminate(p, ia, expr)
    jd, je = eliminated.index("d"), eliminated.index("e")
    d, e = Word.gen(jd), Word.gen(je)
    certificate.append(_check(eliminated, "eliminated", d ** (2 * be), e**al, limit))

    prism = prism_presentation(al, be, ("d", "e"))
    a_expr = Word.of((0, 2 * de), (1, -ga))
    pd, pe = Word.gen(0), Word.gen(1)
    certificate.append(_check(prism, "prism", a_expr**al, pd**2, limit))
    certificate.append(_check(prism, "prism", a_expr**be, pe, limit))

    if any(c.holds is False for c in certificate):
        bad = [c for c in certificate if c.holds is False]
        raise VerificationFailed(f"prism certificate failed for matrix {matrix}: {bad}")
    if be < 0:
        al, be = -al, -be
    return PrismRecognition(al, be, eliminated, prism, tuple(certificate))


def _check(p: Presentation, group: str, u: Word, v: Word, limit) -> WordEquality:
    holds = words_equal(p, u, v, limit)
    return WordEquality(group, format_word(u, p.generators), format_word(v, p.generators), holds)


def _abelian_classification(inv: InvariantFactors) -> Classification:
    if not inv.factors:
        return Classification("Trivial")
    if inv.is_finite and len(inv.factors) == 1:
        return Classification("Cyclic", (inv.factors[0],))
    if not inv.torsion:
        return Classification("FreeAbelianRank", (inv.rank,))
    return Classification("Other")


def torus_gluing_pi1(
    matrix: GluingMatrix,
    side_minus: SideDescriptor,
    sublattice: str = "first",
    limit: EnumLimit | None = None,
) -> Pi1Report:
    """Fundamental group of a solid torus glued to ``side_minus`` along a torus."""
    if side_minus.leaf != Leaf.TORUS2:
        raise InadmissibleSideError(f"{side_minus.base.value} side does not have torus boundary")
    if matrix.det != 1:
        raise MalformedInputError(
            f"matrix {matrix} reverses orientation; apply matrix_orbit_reduce first"
        )
    p = svk_pushout(TORUS, _minus_side_hom(side_minus, sublattice), _plus_side_hom(matrix))
    inv = h1_invariants(p)

    if side_minus.base != Base.KLEIN_BOTTLE:
        # the pushout is a quotient of the abelian group of the minus base
        order = group_order(p, limit) if inv.is_finite else None
        return Pi1Report(p, inv, order, _abelian_classification(inv), abelian=True)

    if matrix.alpha == 0:
        # d^2 = 1 and e = a^(+-1): the infinite dihedral group
        return Pi1Report(p, inv, None, Classification("Z2FreeProductZ2"), abelian=False)
    if matrix.beta == 0:
        # e = 1 and d^2 = a^(+-1): infinite cyclic
        return Pi1Report(p, inv, None, Classification("FreeAbelianRank", (1,)), abelian=True)

    rec = recognize_prism(p, matrix, limit)
    order = group_order(p, limit)
    abelian = None if order is None or inv.order is None else order == inv.order
    return Pi1Report(
        p,
        inv,
        order,
        Classification("PrismGroup", (rec.alpha, rec.beta)),
        rec.certificate,
        abelian=abelian,
    )


def classify_sphere_leaf(side_minus: SideDescriptor, side_plus: SideDescriptor) -> ManifoldName:
    """Name of the manifold; the gluing map never matters for a sphere leaf."""
    for s in (side_minus, side_plus):
        if s.leaf != Leaf.SPHERE2:
            raise InadmissibleSideError(f"{s.base.value} side does not have sphere boundary")
    n_rp2 = sum(s.base == Base.RP2 for s in (side_minus, side_plus))
    return (ManifoldName.S3, ManifoldName.RP3, ManifoldName.RP3_SUM_RP3)[n_rp2]


def sphere_gluing_pi1(side_minus: SideDescriptor, side_plus: SideDescriptor) -> Pi1Report:
    name = classify_sphere_leaf(side_minus, side_plus)

    def hom(side: SideDescriptor, gen: str) -> GroupHom:
        if side.base == Base.RP2:
            return GroupHom(SPHERE, Presentation((gen,), (Word.gen(0, 2),)), ())
        return GroupHom(SPHERE, Presentation(()), ())

    p = svk_pushout(SPHERE, hom(side_minus, "y"), hom(side_plus, "x"))
    inv = h1_invariants(p)
    if name == ManifoldName.RP3_SUM_RP3:
        return Pi1Report(p, inv, None, Classification("Z2FreeProductZ2"), abelian=False, manifold=name.value)
    return Pi1Report(
        p, inv, inv.order, _abelian_classification(inv), abelian=True, manifold=name.value
    )


def glue(datum: GluingDatum, sublattice: str = "first", limit: EnumLimit | None = None) -> Pi1Report:
    if datum.side_minus.leaf == Leaf.SPHERE2:
        return sphere_gluing_pi1(datum.side_minus, datum.side_plus)
    return torus_gluing_pi1(matrix_orbit_reduce(datum.matrix), datum.side_minus, sublattice, limit)


def gluing_matrices(bound: int) -> Iterator[GluingMatrix]:
    """All determinant +1 matrices with entries in ``[-bound, bound]``, lexicographically."""
    rng = range(-bound, bound + 1)
    for a in rng:
        for b in rng:
            for c in rng:
                for d in rng:
                    if a * d - b * c == 1:
                        yield GluingMatrix(a, b, c, d)


def _sweep_one(args) -> tuple[GluingMatrix, Pi1Report]:
    matrix, side, sublattice, max_cosets = args
    return matrix, torus_gluing_pi1(matrix, side, sublattice, EnumLimit(max_cosets))


def gluing_sweep(
    bound: int,
    side_minus: SideDescriptor,
    sublattice: str = "first",
    limit: EnumLimit | None = None,
    jobs: int = 1,
) -> list[tuple[GluingMatrix, Pi1Report]]:
    """Evaluate every matrix of :func:`gluing_matrices`; results come back sorted by matrix."""
    limit = limit or EnumLimit()
    tasks = [(m, side_minus, sublattice, limit.max_cosets) for m in gluing_matrices(bound)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_sweep_one, tasks, chunksize=8))
    else:
        results = [_sweep_one(t) for t in tasks]
    return sorted(results, key=lambda r: r[0].entries)


def _visibly_abelian(p: Presentation) -> bool:
    """Every pair of generators has a commutator among the relators (up to rotation/inversion)."""
    have = set()
    for r in p.relators:
        s = r.syllables
        if len(s) == 4 and all(abs(e) == 1 for _, e in s):
            (g1, e1), (g2, e2), (g3, e3), (g4, e4) = s
            if g1 == g3 and g2 == g4 and g1 != g2 and e1 == -e3 and e2 == -e4:
                have.add(frozenset((g1, g2)))
    return all(
        frozenset((i, j)) in have for i in range(p.ngens) for j in range(i + 1, p.ngens)
    )


def presentation_report(p: Presentation, limit: EnumLimit | None = None) -> Pi1Report:
    """Report for an arbitrary presentation.

    A finite group is abelian exactly when its order equals that of its
    abelianization.  For groups of unknown order only presentations that
    commute all generator pairs outright are called abelian.
    """
    inv = h1_invariants(p)
    order = group_order(p, limit)
    if order is not None:
        abelian = order == inv.order
    else:
        abelian = True if _visibly_abelian(p) else None
    cls = _abelian_classification(inv) if abelian else Classification("Other")
    return Pi1Report(p, inv, order, cls, abelian=abelian)
