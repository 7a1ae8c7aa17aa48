"""Fundamental groups of spherical 3-dimensional space forms.

Families: cyclic (lens spaces), prism groups
``< a, b | a b a^-1 b, a^(2 beta) = b^alpha >``, the binary tetrahedral,
octahedral and icosahedral groups, each optionally times a cyclic group of
coprime order.  Where the group sits inside the unit quaternions with
coordinates in a quadratic field, an exact realization is available as an
independent check on coset enumeration.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import gcd
from typing import Any

from .cosets import EnumLimit, group_order, hom_is_well_defined, image_index
from .errors import DescriptorError, VerificationFailed
from .quaternion import ICO, OCT, OMEGA, I, J, Quaternion, root_of_unity
from .words import GroupHom, Presentation, Word

FAMILIES = ("Cyclic", "Prism", "BinT", "BinO", "BinI")
BINARY_ORDERS = {"BinT": 24, "BinO": 48, "BinI": 120}
BINARY_EXPONENT = {"BinT": 3, "BinO": 4, "BinI": 5}


@dataclass(frozen=True)
class SpaceFormDescriptor:
    family: str
    m: int | None = None
    q: int | None = None
    alpha: int | None = None
    beta: int | None = None
    cofactor: int = 1

    def __post_init__(self) -> None:
        f = self.family
        if f not in FAMILIES:
            raise DescriptorError(f"unknown family {f!r}; expected one of {FAMILIES}")
        if f == "Cyclic":
            if self.m is None or self.q is None:
                raise DescriptorError("Cyclic needs m and q")
            if self.m < 1 or gcd(self.m, self.q) != 1:
                raise DescriptorError(f"Cyclic({self.m},{self.q}) needs m >= 1 and gcd(m,q) = 1")
            if self.alpha is not None or self.beta is not None:
                raise DescriptorError("Cyclic takes no alpha/beta")
        elif f == "Prism":
            if self.alpha is None or self.beta is None:
                raise DescriptorError("Prism needs alpha and beta")
            if self.beta < 1 or self.alpha == 0 or gcd(self.alpha, self.beta) != 1:
                raise DescriptorError(
                    f"Prism({self.alpha},{self.beta}) needs beta >= 1, alpha != 0, gcd = 1"
                )
            if self.m is not None or self.q is not None:
                raise DescriptorError("Prism takes no m/q")
        elif any(v is not None for v in (self.m, self.q, self.alpha, self.beta)):
            raise DescriptorError(f"{f} takes no parameters besides cofactor")
        if self.cofactor < 1:
            raise DescriptorError("cofactor must be >= 1")
        if gcd(self.cofactor, self.base_order) != 1:
            raise DescriptorError(
                f"cofactor {self.cofactor} is not coprime to the base order {self.base_order}"
            )

    @property
    def base_order(self) -> int:
        if self.family == "Cyclic":
            return self.m
        if self.family == "Prism":
            return 4 * abs(self.alpha) * self.beta
        return BINARY_ORDERS[self.family]

    @property
    def order(self) -> int:
        return self.base_order * self.cofactor

    @property
    def label(self) -> str:
        if self.family == "Cyclic":
            base = f"Cyclic({self.m},{self.q})"
        elif self.family == "Prism":
            base = f"Prism({self.alpha},{self.beta})"
        else:
            base = self.family
        return base if self.cofactor == 1 else f"{base} x C{self.cofactor}"

    def __str__(self) -> str:
        return self.label

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {"family": self.family}
        if self.family == "Cyclic":
            out.update(m=self.m, q=self.q)
        elif self.family == "Prism":
            out.update(alpha=self.alpha, beta=self.beta)
        out["cofactor"] = self.cofactor
        return out

    @classmethod
    def from_json(cls, data: str | dict) -> SpaceFormDescriptor:
        if isinstance(data, str):
            try:
                data = json.loads(data)
            except json.JSONDecodeError as exc:
                raise DescriptorError(f"invalid descriptor JSON: {exc}") from None
        if not isinstance(data, dict) or "family" not in data:
            raise DescriptorError("descriptor JSON must be an object with a 'family' key")
        known = {"family", "m", "q", "alpha", "beta", "cofactor"}
        extra = set(data) - known
        if extra:
            raise DescriptorError(f"unknown descriptor keys {sorted(extra)}")
        for key in known - {"family"}:
            if key in data and not (isinstance(data[key], int) and not isinstance(data[key], bool)):
                raise DescriptorError(f"descriptor field {key!r} must be an integer")
        return cls(**data)


def cyclic_presentation(m: int) -> Presentation:
    return Presentation(("a",), (Word.gen(0, m),))


def prism_presentation(alpha: int, beta: int, names: tuple[str, str] = ("a", "b")) -> Presentation:
    """``< a, b | a b a^-1 b, a^(2 beta) b^-alpha >`` for any integers."""
    aba_b = Word.of((0, 1), (1, 1), (0, -1), (1, 1))
    return Presentation(names, (aba_b, Word.of((0, 2 * beta), (1, -alpha))))


def binary_polyhedral_presentation(k: int) -> Presentation:
    """``< s, t | s^k = t^3 = (s t)^2 >``."""
    s, t = Word.gen(0), Word.gen(1)
    st = s * t
    return Presentation(("s", "t"), (s**k * (t**3).inverse(), t**3 * (st**2).inverse()))


def with_cyclic_factor(p: Presentation, m: int, name: str = "c") -> Presentation:
    """Direct product with a cyclic group of order ``m`` generated by a new central ``name``."""
    if m == 1:
        return p
    while name in p.generators:
        name += "_"
    c = p.ngens
    rels = list(p.relators) + [Word.gen(c, m)]
    for g in range(p.ngens):
        rels.append(Word.of((c, 1), (g, 1), (c, -1), (g, -1)))
    return Presentation(p.generators + (name,), tuple(rels))


def catalog_presentation(d: SpaceFormDescriptor) -> Presentation:
    if d.family == "Cyclic":
        base = cyclic_presentation(d.m)
    elif d.family == "Prism":
        base = prism_presentation(d.alpha, d.beta)
    else:
        base = binary_polyhedral_presentation(BINARY_EXPONENT[d.family])
    return with_cyclic_factor(base, d.cofactor)


def quaternion_generators(d: SpaceFormDescriptor) -> list[Quaternion] | None:
    """Exact unit-quaternion generators, or ``None`` where none are provided."""
    if d.cofactor != 1:
        return None
    if d.family == "BinT":
        return [OMEGA, I]
    if d.family == "BinO":
        return [OCT, OMEGA]
    if d.family == "BinI":
        return [ICO, OMEGA]
    if d.family == "Prism" and abs(d.alpha) in (2, 3, 4, 6) and d.beta == 1:
        # D*_{4n}: exp(pi i/n) and j
        return [root_of_unity(abs(d.alpha)), J]
    return None


def enumerate_descriptors(
    max_order: int, verify: bool = False, limit: EnumLimit | None = None
) -> list[SpaceFormDescriptor]:
    """Every descriptor whose group order is at most ``max_order``.

    Lens-space parameters ``q`` run over all units mod ``m``; prisms use
    ``alpha >= 1``.  Cofactors are only attached to non-cyclic bases since
    a cyclic base times a coprime cyclic group is again cyclic.  Nothing is
    collapsed; see :func:`coincidences`.  With ``verify`` every predicted
    order is checked by coset enumeration.
    """
    out: list[SpaceFormDescriptor] = []
    for m in range(1, max_order + 1):
        for q in range(1, m) if m > 1 else (1,):
            if gcd(m, q) == 1:
                out.append(SpaceFormDescriptor("Cyclic", m=m, q=q))
    for beta in range(1, max_order // 4 + 1):
        for alpha in range(1, max_order // (4 * beta) + 1):
            if gcd(alpha, beta) != 1:
                continue
            base = 4 * alpha * beta
            for c in range(1, max_order // base + 1):
                if gcd(c, base) == 1:
                    out.append(SpaceFormDescriptor("Prism", alpha=alpha, beta=beta, cofactor=c))
    for fam, base in BINARY_ORDERS.items():
        for c in range(1, max_order // base + 1):
            if gcd(c, base) == 1:
                out.append(SpaceFormDescriptor(fam, cofactor=c))
    out.sort(key=_sort_key)
    if verify:
        cache: dict[Presentation, int | None] = {}
        for d in out:
            p = catalog_presentation(d)
            if p not in cache:
                cache[p] = group_order(p, limit)
            if cache[p] != d.order:
                raise VerificationFailed(f"{d}: predicted order {d.order}, enumeration gave {cache[p]}")
    return out


def _sort_key(d: SpaceFormDescriptor):
    return (d.order, FAMILIES.index(d.family), d.m or 0, d.q or 0, d.alpha or 0, d.beta or 0, d.cofactor)


def isomorphism_class(d: SpaceFormDescriptor) -> str:
    """Label of the group up to the isomorphisms known here.

    ``Cyclic(m,q) x C_c`` is ``C(mc)``; ``Prism(alpha,beta) x C_c`` is
    ``Prism(|alpha|, beta c)`` (see :func:`verify_prism_product`), which
    is cyclic of order ``4 beta c`` when ``|alpha| = 1``.
    """
    if d.family == "Cyclic":
        return f"C{d.m * d.cofactor}"
    if d.family == "Prism":
        a, b = abs(d.alpha), d.beta * d.cofactor
        return f"C{4 * b}" if a == 1 else f"Prism({a},{b})"
    return d.label


def coincidences(descs: list[SpaceFormDescriptor]) -> dict[SpaceFormDescriptor, list[SpaceFormDescriptor]]:
    """Map each descriptor to the other descriptors with the same group."""
    groups: dict[str, list[SpaceFormDescriptor]] = {}
    for d in descs:
        groups.setdefault(isomorphism_class(d), []).append(d)
    return {d: [e for e in groups[isomorphism_class(d)] if e != d] for d in descs}


def verify_prism_product(
    alpha: int, beta: int, m: int, limit: EnumLimit | None = None
) -> bool | None:
    """Check ``Prism(alpha, beta m) -> Prism(alpha, beta) x C_m`` is an isomorphism.

    The map is ``a -> a c``, ``b -> b``.  It is checked to kill every
    relator, to be onto, and to join groups of equal finite order.
    """
    src = prism_presentation(alpha, beta * m)
    tgt = with_cyclic_factor(prism_presentation(alpha, beta), m)
    if m == 1:
        return True
    c = tgt.ngens - 1
    h = GroupHom(src, tgt, (Word.of((0, 1), (c, 1)), Word.gen(1)))
    well_defined = hom_is_well_defined(h, limit)
    index = image_index(h, limit)
    n_src, n_tgt = group_order(src, limit), group_order(tgt, limit)
    if None in (well_defined, index, n_src, n_tgt):
        return None
    return bool(well_defined) and index == 1 and n_src == n_tgt
