"""Small permutation groups handled by materializing every element."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ElementCapExceeded, MalformedInputError

DEFAULT_ELEMENT_CAP = 20_000

Perm = tuple[int, ...]


def compose(p: Perm, q: Perm) -> Perm:
    """Apply ``p`` first, then ``q`` (right action, matching coset tables)."""
    return tuple(q[i] for i in p)


def invert(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def commutator(p: Perm, q: Perm) -> Perm:
    return compose(compose(compose(p, q), invert(p)), invert(q))


@dataclass(frozen=True)
class PermGroup:
    degree: int
    generators: tuple[Perm, ...]

    def __post_init__(self) -> None:
        gens = tuple(tuple(int(x) for x in g) for g in self.generators)
        for g in gens:
            if len(g) != self.degree or sorted(g) != list(range(self.degree)):
                raise MalformedInputError(f"{g} is not a permutation of degree {self.degree}")
        object.__setattr__(self, "generators", gens)

    @property
    def identity(self) -> Perm:
        return tuple(range(self.degree))

    def elements(self, cap: int = DEFAULT_ELEMENT_CAP) -> set[Perm]:
        return closure(self.generators, self.degree, cap)

    def order(self, cap: int = DEFAULT_ELEMENT_CAP) -> int:
        return len(self.elements(cap))


def closure(gens, degree: int, cap: int = DEFAULT_ELEMENT_CAP) -> set[Perm]:
    ident = tuple(range(degree))
    seen = {ident}
    frontier = [ident]
    gens = [tuple(g) for g in gens]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = compose(x, g)
                if y not in seen:
                    seen.add(y)
                    if len(seen) > cap:
                        raise ElementCapExceeded(f"more than {cap} elements")
                    nxt.append(y)
        frontier = nxt
    return seen


def derived_subgroup(g: PermGroup, cap: int = DEFAULT_ELEMENT_CAP) -> set[Perm]:
    """Normal closure of the generator commutators, i.e. the commutator subgroup."""
    gens = g.generators
    sub_gens = {commutator(a, b) for a in gens for b in gens}
    sub_gens.discard(g.identity)
    elems = closure(sub_gens, g.degree, cap)
    while True:
        extra = set()
        for s in sub_gens:
            for a in gens:
                c = compose(compose(invert(a), s), a)
                if c not in elems:
                    extra.add(c)
        if not extra:
            return elems
        sub_gens |= extra
        elems = closure(sub_gens, g.degree, cap)


def is_perfect(g: PermGroup, cap: int = DEFAULT_ELEMENT_CAP) -> bool:
    """True iff the group equals its commutator subgroup (compared by order)."""
    order = g.order(cap)
    if order == 1:
        return True
    return len(derived_subgroup(g, cap)) == order


def symmetric_group(n: int) -> PermGroup:
    if n < 2:
        return PermGroup(max(n, 0), ())
    transposition = (1, 0) + tuple(range(2, n))
    cycle = tuple(range(1, n)) + (0,)
    return PermGroup(n, (transposition, cycle))


def alternating_group(n: int) -> PermGroup:
    """A_n generated by the 3-cycles (0 1 k)."""
    if n < 3:
        return PermGroup(max(n, 0), ())
    gens = []
    for k in range(2, n):
        p = list(range(n))
        p[0], p[1], p[k] = 1, k, 0
        gens.append(tuple(p))
    return PermGroup(n, tuple(gens))

