"""Deciding double disk bundle structures from group data.

Every ``IsDDB``/``NotDDB`` answer names the rule it rests on.  The rules
only encode proved statements; anything else is ``Inconclusive``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Any

from .abelian import InvariantFactors, h1_invariants, is_finite_odd, surjects_onto_z2
from .catalog import (
    SpaceFormDescriptor,
    catalog_presentation,
    isomorphism_class,
    verify_prism_product,
)
from .cosets import EnumLimit
from .errors import VerificationFailed
from .gluing import Pi1Report


class Answer(str, enum.Enum):
    IS_DDB = "IsDDB"
    NOT_DDB = "NotDDB"
    INCONCLUSIVE = "Inconclusive"


# Rule identifiers carried by verdicts and rule outcomes.
RULE_SPHERICAL_3D = "spherical-3-manifold-ddb-iff-lens-or-prism"
RULE_BINARY_POLYHEDRAL = "binary-polyhedral-quotients-not-ddb"
RULE_FLAT_ODD_H1 = "flat-with-finite-odd-h1-not-ddb"
RULE_DOUBLE_COVER = "zero-fiber-side-forces-double-cover"
RULE_INFINITE_PI1 = "both-fibers-zero-forces-infinite-pi1"
RULE_ASPHERICAL = "aspherical-forces-zero-dimensional-fibers"


@dataclass(frozen=True)
class Verdict:
    answer: Answer
    rule: str | None
    evidence: dict[str, Any] = field(default_factory=dict)
    homogeneous: bool | None = None

    def __post_init__(self) -> None:
        if self.answer != Answer.INCONCLUSIVE and not self.rule:
            raise ValueError(f"{self.answer.value} verdicts must cite a rule")

    def to_json(self) -> dict[str, Any]:
        return {
            "answer": self.answer.value,
            "rule": self.rule,
            "homogeneous": self.homogeneous,
            "evidence": self.evidence,
        }


def decide_spaceform(
    d: SpaceFormDescriptor, verify: bool = True, limit: EnumLimit | None = None
) -> Verdict:
    """Whether the space form ``S^3 / group(d)`` is a double disk bundle.

    It is exactly when the group is cyclic or a prism group.  Products with
    a coprime cyclic group are normalized first: a cyclic base stays
    cyclic and ``Prism(alpha, beta) x C_m`` is ``Prism(alpha, beta m)``
    (checked by an explicit isomorphism when ``verify``).
    """
    group = isomorphism_class(d)
    evidence: dict[str, Any] = {
        "descriptor": d.to_json(),
        "group": group,
        "order": d.order,
        "invariant_factors": h1_invariants(catalog_presentation(d)).to_json(),
    }
    if d.family in ("Cyclic", "Prism"):
        if d.family == "Prism" and d.cofactor > 1 and verify:
            ok = verify_prism_product(d.alpha, d.beta, d.cofactor, limit)
            if ok is False:
                raise VerificationFailed(f"{d} is not isomorphic to {group}")
            evidence["isomorphism_verified"] = ok
        if group == "C1":
            evidence["manifold"] = "S3"
        elif group.startswith("C"):
            evidence["manifold"] = "lens space"
        else:
            evidence["manifold"] = "prism manifold"
        return Verdict(Answer.IS_DDB, RULE_SPHERICAL_3D, evidence)
    homogeneous = True if d.cofactor == 1 else None
    evidence["manifold"] = "spherical space form, group neither cyclic nor prism"
    return Verdict(Answer.NOT_DDB, RULE_BINARY_POLYHEDRAL, evidence, homogeneous)


def decide_flat(f: InvariantFactors) -> Verdict:
    """Obstruction for closed flat manifolds; no converse is known, so never ``IsDDB``."""
    evidence = {"invariant_factors": f.to_json()}
    if is_finite_odd(f):
        return Verdict(Answer.NOT_DDB, RULE_FLAT_ODD_H1, evidence)
    return Verdict(Answer.INCONCLUSIVE, None, evidence)


@dataclass(frozen=True)
class RuleOutcome:
    rule: str
    active: bool
    status: str  # "satisfied", "violated" or "inactive"
    detail: str

    def to_json(self) -> dict[str, Any]:
        return {"rule": self.rule, "active": self.active, "status": self.status, "detail": self.detail}


def check_structural_rules(
    report: Pi1Report,
    aspherical: bool = False,
    ell_minus_zero: bool = False,
    both_ell_zero: bool = False,
) -> list[RuleOutcome]:
    """Test group data against the necessary conditions on fiber dimensions.

    An aspherical manifold forces both fibers to be zero-dimensional, which
    in turn turns on the other two rules.
    """
    both = both_ell_zero or aspherical
    minus = ell_minus_zero or both
    out = []

    if aspherical:
        out.append(RuleOutcome(RULE_ASPHERICAL, True, "satisfied", "both fiber spheres forced to be S^0"))
    else:
        out.append(RuleOutcome(RULE_ASPHERICAL, False, "inactive", "manifold not assumed aspherical"))

    if minus:
        ok = surjects_onto_z2(report.invariants)
        detail = f"H1 = {report.invariants} " + ("surjects" if ok else "does not surject") + " onto Z/2"
        out.append(RuleOutcome(RULE_DOUBLE_COVER, True, "satisfied" if ok else "violated", detail))
    else:
        out.append(RuleOutcome(RULE_DOUBLE_COVER, False, "inactive", "no zero-dimensional fiber assumed"))

    if both:
        if report.order is not None:
            out.append(
                RuleOutcome(RULE_INFINITE_PI1, True, "violated", f"group is finite of order {report.order}")
            )
        else:
            why = "H1 is infinite" if not report.invariants.is_finite else "order not determined"
            out.append(RuleOutcome(RULE_INFINITE_PI1, True, "satisfied", why))
    else:
        out.append(RuleOutcome(RULE_INFINITE_PI1, False, "inactive", "not both fibers zero-dimensional"))
    return out
