"""
Machine-replayable certificates that a translated subtorus C(r, q) lies in
the first characteristic variety of the deleted monomial arrangement D(r).

Each derivation step names a rule, stores the inputs it was decided on and
says whether it was machine-verified or rests on a cited literature axiom.
replay_certificate recomputes every step from (r, q) and compares.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Dict, List, Optional

from .arrangement import decone, monomial_arrangement, triple
from .characters import (
    component_C,
    component_Cq,
    decone_character,
    extend_character,
    is_essential,
    restrict_character,
    translation_order,
)
from .config import Settings, get_settings
from .cyclotomic import Cyclotomic
from .errors import CertificateError, SizeBoundError, UnsupportedError, ValidationError
from .fox import DUALITY_CONVENTION, fox_matrix, h1_dim, presentation
from .linalg import SpecializationReport, specialization_oracle
from .partitions import essential_resonance_exists
from .ratfunc import RatFunc
from .wiring import wiring_diagram

logger = logging.getLogger(__name__)

AXIOM_C = "AXIOM_C"
EXTENSION = "EXTENSION"
RESTRICTION_NONTRIVIAL = "RESTRICTION_NONTRIVIAL"
H0_VANISHING = "H0_VANISHING"
TRIPLE_ISOMORPHISM = "COR_2_4"
FOX_ORACLE = "FOX_ORACLE"
ESSENTIALITY = "ESSENTIALITY"
RESONANCE_EXCLUSION = "RESONANCE_EXCLUSION"
TANGENT_CONE = "TANGENT_CONE"
TRANSLATION_ORDER = "TRANSLATION_ORDER"

COMPONENT_C_CITATION = (
    "characteristic varieties of arrangements: for the full monomial arrangement A(r) the "
    "two-dimensional subtorus {uvw = 1} is an essential component of Sigma_1 through 1"
)
TANGENT_CONE_CITATION = (
    "tangent cone theorem: the tangent cone at 1 of Sigma_1 is the first resonance variety, "
    "so an essential component through 1 forces an essential resonance component"
)
TRIPLE_CITATION = (
    "deletion-restriction long exact sequence: when the restricted local system L'' has no "
    "cohomology below degree q, H^q(M'; L') is isomorphic to H^q(M; L)"
)

# tags written by earlier releases
RULE_ALIASES = {"TRIPLE_ISOMORPHISM": TRIPLE_ISOMORPHISM}


@dataclass
class DerivationStep:
    """One rule application; axiom-backed steps carry a citation and verified=False."""

    rule: str
    inputs: dict
    verified: bool
    conclusion: str
    citation: Optional[str] = None

    def to_json(self) -> dict:
        """Step as a JSON-ready dict."""
        return {
            "rule": self.rule,
            "inputs": self.inputs,
            "verified": self.verified,
            "citation": self.citation,
            "conclusion": self.conclusion,
        }


@dataclass
class NonvanishingCertificate:
    """Claim plus the derivation that supports it."""

    claim: dict
    steps: List[DerivationStep] = field(default_factory=list)

    @property
    def fox_verified(self) -> bool:
        """True when the Fox oracle confirmed nonvanishing."""
        return any(s.rule == FOX_ORACLE for s in self.steps)

    def to_json(self) -> dict:
        """Certificate as a JSON-ready dict."""
        return {"claim": self.claim, "derivation": [s.to_json() for s in self.steps]}


def nonvanishing_transfer(degree: int, restricted_vanishes_below: bool, full_nonzero: bool) -> bool:
    """
    Triple rule: if H^i(M''; L'') = 0 for all i < degree, then
    H^degree(M; L) embeds in H^degree(M'; L'), so nonvanishing passes to M'.
    """
    if degree < 1:
        raise ValidationError(f"degree must be positive, got {degree}")
    return restricted_vanishes_below and full_nonzero


class _Context:
    """Objects recomputed from (r, q), shared by the engine and the replay checks."""

    def __init__(self, r: int, q: int, settings: Settings):
        self.r, self.q, self.settings = r, q, settings

    @cached_property
    def full(self):
        return monomial_arrangement(self.r, full=True)

    @cached_property
    def triple(self):
        return triple(self.full, "H3")

    @cached_property
    def cq(self):
        return component_Cq(self.r, self.q)

    @cached_property
    def extended(self):
        return extend_character(self.cq.point, self.triple)

    @cached_property
    def restricted(self):
        return restrict_character(self.cq.point, self.triple)

    def on_component_C(self) -> bool:
        zq = RatFunc.constant(Cyclotomic.zeta(self.r, self.q))
        v = (zq * RatFunc.u()).inverse()
        return component_C(self.r).evaluate(v=v) == self.extended

    @cached_property
    def fox_point(self):
        B = decone(self.cq.host, "H1")
        return presentation(wiring_diagram(B)), decone_character(self.cq.point, "H1", B)

    def fox_h1(self) -> int:
        return h1_dim(*self.fox_point)

    def fox_specializations(self) -> SpecializationReport:
        s = self.settings
        return specialization_oracle(fox_matrix(*self.fox_point).matrix, s.specializations, s.seed, s.conductor_cap)

    def resonance(self, mode: str):
        return essential_resonance_exists(self.cq.host, mode, self.settings)


def _resonance_step(ctx: _Context) -> DerivationStep:
    mode = "exhaustive"
    try:
        verdict = ctx.resonance(mode)
    except SizeBoundError as e:
        logger.warning(f"{e}; falling back to the pruned search")
        mode = "pruned"
        verdict = ctx.resonance(mode)
    if not verdict.excluded:
        raise CertificateError(f"{ctx.cq.host.name}: essential resonance component not excluded ({verdict.rule})")
    verified = verdict.exhaustive and mode == "exhaustive"
    return DerivationStep(
        RESONANCE_EXCLUSION,
        {"arrangement": ctx.cq.host.name, "mode": mode, "exists": False, "exhaustive": verdict.exhaustive},
        verified,
        "no non-trivial neighborly partition and no essential local component, so R_1 has no essential component"
        if verified
        else "UNVERIFIED: the partition search was not exhaustive",
    )


def certify_sigma1(r: int, q: int, oracle: bool = False, settings: Optional[Settings] = None) -> NonvanishingCertificate:
    """Certificate that C(r, q) is an essential translated component of Sigma_1(D(r))."""
    if r < 2:
        raise ValidationError(f"r must be at least 2, got {r}")
    if not 1 <= q <= r - 1:
        raise ValidationError(f"q must lie in 1..{r - 1}, got {q}")
    ctx = _Context(r, q, settings or get_settings())
    steps: List[DerivationStep] = []

    steps.append(DerivationStep(
        AXIOM_C,
        {"r": r, "component": component_C(r).to_text()},
        False,
        f"the generic point of C lies in Sigma_1({ctx.full.name})",
        COMPONENT_C_CITATION,
    ))
    if not ctx.on_component_C():
        raise CertificateError(f"extension of {ctx.cq.name} does not land on C at w = zeta^{q}")
    steps.append(DerivationStep(
        EXTENSION,
        {"r": r, "q": q, "extended": ctx.extended.to_text(), "specialization": f"w = zeta({r})^{q}"},
        True,
        f"extending {ctx.cq.name} by 1 at H3 gives a point of C",
    ))
    if ctx.restricted.is_trivial():
        raise CertificateError(f"restriction of {ctx.cq.name} is trivial")
    steps.append(DerivationStep(
        RESTRICTION_NONTRIVIAL,
        {"r": r, "q": q, "restricted": ctx.restricted.to_text()},
        True,
        "the restricted local system L'' is non-trivial",
    ))
    steps.append(DerivationStep(
        H0_VANISHING,
        {"restricted_nontrivial": True},
        True,
        "H^0(M''; L'') = 0",
    ))

    fox_dim = None
    oracle_note = None
    if oracle:
        try:
            fox_dim = ctx.fox_h1()
        except UnsupportedError as e:
            oracle_note = f"oracle unavailable: {e}"
            logger.info(f"{ctx.cq.name}: {oracle_note}")
    if fox_dim is not None:
        if fox_dim < 1:
            raise CertificateError(f"Fox oracle finds H^1 = 0 along {ctx.cq.name}")
        sampled = ctx.fox_specializations()
        if not sampled.consistent:
            raise CertificateError(f"specialized Alexander ranks disagree with the symbolic rank along {ctx.cq.name}")
        steps.append(DerivationStep(
            FOX_ORACLE,
            {
                "r": r,
                "q": q,
                "arrangement": decone(ctx.cq.host, "H1").name,
                "h1_dim": fox_dim,
                "symbolic_rank": sampled.symbolic_rank,
                "specialized_ranks": sampled.ranks,
            },
            True,
            f"dim H^1 = {fox_dim} >= 1 at the generic point of {ctx.cq.name}",
        ))
    else:
        vanishes_below = not ctx.restricted.is_trivial()
        full_nonzero = ctx.on_component_C()
        holds = nonvanishing_transfer(1, vanishes_below, full_nonzero)
        if not holds:
            raise CertificateError(f"nonvanishing does not transfer to {ctx.cq.name}")
        steps.append(DerivationStep(
            TRIPLE_ISOMORPHISM,
            {
                "degree": 1,
                "restricted_vanishes_below": vanishes_below,
                "full_nonzero": full_nonzero,
                "full_nonzero_from": AXIOM_C,
                "holds": holds,
            },
            False,
            f"H^1({ctx.cq.host.name}; L') = H^1({ctx.full.name}; L) != 0, so {ctx.cq.name} lies in Sigma_1",
            TRIPLE_CITATION,
        ))

    essential = is_essential(ctx.cq)
    if not essential:
        raise CertificateError(f"{ctx.cq.name} is not essential")
    steps.append(DerivationStep(ESSENTIALITY, {"subtorus": ctx.cq.name, "essential": True}, True,
                                f"{ctx.cq.name} lies in no coordinate subtorus z_j = 1"))
    resonance = _resonance_step(ctx)
    steps.append(resonance)
    steps.append(DerivationStep(
        TANGENT_CONE,
        {"essential": True, "resonance_exclusion_verified": resonance.verified},
        False,
        f"{ctx.cq.name} is contained in no component through 1, so its component is translated",
        TANGENT_CONE_CITATION,
    ))
    order = translation_order(ctx.cq)
    steps.append(DerivationStep(
        TRANSLATION_ORDER,
        {"subtorus": ctx.cq.name, "order": order},
        True,
        f"translated by a character of order {order}",
    ))
    claim = {
        "arrangement": ctx.cq.host.name,
        "subtorus": ctx.cq.name,
        "r": r,
        "q": q,
        "degree": 1,
        "lower_bound": 1,
        "translated": True,
        "translation_order": order,
        "expected_order": r // math.gcd(q, r),
        "fox_h1_dim": fox_dim,
        "axiom_backed": fox_dim is None,
        "convention": DUALITY_CONVENTION,
    }
    if oracle_note:
        claim["oracle_note"] = oracle_note
    return NonvanishingCertificate(claim, steps)


def translated_components(n: int, oracle: bool = False, settings: Optional[Settings] = None) -> List[NonvanishingCertificate]:
    """Certificates for the n translated tori C(n+1, q), q = 1..n."""
    if n < 1:
        raise ValidationError(f"n must be positive, got {n}")
    return [certify_sigma1(n + 1, q, oracle, settings) for q in range(1, n + 1)]


# -- replay --------------------------------------------------------------------

Checker = Callable[[dict, _Context], bool]


def _check_axiom_c(inputs: dict, ctx: _Context) -> bool:
    C = component_C(ctx.r)
    return inputs.get("component") == C.to_text() and C.coordinate_product() == 1


def _check_extension(inputs: dict, ctx: _Context) -> bool:
    return inputs.get("extended") == ctx.extended.to_text() and ctx.on_component_C()


def _check_restriction(inputs: dict, ctx: _Context) -> bool:
    return inputs.get("restricted") == ctx.restricted.to_text() and not ctx.restricted.is_trivial()


def _check_h0(inputs: dict, ctx: _Context) -> bool:
    return inputs.get("restricted_nontrivial") is True and not ctx.restricted.is_trivial()


def _check_triple(inputs: dict, ctx: _Context) -> bool:
    vanishes_below = not ctx.restricted.is_trivial()
    full_nonzero = ctx.on_component_C()
    if inputs.get("restricted_vanishes_below") is not vanishes_below or inputs.get("full_nonzero") is not full_nonzero:
        return False
    expected = nonvanishing_transfer(int(inputs.get("degree", 1)), vanishes_below, full_nonzero)
    return inputs.get("holds") is expected and expected


def _check_fox(inputs: dict, ctx: _Context) -> bool:
    stored = inputs.get("h1_dim")
    if not (isinstance(stored, int) and stored >= 1 and ctx.fox_h1() == stored):
        return False
    rank = ctx.fox_point[0].n - 1 - stored
    sampled = inputs.get("specialized_ranks") or []
    return inputs.get("symbolic_rank") == rank and max(sampled, default=-1) == rank and all(k <= rank for k in sampled)


def _check_essentiality(inputs: dict, ctx: _Context) -> bool:
    return inputs.get("essential") is True and is_essential(ctx.cq)


def _check_resonance(inputs: dict, ctx: _Context) -> bool:
    mode = inputs.get("mode", "exhaustive")
    verdict = ctx.resonance(mode)
    return verdict.excluded and verdict.exhaustive == inputs.get("exhaustive")


def _check_tangent_cone(inputs: dict, ctx: _Context) -> bool:
    return inputs.get("essential") is True and is_essential(ctx.cq)


def _check_order(inputs: dict, ctx: _Context) -> bool:
    return inputs.get("order") == translation_order(ctx.cq)


CHECKERS: Dict[str, Checker] = {
    AXIOM_C: _check_axiom_c,
    EXTENSION: _check_extension,
    RESTRICTION_NONTRIVIAL: _check_restriction,
    H0_VANISHING: _check_h0,
    TRIPLE_ISOMORPHISM: _check_triple,
    FOX_ORACLE: _check_fox,
    ESSENTIALITY: _check_essentiality,
    RESONANCE_EXCLUSION: _check_resonance,
    TANGENT_CONE: _check_tangent_cone,
    TRANSLATION_ORDER: _check_order,
}

AXIOM_RULES = {AXIOM_C, TANGENT_CONE, TRIPLE_ISOMORPHISM}


def replay_certificate(data: dict, settings: Optional[Settings] = None) -> List[str]:
    """Failed step descriptions; empty when every step re-checks."""
    try:
        claim = data["claim"]
        r, q = int(claim["r"]), int(claim["q"])
        steps = data["derivation"]
    except (KeyError, TypeError, ValueError) as e:
        return [f"malformed certificate: {e}"]
    ctx = _Context(r, q, settings or get_settings())
    failures = []
    for i, step in enumerate(steps):
        rule = RULE_ALIASES.get(step.get("rule"), step.get("rule"))
        checker = CHECKERS.get(rule)
        if checker is None:
            failures.append(f"step {i}: unknown rule {rule!r}")
            continue
        if rule in AXIOM_RULES and step.get("verified"):
            failures.append(f"step {i}: {rule} rests on an axiom but is marked verified")
            continue
        if rule in AXIOM_RULES and not step.get("citation"):
            failures.append(f"step {i}: {rule} has no citation")
            continue
        try:
            ok = checker(step.get("inputs", {}), ctx)
        except Exception as e:
            failures.append(f"step {i}: {rule} raised {type(e).__name__}: {e}")
            continue
        if not ok:
            failures.append(f"step {i}: {rule} no longer holds")
    rules = [RULE_ALIASES.get(s.get("rule"), s.get("rule")) for s in steps]
    if FOX_ORACLE not in rules and TRIPLE_ISOMORPHISM not in rules:
        failures.append("derivation never establishes nonvanishing")
    return failures


def assert_replays(data: dict, settings: Optional[Settings] = None) -> None:
    """Raise CertificateError listing every step that fails to replay."""
    failures = replay_certificate(data, settings)
    if failures:
        raise CertificateError("; ".join(failures))
