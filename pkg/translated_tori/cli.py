"""
Command line for translated_tori.

Usage:
    python -m translated_tori lattice --family monomial_full --r 2 --pivot H3
    python -m translated_tori resonance --family monomial_deletion --r 3
    python -m translated_tori theorem --r 5 --oracle --format json --out data/theorem_r5.json
    python -m translated_tori sigma-test --family monomial_deletion --r 2 --on-component 1

Exit codes: 0 success, 1 a reported check failed, 2 invalid input,
3 unsupported by the oracle, 4 size bound exceeded, 5 certificate replay failed.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Callable, Dict, List, Optional

from .arrangement import FAMILIES, Arrangement, family, triple
from .certificates import NonvanishingCertificate, certify_sigma1, replay_certificate
from .characters import Character, component_Cq, is_essential
from .config import Settings, get_settings
from .errors import CertificateError, ToriError, ValidationError
from .fox import sigma1_test
from .lattice import format_polynomial, poincare_polynomial
from .logs import configure_logging
from .parsing import parse_character_list, parse_defining_polynomial
from .partitions import MODES, essential_resonance_exists
from .reports import Report, mark

logger = logging.getLogger(__name__)

FORMATS = ("text", "json")


def exit_code_for(error: ToriError) -> int:
    """Process exit code declared by the error class."""
    return error.exit_code


@dataclass
class RunConfig:
    command: str
    family: Optional[str] = None
    poly: Optional[str] = None
    input: Optional[str] = None
    r: Optional[int] = None
    ell: Optional[int] = None
    dim: Optional[int] = None
    q: Optional[int] = None
    n: Optional[int] = None
    m: int = 1
    pivot: Optional[str] = None
    mode: str = "exhaustive"
    oracle: bool = False
    character: Optional[str] = None
    on_component: Optional[int] = None
    format: str = "text"
    out: Optional[str] = None

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        known = cls.__dataclass_fields__
        return cls(**{k: v for k, v in vars(args).items() if k in known})

    def sources(self) -> List[str]:
        return [name for name in ("family", "poly", "input") if getattr(self, name) is not None]

    def validate(self) -> "RunConfig":
        if self.format not in FORMATS:
            raise ValidationError(f"unknown format {self.format!r}")
        if self.command == "theorem":
            if self.sources():
                raise ValidationError("theorem builds its own arrangements; drop --family/--poly/--input")
            if (self.r is None) == (self.n is None):
                raise ValidationError("theorem needs exactly one of --r and --n")
            if self.n is not None and self.n < 1:
                raise ValidationError(f"--n must be positive, got {self.n}")
            r = self.theorem_r()
            if r < 2:
                raise ValidationError(f"--r must be at least 2, got {r}")
            if self.q is not None and not 1 <= self.q <= r - 1:
                raise ValidationError(f"--q must lie in 1..{r - 1}, got {self.q}")
            return self
        found = self.sources()
        if len(found) != 1:
            raise ValidationError(
                f"exactly one arrangement source is required (--family, --poly or --input), got {len(found)}"
            )
        if self.r is not None and self.r < 2:
            raise ValidationError(f"--r must be at least 2, got {self.r}")
        if self.m < 1:
            raise ValidationError(f"--m must be at least 1, got {self.m}")
        if self.mode not in MODES:
            raise ValidationError(f"unknown search mode {self.mode!r}")
        if self.command == "sigma-test":
            if (self.character is None) == (self.on_component is None):
                raise ValidationError("sigma-test needs exactly one of --character and --on-component")
            if self.on_component is not None and (self.family != "monomial_deletion" or self.r is None):
                raise ValidationError("--on-component needs --family monomial_deletion --r R")
        return self

    def theorem_r(self) -> int:
        return self.r if self.r is not None else self.n + 1

    def echo(self) -> dict:
        return {k: v for k, v in asdict(self).items() if v is not None and k not in ("format", "out")}


def pivot_ref(text: Optional[str]):
    if text is None:
        return None
    return int(text) if text.isdigit() else text


def load_arrangement(cfg: RunConfig) -> Arrangement:
    if cfg.family is not None:
        return family(cfg.family, r=cfg.r, ell=cfg.ell)
    if cfg.poly is not None:
        return parse_defining_polynomial(cfg.poly, dim=cfg.dim)
    return Arrangement.from_json(_read_json(cfg.input))


def _read_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as f:
            return json.load(f)
    except FileNotFoundError:
        raise ValidationError(f"no such file: {path}")
    except json.JSONDecodeError as e:
        raise ValidationError(f"{path} is not valid JSON: {e}")


def _add(a: List[int], b: List[int]) -> List[int]:
    size = max(len(a), len(b))
    a, b = a + [0] * (size - len(a)), b + [0] * (size - len(b))
    return [x + y for x, y in zip(a, b)]


def _trim(coeffs: List[int]) -> List[int]:
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs = coeffs[:-1]
    return coeffs


# -- commands -------------------------------------------------------------------


def cmd_lattice(cfg: RunConfig, settings: Settings) -> Report:
    """Flats, Poincare polynomial and the deletion-restriction identity at a pivot."""
    A = load_arrangement(cfg)
    P = A.poset
    report = Report("lattice", cfg.echo())
    report.results = {
        "arrangement": A.to_json(),
        "central": A.is_central,
        "poset": P.to_json(A.labels),
        "betti_numbers": list(P.betti_numbers()),
        "euler_characteristic": P.euler_characteristic(),
    }
    report.line(f"{A.name}: {len(A)} hyperplanes in dimension {A.ambient_dim}")
    report.line(f"Poincare polynomial: {format_polynomial(poincare_polynomial(A))}")
    for rank, sizes in P.census().items():
        report.line(f"  rank {rank}: " + ", ".join(f"{c} flats on {s}" for s, c in sizes.items()))

    ref = pivot_ref(cfg.pivot)
    if ref is not None:
        tr = triple(A, ref)
        full = list(poincare_polynomial(A))
        deleted = list(poincare_polynomial(tr.deleted))
        restricted = list(poincare_polynomial(tr.restricted))
        shifted = [0] + restricted
        poincare_ok = _trim(full) == _trim(_add(deleted, shifted))
        chi = P.euler_characteristic()
        chi_ok = chi == tr.deleted.poset.euler_characteristic() - tr.restricted.poset.euler_characteristic()
        report.results["triple"] = {
            **tr.to_json(),
            "poincare": {"full": full, "deleted": deleted, "restricted": restricted},
            "poincare_identity": poincare_ok,
            "euler_identity": chi_ok,
        }
        pivot_label = A[tr.pivot].label
        report.check(poincare_ok, f"pi(A) = pi(A') + t pi(A'') at pivot {pivot_label}")
        report.check(chi_ok, "chi(M) = chi(M') - chi(M'')")
        report.line(f"  A'' has {len(tr.restricted)} hyperplanes")
    return report


def cmd_resonance(cfg: RunConfig, settings: Settings) -> Report:
    A = load_arrangement(cfg)
    verdict = essential_resonance_exists(A, cfg.mode, settings)
    report = Report("resonance", cfg.echo())
    report.results = {"arrangement": A.name, "hyperplanes": len(A), **verdict.to_json(A.labels)}
    report.line(f"{A.name}: {len(A)} hyperplanes, {len(verdict.local)} local components")
    report.line(f"Neighborly partitions: {len(verdict.partitions)} (exhaustive: {verdict.exhaustive})")
    for p in verdict.partitions[:10]:
        report.line("  " + " | ".join(",".join(block) for block in p.to_json(A.labels)))
    if verdict.witness is not None:
        report.line("Resonant weight: " + ", ".join(str(x) for x in verdict.witness))
    report.check(verdict.excluded, f"no essential component of R_1 ({verdict.rule})")
    return report


def _claim_holds(cert: NonvanishingCertificate) -> bool:
    """Translated, of the expected order, and every step verified, cited or flagged UNVERIFIED."""
    claim = cert.claim
    fox = claim.get("fox_h1_dim")
    return (
        claim.get("translated") is True
        and claim.get("translation_order") == claim.get("expected_order")
        and (fox is None or fox >= 1)
        and all(s.verified or s.citation or s.conclusion.startswith("UNVERIFIED") for s in cert.steps)
    )


def cmd_theorem(cfg: RunConfig, settings: Settings) -> Report:
    """Certificates for C(r, q) over the requested q, each replayed before it is reported."""
    r = cfg.theorem_r()
    qs = [cfg.q] if cfg.q is not None else list(range(1, r))
    report = Report("theorem", cfg.echo())
    certificates = []
    count = 0
    for q in qs:
        cert = certify_sigma1(r, q, oracle=cfg.oracle, settings=settings)
        data = cert.to_json()
        failures = replay_certificate(data, settings)
        if failures:
            raise CertificateError(f"certificate for C({r},{q}) does not replay: " + "; ".join(failures))
        S = component_Cq(r, q)
        essential = is_essential(S)
        if essential and S.dimension > 0 and cert.claim["translated"]:
            count += 1
        certificates.append({**data, "replayed": True})
        claim = cert.claim
        how = "Fox oracle" if cert.fox_verified else "triple isomorphism (axiom-backed)"
        report.check(
            _claim_holds(cert),
            f"{claim['subtorus']} in Sigma_1({claim['arrangement']}): order {claim['translation_order']}, "
            f"nonvanishing via {how}, replayed",
        )
        unverified = [s.rule for s in cert.steps if s.conclusion.startswith("UNVERIFIED")]
        if unverified:
            report.line(f"  unverified: {', '.join(unverified)}")
    report.results = {
        "r": r,
        "q": qs,
        "certificates": certificates,
        "translated_tori": count,
    }
    report.line(f"Essential positive-dimensional translated tori: {count}")
    return report


def _character(cfg: RunConfig, A: Arrangement) -> Character:
    if cfg.on_component is not None:
        S = component_Cq(cfg.r, cfg.on_component)
        return S.point
    text = cfg.character
    if text.endswith(".json"):
        return Character.from_json(_read_json(text), A)
    return Character(A, tuple(parse_character_list(text)))


def cmd_sigma_test(cfg: RunConfig, settings: Settings) -> Report:
    A = load_arrangement(cfg)
    t = _character(cfg, A)
    ref = pivot_ref(cfg.pivot)
    result = sigma1_test(A, t, cfg.m, 0 if ref is None else ref)
    report = Report("sigma-test", cfg.echo())
    report.results = {"arrangement": A.name, "character": t.to_text(), "m": cfg.m, **result.to_json()}
    report.line(f"{A.name}: dim H^1 = {result.h1} ({result.reason})")
    if result.betti is not None:
        report.line(f"Betti numbers: {list(result.betti)}")
    report.line(f"{mark(result.member)} character {'is' if result.member else 'is not'} in Sigma_{cfg.m}")
    return report


COMMANDS: Dict[str, Callable[[RunConfig, Settings], Report]] = {
    "lattice": cmd_lattice,
    "resonance": cmd_resonance,
    "theorem": cmd_theorem,
    "sigma-test": cmd_sigma_test,
}


def _add_source(p: argparse.ArgumentParser) -> None:
    p.add_argument("--family", choices=FAMILIES, help="Built-in family")
    p.add_argument("--poly", help="Defining polynomial, e.g. \"x1*x2*(x1^2-x2^2)\"")
    p.add_argument("--input", help="Arrangement JSON file")
    p.add_argument("--r", type=int, help="Order r of the monomial family")
    p.add_argument("--ell", type=int, help="Ambient dimension for boolean/braid")
    p.add_argument("--dim", type=int, help="Ambient dimension for --poly")


def _add_output(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=FORMATS, default="text", help="Report format")
    p.add_argument("--out", help="Write the report here instead of stdout")
    p.add_argument("--max-partition-size", type=int, help="Exhaustive partition search bound")
    p.add_argument("--log-level", help="Logging level (default from TORI_LOG_LEVEL)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="translated_tori", description="Resonance and characteristic varieties of hyperplane arrangements"
    )
    subparsers = parser.add_subparsers(dest="command", help="Command to run")

    parser_lattice = subparsers.add_parser("lattice", help="Intersection poset and Poincare polynomial")
    _add_source(parser_lattice)
    parser_lattice.add_argument("--pivot", help="Check deletion-restriction at this hyperplane (label or index)")
    _add_output(parser_lattice)

    parser_resonance = subparsers.add_parser("resonance", help="Essential components of R_1")
    _add_source(parser_resonance)
    parser_resonance.add_argument("--mode", choices=MODES, default="exhaustive", help="Partition search mode")
    _add_output(parser_resonance)

    parser_theorem = subparsers.add_parser("theorem", help="Certify the translated components C(r, q)")
    parser_theorem.add_argument("--r", type=int, help="Order r of D(r)")
    parser_theorem.add_argument("--n", type=int, help="Count n translated tori in D(n+1)")
    parser_theorem.add_argument("--q", type=int, help="Single q (default: all of 1..r-1)")
    parser_theorem.add_argument("--oracle", action="store_true", help="Confirm nonvanishing with the Fox oracle")
    _add_output(parser_theorem)

    parser_sigma = subparsers.add_parser("sigma-test", help="Membership of a character in Sigma_m")
    _add_source(parser_sigma)
    parser_sigma.add_argument("--character", help="Comma-separated coordinates or a character JSON file")
    parser_sigma.add_argument("--on-component", type=int, help="Use the generic point of C(r, q) for this q")
    parser_sigma.add_argument("--m", type=int, default=1, help="Depth m")
    parser_sigma.add_argument("--pivot", help="Hyperplane sent to infinity (default: the first)")
    _add_output(parser_sigma)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if not args.command:
        parser.print_help()
        return 1

    try:
        settings = get_settings().with_overrides(
            max_partition_size=args.max_partition_size, log_level=args.log_level
        )
        configure_logging(settings.log_level)
        cfg = RunConfig.from_args(args).validate()
        logger.info(f"running {cfg.command} with {cfg.echo()}")
        started = time.perf_counter()
        report = COMMANDS[cfg.command](cfg, settings)
        report.elapsed = time.perf_counter() - started
    except ToriError as e:
        print(f"Error: {e}", file=sys.stderr)
        return exit_code_for(e)

    out = Path(cfg.out) if cfg.out else None
    text = report.write(cfg.format, out)
    if out is None:
        sys.stdout.write(text)
    else:
        print(f"✓ Report written to {out}", file=sys.stderr)
    return 1 if report.failed else 0


if __name__ == "__main__":
    sys.exit(main())
