"""Case tags and ordinal invariants of the quotients S_λ(μ)/S_κ(μ).

Cardinals are alephs with indices in base-Ω normal form. The continuum is given
explicitly as 2^ℵ0 = ℵ_θ; Ω = (2^ℵ0)^+ = ℵ_{θ+1}.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Union

from .ordinal import (ONE, ZERO, Cofinality, Ord, Small, cf, coeff, compare, parse_ord,
                      sim_bound, subtract_left, successor, to_text, upper)


class SpecError(ValueError):
    pass


@dataclass(frozen=True)
class Aleph:
    index: Ord

    def __str__(self) -> str:
        return f"aleph({to_text(self.index)})"


@dataclass(frozen=True)
class SuccessorOfMu:
    def __str__(self) -> str:
        return "mu+"


CardinalExpr = Union[Aleph, SuccessorOfMu]


@dataclass(frozen=True)
class ContinuumSpec:
    """2^ℵ0 = ℵ_theta."""
    theta: Ord

    def __post_init__(self):
        if compare(self.theta, ONE) < 0:
            raise SpecError("the continuum index theta must be at least 1")
        if self.theta.omega is not None or any(n > 0 for n, _ in self.theta.levels):
            raise SpecError("the continuum index must lie below Omega = (2^aleph0)^+")


@dataclass(frozen=True)
class QuotientSpec:
    kappa: CardinalExpr
    lam: CardinalExpr
    mu: CardinalExpr
    continuum: ContinuumSpec

    def __post_init__(self):
        if not isinstance(self.kappa, Aleph) or not isinstance(self.mu, Aleph):
            raise SpecError("kappa and mu must be given as alephs; only lambda may be mu+")
        beta, gam = self.beta, self.gamma
        if compare(beta, gam) >= 0:
            raise SpecError(f"need kappa < lambda, got indices {beta} and {gam}")
        if compare(gam, successor(self.mu.index)) > 0:
            raise SpecError("need lambda <= mu+")

    @property
    def beta(self) -> Ord:
        return self.kappa.index

    @property
    def gamma(self) -> Ord:
        if isinstance(self.lam, SuccessorOfMu):
            return successor(self.mu.index)
        return self.lam.index


def parse_cardinal(text: str) -> CardinalExpr:
    """'aleph(<ordinal>)', 'aleph_<n>' or 'mu+'."""
    s = text.strip()
    if s in ("mu+", "mu^+", "μ⁺", "μ+"):
        return SuccessorOfMu()
    m = re.fullmatch(r"(?:aleph|ℵ)\s*\((.*)\)", s) or re.fullmatch(r"(?:aleph|ℵ)_?(\d+)", s)
    if not m:
        raise SpecError(f"cannot read cardinal {text!r}")
    return Aleph(parse_ord(m.group(1)))


def parse_spec(kappa: str, lam: str, mu: str, theta: str) -> QuotientSpec:
    return QuotientSpec(parse_cardinal(kappa), parse_cardinal(lam), parse_cardinal(mu),
                        ContinuumSpec(parse_ord(theta)))


# ---------------------------------------------------------------- cofinality and cases

def cf_cardinal(c: CardinalExpr, continuum: Optional[ContinuumSpec] = None) -> Aleph:
    """cf(ℵ_β): ℵ0 for β = 0 or cf(β) = ω, ℵ_β itself for successor β, Ω when cf(β) = Ω."""
    if not isinstance(c, Aleph):
        raise SpecError("resolve mu+ before taking a cofinality")
    b = cf(c.index)
    if b is Cofinality.ZERO or b is Cofinality.OMEGA:
        return Aleph(ZERO)
    if b is Cofinality.ONE:
        return c
    if continuum is None:
        raise SpecError("cofinality Omega needs the continuum assumption")
    return Aleph(successor(continuum.theta))


class KappaCase(str, Enum):
    A = "A"  # cf(κ) > 2^ℵ0
    B = "B"  # cf(κ) <= 2^ℵ0 < κ
    C = "C"  # ℵ0 < κ <= 2^ℵ0
    D = "D"  # κ = ℵ0


def case_tag(spec: QuotientSpec) -> tuple[bool, KappaCase]:
    """(lambda = mu+, kappa case)."""
    max_case = compare(spec.gamma, successor(spec.mu.index)) == 0
    theta = spec.continuum.theta
    if spec.beta.is_zero:
        return max_case, KappaCase.D
    if compare(spec.beta, theta) <= 0:
        return max_case, KappaCase.C
    cfk = cf_cardinal(spec.kappa, spec.continuum)
    return max_case, KappaCase.B if compare(cfk.index, theta) <= 0 else KappaCase.A


# ---------------------------------------------------------------- ordinal invariants

def alpha(spec: QuotientSpec) -> Ord:
    """The alpha with beta + alpha = gamma."""
    return subtract_left(spec.beta, spec.gamma)


def last_indecomposable(b: Ord) -> Ord:
    """The least a > 0 with b = g + a for some g."""
    if b.is_zero:
        raise SpecError("zero has no indecomposable summand")
    if not b.levels:
        return Ord.omega_power(last_indecomposable(b.omega))
    n, c = b.levels[-1]
    e = c.terms[-1][0]
    return Ord.power(n, Small(((e, 1),)))


def alpha_star(spec: QuotientSpec) -> Optional[Ord]:
    """Not applicable (None) when kappa = aleph_0."""
    return None if spec.beta.is_zero else last_indecomposable(spec.beta)


def is_indecomposable(a: Ord) -> bool:
    if a.is_zero:
        return False
    if a.omega is not None:
        return not a.levels and is_indecomposable(a.omega)
    return len(a.levels) == 1 and len(a.levels[0][1].terms) == 1 and a.levels[0][1].terms[0][1] == 1


@dataclass(frozen=True)
class InvariantReport:
    k: int
    max_case: bool
    kappa_case: KappaCase
    alpha: Ord
    alpha_coeffs: tuple
    alpha_uppers: tuple
    alpha_star: Optional[Ord]
    alpha_star_coeffs: Optional[tuple]
    alpha_star_uppers: Optional[tuple]
    cf_kappa: Aleph
    kap: bool
    fin: bool
    relevant: tuple = field(default=())

    def fields(self) -> list[tuple[str, str]]:
        def seq(xs):
            return "n/a" if xs is None else " ".join(str(x) for x in xs)

        star = "n/a" if self.alpha_star is None else to_text(self.alpha_star)
        return [("max_case", "lambda=mu+" if self.max_case else "lambda<=mu"),
                ("kappa_case", self.kappa_case.value),
                ("k", str(self.k)),
                ("alpha", to_text(self.alpha)),
                ("alpha_coeffs", seq(self.alpha_coeffs)),
                ("alpha_uppers", seq(self.alpha_uppers)),
                ("alpha_star", star),
                ("alpha_star_coeffs", seq(self.alpha_star_coeffs)),
                ("alpha_star_uppers", seq(self.alpha_star_uppers)),
                ("cf_kappa", str(self.cf_kappa)),
                ("kap", "present" if self.kap else "absent"),
                ("fin", "present" if self.fin else "absent"),
                ("relevant", " ".join(self.relevant))]

    def lines(self, machine: bool = False) -> list[str]:
        sep = "\t" if machine else ": "
        return [f"{k}{sep}{v}" for k, v in self.fields()]


def _profile(a: Ord, k: int) -> tuple[tuple, tuple]:
    return tuple(coeff(a, n) for n in range(k + 1)), tuple(upper(a, n) for n in range(k + 1))


def invariants(spec: QuotientSpec, k: int) -> InvariantReport:
    if k < 0:
        raise ValueError("k must be non-negative")
    max_case, case = case_tag(spec)
    a = alpha(spec)
    star = alpha_star(spec)
    ac, au = _profile(a, k)
    sc, su = _profile(star, k) if star is not None else (None, None)
    relevant = ["max_case", "kappa_case", "alpha"]
    if case is not KappaCase.A:
        relevant += ["cf_kappa"] + (["alpha_star"] if star is not None else [])
    if case in (KappaCase.C, KappaCase.D):
        relevant.append("kap")
    if case is KappaCase.D:
        relevant.append("fin")
    return InvariantReport(k, max_case, case, a, ac, au, star, sc, su,
                           cf_cardinal(spec.kappa, spec.continuum),
                           kap=case in (KappaCase.C, KappaCase.D), fin=case is KappaCase.D,
                           relevant=tuple(relevant))


# ---------------------------------------------------------------- comparison

@dataclass(frozen=True)
class Verdict:
    agree: bool
    reason: Optional[str] = None

    def __str__(self) -> str:
        return "InvariantsAgree" if self.agree else f"Distinguished({self.reason})"


def _first_difference(name: str, a: Ord, b: Ord, k: int) -> Optional[str]:
    for n in range(k + 1):
        if coeff(a, n) != coeff(b, n):
            return f"{name}_[{n}]"
        if upper(a, n) != upper(b, n):
            return f"{name}^[{n}]"
    return None


def equivalent(s1: QuotientSpec, s2: QuotientSpec, k: Optional[int] = None) -> Verdict:
    """Compare invariant tuples up to level k (every level when k is None)."""
    if s1.continuum != s2.continuum:
        raise SpecError("the two specs use different continuum assumptions")
    if case_tag(s1) != case_tag(s2):
        return Verdict(False, "case")
    a1, a2 = alpha(s1), alpha(s2)
    pairs = [("alpha", a1, a2)]
    case = case_tag(s1)[1]
    if case is not KappaCase.A:
        st1, st2 = alpha_star(s1), alpha_star(s2)
        if (st1 is None) != (st2 is None):
            return Verdict(False, "alpha_star")
        if st1 is not None:
            pairs.append(("alpha*", st1, st2))
    for name, x, y in pairs:
        depth = sim_bound(x, y) if k is None else k
        diff = _first_difference(name, x, y, depth)
        if diff:
            return Verdict(False, diff)
    if case is not KappaCase.A and cf_cardinal(s1.kappa, s1.continuum) != cf_cardinal(s2.kappa, s2.continuum):
        return Verdict(False, "cf(kappa)")
    return Verdict(True)
