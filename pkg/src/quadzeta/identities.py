"""Exact-identity verifiers: functional equations, special-a closed forms,
positivity, the zero-free abscissa, g_p modulus facts and the Hadamard
constant B(a).

Each verifier evaluates both sides of an identity independently (to the
extent the evaluation routes allow; the Z->P and P->Z reports are labelled
self-consistency checks because P is *computed* through that reflection)
and reports absolute and relative residuals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

from .errors import DenominatorZero
from .sfcore import (
    AlphaLike,
    DEFAULT_SETTINGS,
    EvalSettings,
    TWO_PI,
    as_alpha,
    deriv_s,
    gamma_value,
    hurwitz_zeta,
    q_value,
    zq_eval,
    _cospi,
)

__all__ = [
    "ClosedFormReports",
    "EULER_GAMMA",
    "FeReports",
    "HadamardData",
    "ResidualReport",
    "SpecialAlpha",
    "ZeroFreeBound",
    "closed_form_residual",
    "fe_residual",
    "g_p_modulus",
    "hadamard_b",
    "positivity_sigma_gt1",
    "q_partial_a",
    "zero_free_abscissa",
]

# single source of truth for the Euler constant (17 significant digits)
EULER_GAMMA = 0.57721566490153287


@dataclass(frozen=True)
class ResidualReport:
    """lhs vs rhs of one identity instance."""

    lhs: complex
    rhs: complex
    abs_residual: float
    rel_residual: float

    @classmethod
    def compare(cls, lhs: complex, rhs: complex) -> "ResidualReport":
        absr = abs(lhs - rhs)
        return cls(lhs, rhs, absr, absr / max(1.0, abs(lhs), abs(rhs)))


class FeReports(NamedTuple):
    """The three functional-equation reports at one point.

    ``z_to_p`` and ``p_to_z`` are self-consistency checks (P is implemented
    through that very reflection); ``q_equation`` additionally exercises the
    Gamma/cosine/power identity chi(s) * chi-reflected(s) = 1.
    """

    q_equation: ResidualReport
    z_to_p: ResidualReport
    p_to_z: ResidualReport


def _chi(s: complex) -> complex:
    """2 Gamma(s) (2 pi)^(-s) cos(pi s / 2)."""
    return 2.0 * gamma_value(s) * TWO_PI ** (-s) * _cospi(s / 2.0)


def fe_residual(s: complex, a: AlphaLike,
                cfg: EvalSettings = DEFAULT_SETTINGS) -> FeReports:
    """Residuals of Q(1-s) = chi(s) Q(s) and the two Z/P reflections."""
    s = complex(s)
    if min(abs(s), abs(s - 1.0)) <= 1e-6:
        raise DenominatorZero("functional equation degenerates at s in {0, 1}")
    alpha = as_alpha(a, half=True)
    chi = _chi(s)
    left = zq_eval(1.0 - s, alpha, cfg)
    right = zq_eval(s, alpha, cfg)
    return FeReports(
        q_equation=ResidualReport.compare(left.q.value, chi * right.q.value),
        z_to_p=ResidualReport.compare(left.z.value, chi * right.p.value),
        p_to_z=ResidualReport.compare(left.p.value, chi * right.z.value),
    )


class SpecialAlpha(Enum):
    """The four rational shifts with closed-form factorizations."""

    Half = 2
    Third = 3
    Quarter = 4
    Sixth = 6

    @property
    def alpha(self) -> float:
        return 1.0 / self.value


def _closed_forms(which: SpecialAlpha, s: complex) -> tuple[complex, complex]:
    """(Z-side, P-side) closed-form factors multiplying zeta(s)."""
    two_s = 2.0 ** s
    two_r = 2.0 ** (1.0 - s)
    three_s = 3.0 ** s
    three_r = 3.0 ** (1.0 - s)
    if which is SpecialAlpha.Half:
        return 2.0 * (two_s - 1.0), 2.0 * (two_r - 1.0)
    if which is SpecialAlpha.Third:
        return three_s - 1.0, three_r - 1.0
    if which is SpecialAlpha.Quarter:
        return two_s * (two_s - 1.0), two_r * (two_r - 1.0)
    return (two_s - 1.0) * (three_s - 1.0), (two_r - 1.0) * (three_r - 1.0)


class ClosedFormReports(NamedTuple):
    z: ResidualReport
    p: ResidualReport
    q: ResidualReport


def closed_form_residual(s: complex, which: SpecialAlpha,
                         cfg: EvalSettings = DEFAULT_SETTINGS) -> ClosedFormReports:
    """Compare Z, P, Q at a = 1/2, 1/3, 1/4, 1/6 against their closed forms.

    Z(s,1/2) = 2(2^s-1) zeta(s)          P(s,1/2) = 2(2^(1-s)-1) zeta(s)
    Z(s,1/3) = (3^s-1) zeta(s)           P(s,1/3) = (3^(1-s)-1) zeta(s)
    Z(s,1/4) = 2^s(2^s-1) zeta(s)        P(s,1/4) = 2^(1-s)(2^(1-s)-1) zeta(s)
    Z(s,1/6) = (2^s-1)(3^s-1) zeta(s)    P(s,1/6) = (2^(1-s)-1)(3^(1-s)-1) zeta(s)
    """
    s = complex(s)
    triple = zq_eval(s, 1.0 / which.value, cfg)
    zeta_s = hurwitz_zeta(s, 1.0, cfg).value
    zf, pf = _closed_forms(which, s)
    return ClosedFormReports(
        z=ResidualReport.compare(triple.z.value, zf * zeta_s),
        p=ResidualReport.compare(triple.p.value, pf * zeta_s),
        q=ResidualReport.compare(triple.q.value, 0.5 * (zf + pf) * zeta_s),
    )


def g_p_modulus(s: complex, p: int) -> float:
    """|g_p(s)| where g_p(s) = (p^s - 1) / (p^(1-s) - 1), p in {2, 3}.

    Satisfies g_p(1-s) = 1/g_p(s); the modulus equals 1 exactly on
    sigma = 1/2, exceeds 1 for sigma > 1/2 and stays below 1 for
    sigma < 1/2 (so in particular it exceeds 1/2 right of the line).
    """
    if p not in (2, 3):
        raise ValueError("g_p is defined for p in {2, 3}")
    s = complex(s)
    den = p ** (1.0 - s) - 1.0
    if abs(den) < 1e-12:
        raise DenominatorZero(f"p^(1-s) = 1 at s = {s}")
    return abs((p ** s - 1.0) / den)


def positivity_sigma_gt1(sigma: float, a: AlphaLike,
                         cfg: EvalSettings = DEFAULT_SETTINGS) -> bool:
    """True iff Q(sigma, a) > 0; holds for every sigma > 1."""
    if sigma - 1.0 < 0.999999e-6:
        raise ValueError("positivity check requires sigma > 1 + 1e-6")
    return q_value(complex(sigma), a, cfg).real > 0.0


@dataclass(frozen=True)
class ZeroFreeBound:
    """sigma' >= 3/2 beyond which |Q(s,a)| > eta, and sigma_a = sigma' + 1."""

    a: float
    eta: float
    sigma_prime: float
    sigma_a: float

    def __post_init__(self):
        if self.sigma_prime < 1.5:
            raise ValueError("sigma_prime must be >= 3/2")
        if abs(self.sigma_a - self.sigma_prime - 1.0) > 1e-12:
            raise ValueError("sigma_a must equal sigma_prime + 1")


def zero_free_abscissa(a: AlphaLike, eta: float,
                       cfg: EvalSettings = DEFAULT_SETTINGS) -> ZeroFreeBound:
    """Effective zero-free abscissa from the Dirichlet-series lower bound.

    For a < 1/2 the bound 2|Q(s,a)| >= a^(-sigma) - (1-a)^(-sigma)
    - 4 zeta(3/2) holds for sigma >= 3/2; for a = 1/2 the bound is
    2^(sigma+1) - 4 zeta(3/2).  Returns the smallest sigma' >= 3/2 with
    bound >= 2 eta (clamped to 3/2 even when the bound would allow less).
    """
    if eta < 0.0:
        raise ValueError("eta must be >= 0")
    alpha = as_alpha(a, half=True)
    av = alpha.a
    zeta_32 = hurwitz_zeta(1.5, 1.0, cfg).value.real
    if abs(av - 0.5) < 1e-15:
        def bound(sig: float) -> float:
            return 2.0 ** (sig + 1.0) - 4.0 * zeta_32
    else:
        def bound(sig: float) -> float:
            return av ** (-sig) - (1.0 - av) ** (-sig) - 4.0 * zeta_32

    target = 2.0 * eta
    lo = 1.5
    if bound(lo) >= target:
        sp = 1.5
    else:
        hi = 3.0
        while bound(hi) < target:
            hi *= 2.0
            if hi > 1e6:
                raise ArithmeticError("zero-free bound failed to reach target")
        for _ in range(100):
            mid = 0.5 * (lo + hi)
            if bound(mid) >= target:
                hi = mid
            else:
                lo = mid
            if hi - lo <= 1e-12:
                break
        sp = hi
    return ZeroFreeBound(a=av, eta=eta, sigma_prime=sp, sigma_a=sp + 1.0)


@dataclass(frozen=True)
class HadamardData:
    """Constants of the genus-1 product for xi: e^A = 1/2 and the slope B(a)."""

    a: float
    A_const: float
    B_of_a: float
    gamma_E: float = EULER_GAMMA


def hadamard_b(a: AlphaLike, cfg: EvalSettings = DEFAULT_SETTINGS) -> HadamardData:
    """B(a) = Q'(0,a)/Q(0,a) - 1 - (gamma_E + log pi)/2, with Q'(0,a) by a
    Cauchy circle of radius 0.1 around the origin (clear of the s = 1 pole).
    """
    alpha = as_alpha(a, half=True)
    q0 = q_value(0.0, alpha, cfg)
    qprime = deriv_s(lambda z: q_value(z, alpha, cfg), 0.0, 1, radius=0.1)
    b = (qprime.value / q0).real - 1.0 - 0.5 * (EULER_GAMMA + math.log(math.pi))
    return HadamardData(a=alpha.a, A_const=math.log(0.5), B_of_a=b)


def q_partial_a(sigma: float, a: AlphaLike, h: float = 1e-5,
                cfg: EvalSettings = DEFAULT_SETTINGS) -> float:
    """Central finite difference of Q(sigma, .) in the shift parameter."""
    alpha = as_alpha(a, half=True)
    if not 0.0 < alpha.a - h < alpha.a + h <= 0.5:
        raise ValueError("finite-difference stencil leaves (0, 1/2]")
    up = q_value(complex(sigma), alpha.a + h, cfg).real
    dn = q_value(complex(sigma), alpha.a - h, cfg).real
    return (up - dn) / (2.0 * h)
