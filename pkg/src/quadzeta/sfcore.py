"""Core special-function evaluators.

Everything downstream rests on the four evaluators in this module:

* ``gamma`` -- complex Gamma via the Lanczos approximation (g = 7, 9 terms)
  with exactly-reduced sin(pi z) reflection for Re z < 1/2, plus a
  ``loggamma`` variant for arguments where Gamma itself would overflow.
* ``hurwitz_zeta`` -- zeta(s, a) = sum (n+a)^(-s), continued to all s != 1
  by Euler-Maclaurin: head sum over n < N, integral term (N+a)^(1-s)/(s-1),
  half term (N+a)^(-s)/2 and Bernoulli corrections through B30.
* ``zq_eval`` -- the symmetric pair sums
      Z(s,a) = zeta(s,a) + zeta(s,1-a)
      P(s,a) = Li_s(e^{2 pi i a}) + Li_s(e^{-2 pi i a})
  and Q = (Z + P)/2.  P is never assembled from individual polylogarithms:
  it is computed for all s from the pair reflection
      P(s,a) = 2 Gamma(1-s) (2 pi)^(s-1) cos(pi (1-s)/2) Z(1-s,a),
  whose singularities at s in {1, 2, 3, ...} are removable (the Gamma poles
  cancel against zeros of the cosine factor or of Z).  Near those points the
  value is recovered by the mean-value property: an 8-point trapezoid
  average on a small circle.  s = 0 is handled by the exact value
  P(0,a) = -1.
* ``xi_q`` -- the completed function 2 xi(s,a) = s(s-1) pi^(-s/2)
  Gamma(s/2) Q(s,a), entire, symmetric under s <-> 1-s and real on the
  critical line.  Its removable points {0, 1, -2, -4, ...} get the same
  circle-average treatment.

``deriv_s`` supplies analytic s-derivatives of any of these via a 32-node
trapezoid rule on a Cauchy circle.

All functions are pure; the Bernoulli and Lanczos tables are module-level
constants built once at import.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, NamedTuple, Optional, Union

from .errors import (
    PoleAtNonPositiveInteger,
    PoleAtOne,
    SingularityInDisk,
    TruncationFailure,
)

__all__ = [
    "AlphaParam",
    "EvalResult",
    "EvalSettings",
    "Method",
    "ZPQ",
    "as_alpha",
    "bernoulli_table",
    "deriv_s",
    "gamma",
    "hurwitz_zeta",
    "hurwitz_zeta_da",
    "loggamma",
    "periodic_pair_rational",
    "periodic_pair_series",
    "xi_q",
    "zq_eval",
]

TWO_PI = 2.0 * math.pi
LOG_TWO_PI = math.log(TWO_PI)
EPS = 2.220446049250313e-16


# --------------------------------------------------------------------------
# settings / result plumbing
# --------------------------------------------------------------------------

class Method(Enum):
    """Which branch produced an EvalResult."""

    EulerMaclaurin = "euler-maclaurin"
    Reflection = "reflection"
    CircleAverage = "circle-average"
    Series = "series"


@dataclass(frozen=True)
class EvalSettings:
    """Tolerance and truncation knobs shared by every evaluator.

    ``bernoulli_order`` counts the Euler-Maclaurin correction terms, i.e.
    corrections use B2 ... B(2*bernoulli_order) with 2k <= 30.
    """

    abs_tol: float = 1e-12
    max_terms: int = 10_000
    bernoulli_order: int = 15
    pole_guard_radius: float = 0.05

    def __post_init__(self):
        if not self.abs_tol > 0.0:
            raise ValueError("abs_tol must be positive")
        if not 1 <= self.bernoulli_order <= 15:
            raise ValueError("bernoulli_order must be in 1..15")
        if self.max_terms < 16:
            raise ValueError("max_terms must be >= 16")
        if not self.pole_guard_radius > 0.0:
            raise ValueError("pole_guard_radius must be positive")


DEFAULT_SETTINGS = EvalSettings()


@dataclass(frozen=True)
class EvalResult:
    """A computed complex value plus an absolute error estimate."""

    value: complex
    est_error: float
    method: Method

    def __post_init__(self):
        v = self.value
        if not (math.isfinite(v.real) and math.isfinite(v.imag)):
            raise ArithmeticError(f"non-finite evaluator result {v!r}")
        if not self.est_error >= 0.0:
            raise ValueError("est_error must be non-negative")


@dataclass(frozen=True)
class AlphaParam:
    """The shift parameter a, optionally carrying an exact small fraction.

    ``fraction`` is set when the parameter was built from a rational r/q
    with q <= 64; the rational fast paths key off it.
    """

    a: float
    fraction: Optional[Fraction] = None

    def __post_init__(self):
        if not 0.0 < self.a <= 1.0:
            raise ValueError(f"alpha parameter must lie in (0, 1], got {self.a}")
        if self.fraction is not None:
            if not 0 < self.fraction <= 1:
                raise ValueError("alpha fraction out of range")
            if self.fraction.denominator > 64:
                raise ValueError("exact fractions are only tracked for q <= 64")

    @classmethod
    def from_fraction(cls, r: int, q: int) -> "AlphaParam":
        f = Fraction(r, q)
        return cls(a=float(f), fraction=f)


AlphaLike = Union[AlphaParam, float, Fraction, int, str]


def as_alpha(a: AlphaLike, *, half: bool = False) -> AlphaParam:
    """Coerce a float / Fraction / "r/q" string to an AlphaParam.

    ``half=True`` enforces the Q-domain 0 < a <= 1/2.
    """
    if isinstance(a, AlphaParam):
        alpha = a
    elif isinstance(a, Fraction):
        frac = a if a.denominator <= 64 else None
        alpha = AlphaParam(a=float(a), fraction=frac)
    elif isinstance(a, str) and "/" in a:
        alpha = AlphaParam.from_fraction(*map(int, a.split("/", 1)))
    else:
        alpha = AlphaParam(a=float(a))
    if half and alpha.a > 0.5 + 1e-15:
        raise ValueError(f"Q-domain requires 0 < a <= 1/2, got {alpha.a}")
    return alpha


class ZPQ(NamedTuple):
    """The three pair evaluations returned by ``zq_eval``."""

    z: EvalResult
    p: EvalResult
    q: EvalResult


# --------------------------------------------------------------------------
# Bernoulli numbers
# --------------------------------------------------------------------------

def _bernoulli_fractions(n_max: int) -> list[Fraction]:
    # B_m = -1/(m+1) * sum_{k<m} C(m+1, k) B_k, with the B1 = -1/2 convention.
    bern = [Fraction(1)]
    for m in range(1, n_max + 1):
        acc = Fraction(0)
        for k in range(m):
            acc += math.comb(m + 1, k) * bern[k]
        bern.append(-acc / (m + 1))
    return bern


_BERN_FRAC = _bernoulli_fractions(32)


def bernoulli_table(n_max: int) -> list[float]:
    """B_0 ... B_{n_max} as binary64, sign convention B1 = -1/2."""
    if n_max > 30:
        raise ValueError("bernoulli_table supports n_max <= 30")
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    return [float(b) for b in _BERN_FRAC[: n_max + 1]]


# B_{2k} / (2k)! for the Euler-Maclaurin corrections, k = 1..16 (the 16th
# feeds the first-omitted-term error estimate only).
_EM_COEFF = [float(_BERN_FRAC[2 * k] / Fraction(math.factorial(2 * k))) for k in range(1, 17)]


def _bernoulli_poly_coeffs(m: int) -> tuple[float, ...]:
    # Horner coefficients of B_m(x), highest power first
    return tuple(float(math.comb(m, k) * _BERN_FRAC[k]) for k in range(m + 1))


_BPOLY_CACHE: dict[int, tuple[float, ...]] = {}


def _bernoulli_poly(m: int, x: float) -> float:
    coeffs = _BPOLY_CACHE.get(m)
    if coeffs is None:
        coeffs = _BPOLY_CACHE[m] = _bernoulli_poly_coeffs(m)
    acc = 0.0
    for c in coeffs:
        acc = acc * x + c
    return acc


# --------------------------------------------------------------------------
# exactly-reduced trigonometry (needed so that the reflection cosine
# vanishes exactly at the trivial zeros)
# --------------------------------------------------------------------------

def _sinpi_real(x: float) -> float:
    """sin(pi x) with the argument reduced exactly modulo 2."""
    r = math.fmod(x, 2.0)
    if r < 0.0:
        r += 2.0
    if r < 0.5:
        return math.sin(math.pi * r)
    if r < 1.0:
        return math.cos(math.pi * (r - 0.5))
    if r < 1.5:
        return -math.sin(math.pi * (r - 1.0))
    return -math.cos(math.pi * (r - 1.5))


def _cospi_real(x: float) -> float:
    """cos(pi x) with the argument reduced exactly modulo 2."""
    r = math.fmod(abs(x), 2.0)
    if r < 0.5:
        return math.cos(math.pi * r)
    if r < 1.0:
        return -math.sin(math.pi * (r - 0.5))
    if r < 1.5:
        return -math.cos(math.pi * (r - 1.0))
    return math.sin(math.pi * (r - 1.5))


def _sinpi(z: complex) -> complex:
    x, y = z.real, z.imag
    if y == 0.0:
        return complex(_sinpi_real(x), 0.0)
    return complex(
        _sinpi_real(x) * math.cosh(math.pi * y),
        _cospi_real(x) * math.sinh(math.pi * y),
    )


def _cospi(z: complex) -> complex:
    x, y = z.real, z.imag
    if y == 0.0:
        return complex(_cospi_real(x), 0.0)
    return complex(
        _cospi_real(x) * math.cosh(math.pi * y),
        -_sinpi_real(x) * math.sinh(math.pi * y),
    )


# --------------------------------------------------------------------------
# Gamma
# --------------------------------------------------------------------------

_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def _lanczos_series(z: complex) -> complex:
    # valid for Re z >= 0.5 (callers reflect first)
    acc = complex(_LANCZOS[0])
    for i in range(1, len(_LANCZOS)):
        acc += _LANCZOS[i] / (z - 1.0 + i)
    return acc


def _gamma_positive(z: complex) -> complex:
    # Lanczos for Re z >= 0.5
    zm1 = z - 1.0
    t = zm1 + _LANCZOS_G + 0.5
    return math.sqrt(TWO_PI) * t ** (zm1 + 0.5) * cmath.exp(-t) * _lanczos_series(z)


def _check_gamma_pole(s: complex) -> None:
    n = round(s.real)
    if n <= 0 and math.hypot(s.real - n, s.imag) < 1e-14:
        raise PoleAtNonPositiveInteger(f"gamma pole at s = {n}")


def gamma_value(s: complex) -> complex:
    """Gamma(s) as a bare complex (reflection for Re s < 1/2)."""
    s = complex(s)
    _check_gamma_pole(s)
    if s.real >= 0.5:
        return _gamma_positive(s)
    # Gamma(s) Gamma(1-s) = pi / sin(pi s), with sin reduced exactly
    return math.pi / (_sinpi(s) * _gamma_positive(1.0 - s))


def gamma(s: complex) -> EvalResult:
    """Gamma(s).  Relative accuracy ~1e-13 for |s| <= 170.

    For larger |Im s| (where Gamma itself under/overflows) use ``loggamma``.
    """
    v = gamma_value(s)
    return EvalResult(v, 3e-14 * abs(v), Method.Series)


def loggamma(s: complex) -> complex:
    """log Gamma(s), continuous for Re s >= 0.5.

    For Re s < 0.5 the reflection branch may be off by a multiple of
    2 pi i; it is meant to be exponentiated (or combined into exponent
    sums), where that slack is harmless.
    """
    s = complex(s)
    _check_gamma_pole(s)
    if s.real >= 0.5:
        zm1 = s - 1.0
        t = zm1 + _LANCZOS_G + 0.5
        return (
            0.5 * LOG_TWO_PI
            + (zm1 + 0.5) * cmath.log(t)
            - t
            + cmath.log(_lanczos_series(s))
        )
    return math.log(math.pi) - cmath.log(_sinpi(s)) - loggamma(1.0 - s)


# --------------------------------------------------------------------------
# Hurwitz zeta via Euler-Maclaurin
# --------------------------------------------------------------------------

def _em_length(s: complex, cfg: EvalSettings) -> int:
    sig, t = s.real, abs(s.imag)
    if sig >= -1.0:
        return max(20, math.ceil(t), math.ceil(abs(sig)) + 5)
    # Deep in the left half-plane the head terms grow like (n+a)^|sigma|,
    # so a long head loses absolute precision to cancellation against the
    # integral term.  Keep the head just long enough that the Bernoulli
    # corrections decay (2 pi (N+a) comfortably above |sigma| + 2K).
    return max(math.ceil(t), math.ceil(-sig / 6.0) + 6)


def hurwitz_zeta(s: complex, a: AlphaLike, cfg: EvalSettings = DEFAULT_SETTINGS) -> EvalResult:
    """zeta(s, a) for all s != 1, 0 < a <= 1.

    Euler-Maclaurin with head length N = max(20, ceil|Im s|, ceil|Re s|+5)
    (shortened in the left half-plane, see ``_em_length``) and Bernoulli
    corrections through B(2*cfg.bernoulli_order); the error estimate is the
    first omitted correction plus head roundoff.  At non-positive integers
    the series terminates and the exact value -B_{n+1}(a)/(n+1) is used,
    which is what makes the trivial zeros of Q come out at roundoff level.
    """
    s = complex(s)
    alpha = as_alpha(a)
    av = alpha.a
    if abs(s - 1.0) <= 1e-12:
        raise PoleAtOne("hurwitz_zeta pole at s = 1")
    n_int = round(s.real)
    if (n_int <= 0 and abs(s.imag) <= 1e-12 and abs(s.real - n_int) <= 1e-12
            and 1 - n_int <= 31):
        m = 1 - n_int
        val = -_bernoulli_poly(m, av) / m
        drift = abs(s - n_int)
        est = 4.0 * EPS * (1.0 + abs(val)) + 50.0 * drift * (1.0 + abs(val))
        return EvalResult(complex(val, 0.0), est, Method.Series)
    n_head = _em_length(s, cfg)
    if n_head > cfg.max_terms:
        raise TruncationFailure(
            f"Euler-Maclaurin head {n_head} exceeds max_terms={cfg.max_terms}"
        )

    # head sum, Kahan-compensated, tracking the magnitude sum for roundoff
    head = 0j
    comp = 0j
    mag = 0.0
    for n in range(n_head):
        term = (n + av) ** (-s)
        mag += abs(term)
        y = term - comp
        t = head + y
        comp = (t - head) - y
        head = t

    x = n_head + av
    inv_x2 = 1.0 / (x * x)
    integral = x ** (1.0 - s) / (s - 1.0)
    tail = integral + 0.5 * x ** (-s)

    corr = 0j
    corr_mag = 0.0
    rising = s                      # s(s+1)...(s+2k-2), starts at k=1
    power = x ** (-s - 1.0)         # x^(-s-2k+1), starts at k=1
    kmax = cfg.bernoulli_order
    for k in range(1, kmax + 1):
        term = _EM_COEFF[k - 1] * rising * power
        corr += term
        corr_mag += abs(term)
        rising *= (s + (2 * k - 1)) * (s + 2 * k)
        power *= inv_x2
    omitted = abs(_EM_COEFF[kmax] * rising * power)

    value = head + tail + corr
    est = omitted + EPS * (2.0 * mag + 4.0 * abs(integral) * max(1.0, abs(s - 1.0))
                           + 2.0 * corr_mag)
    return EvalResult(value, est, Method.EulerMaclaurin)


def hurwitz_zeta_da(s: complex, a: AlphaLike, cfg: EvalSettings = DEFAULT_SETTINGS) -> EvalResult:
    """d/da zeta(s, a) = -s zeta(s+1, a); central differences at s = 0."""
    s = complex(s)
    alpha = as_alpha(a)
    if abs(s) <= 1e-10:
        # zeta(0, a) = 1/2 - a is linear in a; differentiate numerically
        # (Richardson-extrapolated central difference, h = 1e-6 and h/2).
        h = 1e-6
        d1 = (hurwitz_zeta(s, alpha.a + h, cfg).value
              - hurwitz_zeta(s, alpha.a - h, cfg).value) / (2.0 * h)
        d2 = (hurwitz_zeta(s, alpha.a + h / 2, cfg).value
              - hurwitz_zeta(s, alpha.a - h / 2, cfg).value) / h
        val = (4.0 * d2 - d1) / 3.0
        return EvalResult(val, abs(d2 - d1) + 1e-9, Method.EulerMaclaurin)
    inner = hurwitz_zeta(s + 1.0, alpha, cfg)
    return EvalResult(-s * inner.value, abs(s) * inner.est_error, Method.EulerMaclaurin)


# --------------------------------------------------------------------------
# the symmetric periodic pair P(s,a) and the Z/P/Q triple
# --------------------------------------------------------------------------

def _z_pair(s: complex, alpha: AlphaParam, cfg: EvalSettings) -> EvalResult:
    r1 = hurwitz_zeta(s, alpha.a, cfg)
    if alpha.a == 0.5:
        return EvalResult(2.0 * r1.value, 2.0 * r1.est_error, Method.EulerMaclaurin)
    r2 = hurwitz_zeta(s, 1.0 - alpha.a, cfg)
    return EvalResult(r1.value + r2.value, r1.est_error + r2.est_error,
                      Method.EulerMaclaurin)


def _reflection_prefactor(s: complex) -> complex:
    """2 Gamma(1-s) (2 pi)^(s-1) cos(pi (1-s)/2), cosine reduced exactly.

    Returns 0 exactly when the cosine vanishes (s a negative even integer),
    which is what forces the trivial zeros to come out exact.
    """
    w = 1.0 - s
    c = _cospi(w / 2.0)
    if c == 0.0:
        return 0.0 + 0.0j
    if abs(w) <= 140.0:
        return 2.0 * gamma_value(w) * TWO_PI ** (s - 1.0) * c
    return 2.0 * cmath.exp(loggamma(w) + (s - 1.0) * LOG_TWO_PI) * c


def _periodic_pair_reflect(s: complex, alpha: AlphaParam, cfg: EvalSettings) -> EvalResult:
    pref = _reflection_prefactor(s)
    if pref == 0.0:
        return EvalResult(0.0 + 0.0j, 1e-15, Method.Reflection)
    zr = _z_pair(1.0 - s, alpha, cfg)
    value = pref * zr.value
    est = abs(pref) * zr.est_error + 4.0 * EPS * abs(value)
    return EvalResult(value, est, Method.Reflection)


def _nearest_removable(s: complex) -> float:
    """Distance from s to the removable set {1, 2, 3, ...} of the reflection."""
    n = max(1, round(s.real))
    return math.hypot(s.real - n, s.imag)


def _periodic_pair(s: complex, alpha: AlphaParam, cfg: EvalSettings) -> EvalResult:
    if abs(s) <= 1e-10:
        # P(0, a) = Li_0(z) + Li_0(conj z) = -1 exactly for every 0 < a < 1;
        # the reflection formula has a removable point here (the cosine zero
        # cancels the Z pole), so the closed value is used instead.
        return EvalResult(-1.0 + 0.0j, 10.0 * abs(s) + 1e-15, Method.Series)
    if _nearest_removable(s) < cfg.pole_guard_radius:
        # mean-value recovery on a circle of radius 2 * guard
        r = 2.0 * cfg.pole_guard_radius
        total = 0j
        max_est = 0.0
        vals = []
        for j in range(8):
            node = s + r * cmath.exp(2j * math.pi * j / 8.0)
            res = _periodic_pair_reflect(node, alpha, cfg)
            vals.append(res.value)
            total += res.value
            max_est = max(max_est, res.est_error)
        avg = total / 8.0
        spread = max(abs(v - avg) for v in vals)
        # truncation of the 8-node mean ~ |c_8| r^8; bound c_8 by the
        # first-coefficient scale spread/r (cancellation warning included)
        est = max_est + spread * r ** 7 + 8.0 * EPS * (1.0 + abs(avg))
        return EvalResult(avg, est, Method.CircleAverage)
    return _periodic_pair_reflect(s, alpha, cfg)


def periodic_pair_series(s: complex, a: AlphaLike,
                         tol: float = 1e-13) -> EvalResult:
    """Direct Dirichlet series 2 sum cos(2 pi n a)/n^s, for Re s >= 2 only.

    Independent of the reflection path; used as a cross-check oracle.
    """
    s = complex(s)
    alpha = as_alpha(a)
    sigma = s.real
    if sigma < 2.0:
        raise ValueError("direct periodic series needs Re s >= 2")
    # tail bound 2 sum_{n>N} n^-sigma <= 2 N^(1-sigma)/(sigma-1)
    n_terms = max(16, math.ceil((2.0 / (tol * (sigma - 1.0))) ** (1.0 / (sigma - 1.0))))
    n_terms = min(n_terms, 2_000_000)
    acc = 0j
    for n in range(1, n_terms + 1):
        acc += 2.0 * _cospi_real(math.fmod(2.0 * n * alpha.a, 2.0)) * n ** (-s)
    tail = 2.0 * n_terms ** (1.0 - sigma) / (sigma - 1.0)
    return EvalResult(acc, tail + EPS * n_terms, Method.Series)


def periodic_pair_rational(s: complex, r: int, q: int,
                           cfg: EvalSettings = DEFAULT_SETTINGS) -> EvalResult:
    """P(s, r/q) by the exact root-of-unity decomposition

        P(s, r/q) = q^(-s) sum_{m=1..q} 2 cos(2 pi r m / q) zeta(s, m/q),

    valid for all s != 1.  Independent continuation path for rational a.
    """
    s = complex(s)
    if math.gcd(r, q) != 1:
        raise ValueError("r/q must be in lowest terms")
    acc = 0j
    est = 0.0
    qs = q ** (-s)
    for m in range(1, q + 1):
        coeff = 2.0 * _cospi_real(math.fmod(2.0 * r * m, 2 * q) / q)
        res = hurwitz_zeta(s, Fraction(m, q), cfg)
        acc += coeff * res.value
        est += 2.0 * res.est_error
    return EvalResult(qs * acc, abs(qs) * est, Method.Series)


def zq_eval(s: complex, a: AlphaLike, cfg: EvalSettings = DEFAULT_SETTINGS) -> ZPQ:
    """Z(s,a), P(s,a) and Q(s,a) = (Z+P)/2 in one call.  Requires s != 1."""
    s = complex(s)
    alpha = as_alpha(a, half=True)
    if abs(s - 1.0) <= 1e-12:
        raise PoleAtOne("Z and Q have a simple pole at s = 1")
    z = _z_pair(s, alpha, cfg)
    p = _periodic_pair(s, alpha, cfg)
    q = EvalResult(0.5 * (z.value + p.value),
                   0.5 * (z.est_error + p.est_error),
                   p.method)
    return ZPQ(z, p, q)


def q_value(s: complex, a: AlphaLike, cfg: EvalSettings = DEFAULT_SETTINGS) -> complex:
    """Q(s, a) as a bare complex."""
    return zq_eval(s, a, cfg).q.value


# --------------------------------------------------------------------------
# completed function xi_Q
# --------------------------------------------------------------------------

def _xi_direct(s: complex, alpha: AlphaParam, cfg: EvalSettings) -> EvalResult:
    q = zq_eval(s, alpha, cfg).q
    pref = 0.5 * s * (s - 1.0) * math.pi ** (-s / 2.0) * gamma_value(s / 2.0)
    value = pref * q.value
    return EvalResult(value, abs(pref) * q.est_error + 4.0 * EPS * abs(value),
                      Method.Reflection if q.method is Method.Reflection else q.method)


def _xi_removable_distance(s: complex) -> float:
    # xi is entire; the *formula* degenerates at 0, 1 (pole factors) and at
    # the negative even integers (Gamma(s/2) pole against the trivial zero)
    cands = [math.hypot(s.real, s.imag), math.hypot(s.real - 1.0, s.imag)]
    if s.real < -1.0:
        k = round(s.real / 2.0)
        cands.append(math.hypot(s.real - 2.0 * k, s.imag))
    return min(cands)


def xi_q(s: complex, a: AlphaLike, cfg: EvalSettings = DEFAULT_SETTINGS) -> EvalResult:
    """xi(s, a): entire, of order 1, with xi(s) = xi(1-s), real on sigma = 1/2."""
    s = complex(s)
    alpha = as_alpha(a, half=True)
    if _xi_removable_distance(s) < cfg.pole_guard_radius:
        r = 2.0 * cfg.pole_guard_radius
        total = 0j
        max_est = 0.0
        vals = []
        for j in range(8):
            node = s + r * cmath.exp(2j * math.pi * j / 8.0)
            res = _xi_direct(node, alpha, cfg)
            vals.append(res.value)
            total += res.value
            max_est = max(max_est, res.est_error)
        avg = total / 8.0
        spread = max(abs(v - avg) for v in vals)
        est = max_est + spread * r ** 7 + 8.0 * EPS * (1.0 + abs(avg))
        return EvalResult(avg, est, Method.CircleAverage)
    return _xi_direct(s, alpha, cfg)


# --------------------------------------------------------------------------
# Cauchy-circle derivatives
# --------------------------------------------------------------------------

Evaluator = Callable[[complex], complex]


def deriv_s(f: Evaluator, s: complex, order: int, *, radius: float = 0.1,
            num_nodes: int = 32) -> EvalResult:
    """f^(order)(s) by the trapezoid rule on a circle of the given radius.

    The caller guarantees f is analytic on the closed disk; the rule is
    spectrally accurate, so 32 nodes reach roundoff for well-scaled f.
    ``order`` is 1 or 2.
    """
    if order not in (1, 2):
        raise ValueError("deriv_s supports order 1 or 2")
    s = complex(s)
    acc = 0j
    max_mag = 0.0
    for j in range(num_nodes):
        theta = TWO_PI * j / num_nodes
        node = s + radius * cmath.exp(1j * theta)
        try:
            v = f(node)
        except Exception as exc:
            raise SingularityInDisk(
                f"evaluation failed at derivative node {node}"
            ) from exc
        if isinstance(v, EvalResult):
            v = v.value
        max_mag = max(max_mag, abs(v))
        acc += v * cmath.exp(-1j * order * theta)
    scale = math.factorial(order) / (num_nodes * radius ** order)
    value = scale * acc
    est = math.factorial(order) * max_mag / radius ** order * num_nodes * EPS
    return EvalResult(value, est, Method.Series)
