"""Real-axis zero machinery: grid scans with bisection refinement, the
threshold a0 where the central value Q(1/2, a) changes sign, the Z-zero
curve beta_Z(a) and the trichotomy classifier.

Q(sigma, a) is real for real sigma, has a simple pole at sigma = 1 and the
value Q(0, a) = -1/2; for a above the threshold a0 it is negative on the
whole open interval (0, 1), at a0 it acquires a double zero at 1/2, and
below a0 it crosses zero (at least) twice, symmetrically about 1/2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache

from .errors import BracketFailure, NoSignChange, NumericalError
from .sfcore import (
    AlphaLike,
    DEFAULT_SETTINGS,
    EvalSettings,
    as_alpha,
    hurwitz_zeta,
    q_value,
)

__all__ = [
    "A0_REFERENCE",
    "MultiplicityHint",
    "RealClassification",
    "RealZero",
    "Verdict",
    "classify_real",
    "find_a0",
    "find_beta_z",
    "scan_real_zeros",
]

# first 20 digits of the threshold, used only as a sanity anchor in tests
A0_REFERENCE = 0.11837513961527229358

_TANGENCY_THRESHOLD = 1e-6
_BRACKET_WIDTH = 1e-13


class MultiplicityHint(Enum):
    Simple = "simple"
    DoubleSuspected = "double-suspected"


class Verdict(Enum):
    NoInteriorZeros = "no-interior-zeros"
    DoubleAtHalf = "double-at-half"
    AtLeastTwo = "at-least-two"


@dataclass(frozen=True)
class RealZero:
    sigma: float
    residual: float
    multiplicity_hint: MultiplicityHint
    bracket: tuple[float, float]

    def __post_init__(self):
        lo, hi = self.bracket
        if not lo <= self.sigma <= hi:
            raise ValueError("bracket must contain sigma")


@dataclass(frozen=True)
class RealClassification:
    a: float
    verdict: Verdict
    zeros: tuple[RealZero, ...] = field(default_factory=tuple)


def _q_real(sigma: float, alpha, cfg: EvalSettings) -> float:
    return q_value(complex(sigma), alpha, cfg).real


def _z_real(sigma: float, alpha, cfg: EvalSettings) -> float:
    z = hurwitz_zeta(complex(sigma), alpha.a, cfg).value.real
    return z + hurwitz_zeta(complex(sigma), 1.0 - alpha.a, cfg).value.real


def _zeta_half_em_real(a: float, n_head: int = 24, kmax: int = 15) -> float:
    """zeta(1/2, a) by the same Euler-Maclaurin formula in pure real
    arithmetic: correctly-rounded sqrt per term plus one exact fsum.

    The generic complex-power path carries a few-ulp systematic bias per
    term, which is enough to shift the a0 bisection by ~4e-15; this path
    keeps the threshold accurate to the last couple of ulps.
    """
    from .sfcore import _EM_COEFF

    pieces = [1.0 / math.sqrt(n + a) for n in range(n_head)]
    x = n_head + a
    pieces.append(-2.0 * math.sqrt(x))     # x^(1-s)/(s-1) at s = 1/2
    pieces.append(0.5 / math.sqrt(x))      # half term
    rising = 0.5
    power = x ** -1.5
    inv_x2 = 1.0 / (x * x)
    for k in range(1, kmax + 1):
        pieces.append(_EM_COEFF[k - 1] * rising * power)
        rising *= (0.5 + 2 * k - 1) * (0.5 + 2 * k)
        power *= inv_x2
    return math.fsum(pieces)


def _z_half_real(a: float) -> float:
    return _zeta_half_em_real(a) + _zeta_half_em_real(1.0 - a)


def _bisect_sign_change(f, lo: float, hi: float, flo: float, fhi: float):
    """Plain bisection down to a bracket of width <= 1e-13."""
    while hi - lo > _BRACKET_WIDTH:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        fm = f(mid)
        if fm == 0.0:
            return mid, mid, mid
        if (flo < 0.0) != (fm < 0.0):
            hi, fhi = mid, fm
        else:
            lo, flo = mid, fm
    return lo, 0.5 * (lo + hi), hi


def _refine_tangency(f, lo: float, hi: float):
    """Golden-section minimisation of |f| for a sign-preserving dip."""
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    x1 = hi - inv_phi * (hi - lo)
    x2 = lo + inv_phi * (hi - lo)
    f1, f2 = abs(f(x1)), abs(f(x2))
    for _ in range(80):
        if hi - lo <= 1e-12:
            break
        if f1 < f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - inv_phi * (hi - lo)
            f1 = abs(f(x1))
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + inv_phi * (hi - lo)
            f2 = abs(f(x2))
    mid = 0.5 * (lo + hi)
    return mid, abs(f(mid))


def _scan_function(f, lo: float, hi: float, grid: int) -> list[RealZero]:
    xs = [lo + (hi - lo) * i / grid for i in range(grid + 1)]
    vals = [f(x) for x in xs]
    zeros: list[RealZero] = []
    for i in range(grid):
        x0, x1 = xs[i], xs[i + 1]
        v0, v1 = vals[i], vals[i + 1]
        if v0 == 0.0:
            zeros.append(RealZero(x0, 0.0, MultiplicityHint.Simple, (x0, x0)))
            continue
        if (v0 < 0.0) != (v1 < 0.0):
            blo, mid, bhi = _bisect_sign_change(f, x0, x1, v0, v1)
            zeros.append(RealZero(mid, abs(f(mid)), MultiplicityHint.Simple,
                                  (blo, bhi)))
    # near-tangency: interior |f| minima below threshold without sign change
    for i in range(1, grid):
        ai, bi, ci = abs(vals[i - 1]), abs(vals[i]), abs(vals[i + 1])
        if bi < _TANGENCY_THRESHOLD and bi <= ai and bi <= ci:
            same_sign = (vals[i - 1] < 0.0) == (vals[i + 1] < 0.0)
            if same_sign and not any(xs[i - 1] <= z.sigma <= xs[i + 1] for z in zeros):
                sigma, resid = _refine_tangency(f, xs[i - 1], xs[i + 1])
                zeros.append(RealZero(sigma, resid, MultiplicityHint.DoubleSuspected,
                                      (xs[i - 1], xs[i + 1])))
    zeros.sort(key=lambda z: z.sigma)
    return zeros


def scan_real_zeros(a: AlphaLike, lo: float, hi: float, grid: int = 1024,
                    cfg: EvalSettings = DEFAULT_SETTINGS) -> list[RealZero]:
    """Bracket and bisect the real zeros of Q(., a) on [lo, hi].

    The pole at sigma = 1 is handled by splitting the interval at 1 +- 1e-6.
    Sign changes are refined to brackets of width <= 1e-13; local minima of
    |Q| below 1e-6 without a sign change are reported as DoubleSuspected.
    """
    if grid < 64:
        raise ValueError("grid must be >= 64")
    if not lo < hi:
        raise ValueError("need lo < hi")
    alpha = as_alpha(a, half=True)
    pieces = []
    if lo < 1.0 < hi:
        pieces = [(lo, 1.0 - 1e-6), (1.0 + 1e-6, hi)]
    else:
        pieces = [(lo, hi)]
    found: list[RealZero] = []
    f = lambda x: _q_real(x, alpha, cfg)
    for plo, phi in pieces:
        if phi <= plo:
            continue
        n = max(64, int(grid * (phi - plo) / (hi - lo)))
        found.extend(_scan_function(f, plo, phi, n))
    found.sort(key=lambda z: z.sigma)
    return found


@lru_cache(maxsize=8)
def _find_a0_cached(tol: float) -> float:
    f = _z_half_real
    lo, hi = 0.05, 1.0 / 6.0
    flo, fhi = f(lo), f(hi)
    if not (flo > 0.0 and fhi < 0.0):
        raise BracketFailure(
            f"Z(1/2, a) endpoint signs {flo:+.3e}, {fhi:+.3e} do not bracket"
        )
    # Z(1/2, .) is strictly decreasing, so bisection is safe; push to the
    # noise floor (well below tol) so the residual check has slack.
    width = max(min(tol, 1e-16), 1e-17)
    while hi - lo > width:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        fm = f(mid)
        if fm == 0.0:
            return mid
        if fm > 0.0:
            lo = mid
        else:
            hi = mid
    a0 = 0.5 * (lo + hi)
    if abs(f(a0)) > 1e-11:
        raise NumericalError("a0 bisection failed to drive |Z(1/2, a0)| below 1e-11")
    return a0


def find_a0(tol: float = 1e-12, cfg: EvalSettings = DEFAULT_SETTINGS) -> float:
    """The unique a0 in (0, 1/6) with Z(1/2, a0) = 0 (equivalently
    Q(1/2, a0) = 0, since the reflection factor equals 1 at s = 1/2).

    Bisection on the strictly decreasing a -> Z(1/2, a) over [0.05, 1/6];
    the result satisfies |Z(1/2, a0)| <= 1e-11.
    """
    if tol < 1e-13:
        raise ValueError("tol must be >= 1e-13")
    return _find_a0_cached(tol)


def find_beta_z(a: AlphaLike, cfg: EvalSettings = DEFAULT_SETTINGS) -> RealZero:
    """The unique interior zero beta_Z(a) of Z(sigma, a), for 0 < a < 1/6.

    Z(0, a) = 0 exactly, so the scan starts at sigma = 0.01.  For a >= 1/6
    the function is negative throughout (0, 1) and NoSignChange is raised.
    """
    alpha = as_alpha(a, half=True)
    f = lambda x: _z_real(x, alpha, cfg)
    zeros = _scan_function(f, 0.01, 1.0 - 1e-6, 512)
    zeros = [z for z in zeros if z.multiplicity_hint is MultiplicityHint.Simple]
    if not zeros:
        raise NoSignChange(
            f"Z(sigma, {alpha.a}) has no sign change in (0, 1); "
            "an interior zero exists only for a < 1/6"
        )
    return zeros[0]


def classify_real(a: AlphaLike, grid: int = 2048,
                  cfg: EvalSettings = DEFAULT_SETTINGS) -> RealClassification:
    """Trichotomy verdict for the interior real zeros of Q(., a) on (0, 1).

    The verdict comes from comparing a against the computed threshold a0
    (with a +-1e-9 window for the double-zero case, since binary64 cannot
    hold a0 exactly); the zeros list reports what the grid scan found.
    """
    alpha = as_alpha(a, half=True)
    a0 = find_a0(cfg=cfg)
    zeros = tuple(scan_real_zeros(alpha, 1e-4, 1.0 - 1e-4, grid, cfg))
    if abs(alpha.a - a0) <= 1e-9:
        verdict = Verdict.DoubleAtHalf
        # at binary64 the double zero shows up either as a tangency or as a
        # pair of crossings within ~1e-7 of 1/2; report it as one double
        near = [z for z in zeros if abs(z.sigma - 0.5) <= 1e-6]
        rest = [z for z in zeros if abs(z.sigma - 0.5) > 1e-6]
        if near:
            lo = min(z.bracket[0] for z in near)
            hi = max(z.bracket[1] for z in near)
            merged = RealZero(sigma=0.5, residual=max(z.residual for z in near),
                              multiplicity_hint=MultiplicityHint.DoubleSuspected,
                              bracket=(min(lo, 0.5), max(hi, 0.5)))
            zeros = tuple(sorted(rest + [merged], key=lambda z: z.sigma))
    elif alpha.a > a0:
        verdict = Verdict.NoInteriorZeros
    else:
        verdict = Verdict.AtLeastTwo
    return RealClassification(a=alpha.a, verdict=verdict, zeros=zeros)
