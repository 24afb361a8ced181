"""Argument-principle winding counts, the non-real zero census N(T),
the zero-counting main-term comparison, critical-line sign scanning and
quadtree zero isolation.

The winding count walks the rectangle boundary counterclockwise, bisecting
every segment whose phase increment exceeds pi/2, so no 2 pi slip can occur
while the boundary modulus stays above the tracked minimum.  Q has a simple
pole at s = 1; a contour enclosing it therefore reports (zeros - 1), which
``count_nonreal`` corrects for explicitly.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional

from .errors import (
    NonIntegerWinding,
    UnresolvedCluster,
    ZeroOnBoundary,
)
from .identities import zero_free_abscissa
from .realzeros import MultiplicityHint, scan_real_zeros
from .sfcore import (
    AlphaLike,
    DEFAULT_SETTINGS,
    EvalSettings,
    as_alpha,
    deriv_s,
    q_value,
    xi_q,
)

__all__ = [
    "Rectangle",
    "RvmReport",
    "WindingResult",
    "ZeroMethod",
    "ZeroRecord",
    "count_nonreal",
    "hardy_scan",
    "locate_zeros",
    "rvm_compare",
    "winding_count",
]

_MIN_BOUNDARY_MODULUS = 1e-10
_SNAP_TOLERANCE = 0.1
_MAX_SEGMENT_DEPTH = 48


@dataclass(frozen=True)
class Rectangle:
    sigma_lo: float
    sigma_hi: float
    t_lo: float
    t_hi: float

    def __post_init__(self):
        if not (self.sigma_lo < self.sigma_hi and self.t_lo < self.t_hi):
            raise ValueError("rectangle must have positive extent")

    def corners(self) -> list[complex]:
        return [
            complex(self.sigma_lo, self.t_lo),
            complex(self.sigma_hi, self.t_lo),
            complex(self.sigma_hi, self.t_hi),
            complex(self.sigma_lo, self.t_hi),
        ]

    def contains(self, s: complex, margin: float = 0.0) -> bool:
        return (self.sigma_lo - margin <= s.real <= self.sigma_hi + margin
                and self.t_lo - margin <= s.imag <= self.t_hi + margin)

    def distance_to(self, s: complex) -> float:
        dx = max(self.sigma_lo - s.real, s.real - self.sigma_hi, 0.0)
        dy = max(self.t_lo - s.imag, s.imag - self.t_hi, 0.0)
        return math.hypot(dx, dy)

    def perturbed(self, eps: float) -> "Rectangle":
        return Rectangle(self.sigma_lo - eps, self.sigma_hi + eps,
                         self.t_lo - eps, self.t_hi + eps)


@dataclass(frozen=True)
class WindingResult:
    """Winding number of Q around a rectangle boundary.

    ``count`` is the argument-principle value zeros-minus-poles, so it is
    non-negative for pole-free rectangles but -1 lower when the contour
    encloses s = 1.
    """

    count: int
    boundary_samples: int
    min_boundary_modulus: float
    perturbed: bool


class _BoundaryWalk:
    """Accumulates phase along a polyline with adaptive bisection."""

    def __init__(self, f: Callable[[complex], complex]):
        self.f = f
        self.samples = 0
        self.min_modulus = math.inf

    def value(self, z: complex) -> complex:
        v = self.f(z)
        self.samples += 1
        m = abs(v)
        if m < self.min_modulus:
            self.min_modulus = m
        if m < _MIN_BOUNDARY_MODULUS:
            raise ZeroOnBoundary(
                f"|Q| = {m:.3e} at {z} on the contour"
            )
        return v

    def phase_along(self, z0: complex, v0: complex, z1: complex, v1: complex,
                    depth: int = 0) -> float:
        dphi = cmath.phase(v1 / v0)
        if abs(dphi) <= 0.5 * math.pi:
            return dphi
        if depth >= _MAX_SEGMENT_DEPTH:
            raise NonIntegerWinding(
                f"phase step {dphi:.3f} not resolvable near {z0}"
            )
        zm = 0.5 * (z0 + z1)
        vm = self.value(zm)
        return (self.phase_along(z0, v0, zm, vm, depth + 1)
                + self.phase_along(zm, vm, z1, v1, depth + 1))


def _winding_once(rect: Rectangle, f: Callable[[complex], complex],
                  base_step: float) -> tuple[float, int, float]:
    walk = _BoundaryWalk(f)
    corners = rect.corners()
    total = 0.0
    for i in range(4):
        z0, z1 = corners[i], corners[(i + 1) % 4]
        n_seg = max(2, math.ceil(abs(z1 - z0) / base_step))
        pts = [z0 + (z1 - z0) * k / n_seg for k in range(n_seg + 1)]
        vals = [walk.value(p) for p in pts]
        for k in range(n_seg):
            total += walk.phase_along(pts[k], vals[k], pts[k + 1], vals[k + 1])
    return total, walk.samples, walk.min_modulus


def winding_count(rect: Rectangle, a: AlphaLike,
                  cfg: EvalSettings = DEFAULT_SETTINGS, *,
                  base_step: float = 0.5,
                  auto_perturb: bool = True) -> WindingResult:
    """Total argument change of Q(., a) around the rectangle over 2 pi.

    The boundary must stay clear of zeros (and of s = 1); if a zero is hit
    the rectangle is retried once, expanded by 1e-3.  The summed phase must
    land within 0.1 of an integer, else NonIntegerWinding is raised.
    """
    alpha = as_alpha(a, half=True)
    f = lambda z: q_value(z, alpha, cfg)
    perturbed = False
    try:
        total, samples, min_mod = _winding_once(rect, f, base_step)
    except ZeroOnBoundary:
        if not auto_perturb:
            raise
        perturbed = True
        rect2 = rect.perturbed(1e-3)
        total, samples, min_mod = _winding_once(rect2, f, base_step)
    w = total / (2.0 * math.pi)
    k = round(w)
    if abs(w - k) > _SNAP_TOLERANCE:
        raise NonIntegerWinding(f"winding {w:.6f} does not snap to an integer")
    return WindingResult(count=int(k), boundary_samples=samples,
                         min_boundary_modulus=min_mod, perturbed=perturbed)


def count_nonreal(T: float, a: AlphaLike,
                  cfg: EvalSettings = DEFAULT_SETTINGS, *,
                  base_step: float = 0.5) -> int:
    """N(T, Q(., a)): non-real zeros with |Im s| < T.

    Counts by winding over [1 - sigma_a, sigma_a] x [-T, T] (all non-real
    zeros live in that strip by the zero-free bound plus the functional
    equation), adds 1 for the enclosed simple pole at s = 1, and subtracts
    the real zeros found inside the strip (trivial zeros and, below the
    threshold a0, the interior ones; a suspected double counts twice).
    If T is the ordinate of a zero, T is nudged by +1e-3 and retried.
    """
    if not T > 0.0:
        raise ValueError("census needs T > 0")
    alpha = as_alpha(a, half=True)
    sigma_a = zero_free_abscissa(alpha, 0.0, cfg).sigma_a
    t_cap = T
    wind: Optional[WindingResult] = None
    for _ in range(3):
        rect = Rectangle(1.0 - sigma_a, sigma_a, -t_cap, t_cap)
        try:
            wind = winding_count(rect, alpha, cfg, base_step=base_step,
                                 auto_perturb=False)
            break
        except ZeroOnBoundary:
            t_cap += 1e-3
    if wind is None:
        raise ZeroOnBoundary(f"census boundary kept hitting zeros near T = {T}")
    reals = scan_real_zeros(alpha, 1.0 - sigma_a + 1e-6, sigma_a - 1e-6,
                            grid=512, cfg=cfg)
    n_real = sum(2 if z.multiplicity_hint is MultiplicityHint.DoubleSuspected
                 else 1 for z in reals)
    return wind.count + 1 - n_real


@dataclass(frozen=True)
class RvmReport:
    """Empirical census against the zero-counting main term
    (T/pi) log T - (T/pi) log(2 e pi a^2)."""

    T: float
    a: float
    empirical_N: int
    main_term: float
    diff: float
    diff_over_logT: float


def rvm_main_term(T: float, a: float) -> float:
    return (T / math.pi) * (math.log(T) - math.log(2.0 * math.e * math.pi * a * a))


def rvm_compare(T: float, a: AlphaLike,
                cfg: EvalSettings = DEFAULT_SETTINGS, *,
                verify: bool = True) -> RvmReport:
    """Census vs main term for desk-scale T (5 <= T <= 100).

    ``verify=True`` recounts with doubled boundary sampling and insists the
    two counts agree exactly.
    """
    if not 5.0 <= T <= 100.0:
        raise ValueError("rvm_compare is calibrated for T in [5, 100]")
    alpha = as_alpha(a, half=True)
    n_emp = count_nonreal(T, alpha, cfg)
    if verify:
        n_check = count_nonreal(T, alpha, cfg, base_step=0.25)
        if n_check != n_emp:
            raise NonIntegerWinding(
                f"census not reproducible: {n_emp} vs {n_check} at doubled sampling"
            )
    main = rvm_main_term(T, alpha.a)
    diff = n_emp - main
    return RvmReport(T=T, a=alpha.a, empirical_N=n_emp, main_term=main,
                     diff=diff, diff_over_logT=diff / math.log(T))


class ZeroMethod(Enum):
    HardyScan = "hardy-scan"
    Subdivision = "subdivision"


@dataclass(frozen=True)
class ZeroRecord:
    s: complex
    method: ZeroMethod
    residual: float
    newton_refined: bool


def hardy_scan(a: AlphaLike, t_lo: float, t_hi: float, step: float = 0.1,
               cfg: EvalSettings = DEFAULT_SETTINGS) -> list[ZeroRecord]:
    """Sign-change scan of the real quantity xi(1/2 + it, a).

    Brackets are bisected to |dt| <= 1e-9 (in practice to ~1e-12); each
    zero is recorded with the residual |Q(1/2 + it)|.  Tangential zeros
    without a sign change are missed by construction.
    """
    if step > 0.25:
        raise ValueError("hardy scan needs step <= 0.25")
    if t_lo < 0.0 or t_hi <= t_lo:
        raise ValueError("need 0 <= t_lo < t_hi")
    alpha = as_alpha(a, half=True)

    def xi_line(t: float) -> float:
        return xi_q(complex(0.5, t), alpha, cfg).value.real

    n = max(2, math.ceil((t_hi - t_lo) / step))
    ts = [t_lo + (t_hi - t_lo) * i / n for i in range(n + 1)]
    vals = [xi_line(t) for t in ts]
    records: list[ZeroRecord] = []
    for i in range(n):
        v0, v1 = vals[i], vals[i + 1]
        if v0 == 0.0:
            t_star = ts[i]
        elif (v0 < 0.0) != (v1 < 0.0):
            lo, hi, flo = ts[i], ts[i + 1], v0
            while hi - lo > 1e-12:
                mid = 0.5 * (lo + hi)
                if mid <= lo or mid >= hi:
                    break
                fm = xi_line(mid)
                if fm == 0.0:
                    lo = hi = mid
                    break
                if (flo < 0.0) != (fm < 0.0):
                    hi = mid
                else:
                    lo, flo = mid, fm
            t_star = 0.5 * (lo + hi)
        else:
            continue
        resid = abs(q_value(complex(0.5, t_star), alpha, cfg))
        records.append(ZeroRecord(s=complex(0.5, t_star),
                                  method=ZeroMethod.HardyScan,
                                  residual=resid, newton_refined=False))
    return records


# fractions tried for subdivision split lines; slightly off-centre nudges
# keep zeros (which love sigma = 1/2) off the cell edges
_SPLIT_FRACTIONS = (0.5, 0.53173, 0.46827, 0.55511, 0.44489)


def _newton_refine(s0: complex, alpha, cfg: EvalSettings, rect: Rectangle,
                   pole_dist: float) -> Optional[complex]:
    s = s0
    for _ in range(50):
        radius = min(0.1, 0.8 * abs(s - 1.0), 0.8 * pole_dist)
        radius = max(radius, 1e-3)
        try:
            dq = deriv_s(lambda z: q_value(z, alpha, cfg), s, 1, radius=radius)
        except Exception:
            return None
        qv = q_value(s, alpha, cfg)
        if dq.value == 0.0:
            return None
        step = qv / dq.value
        s = s - step
        if not rect.contains(s, margin=0.5):
            return None
        if abs(step) <= 1e-12:
            return s
    return None


def locate_zeros(rect: Rectangle, a: AlphaLike, max_depth: int = 10,
                 cfg: EvalSettings = DEFAULT_SETTINGS) -> list[ZeroRecord]:
    """Isolate the zeros of Q inside a rectangle by quadtree subdivision.

    Winding-count driven: cells with count 0 are pruned; a cell with count 1
    is handed to Newton iteration (derivative from a Cauchy circle) once it
    is small, with further subdivision as the fallback; a cell still holding
    two or more zeros at max_depth raises UnresolvedCluster.  The rectangle
    must avoid s = 1.
    """
    if max_depth > 12:
        raise ValueError("max_depth is capped at 12")
    alpha = as_alpha(a, half=True)
    if rect.distance_to(complex(1.0, 0.0)) < 0.999e-3:
        raise ValueError("locate_zeros rectangle must avoid s = 1")
    records: list[ZeroRecord] = []

    def winding_with_retry(r: Rectangle) -> int:
        last = None
        for eps in (0.0, 7.1e-4, -6.3e-4):
            try:
                rr = r if eps == 0.0 else r.perturbed(eps)
                return winding_count(rr, alpha, cfg, base_step=0.25,
                                     auto_perturb=False).count
            except (ZeroOnBoundary, NonIntegerWinding) as exc:
                last = exc
        raise last

    def split(r: Rectangle, frac: float) -> list[Rectangle]:
        sm = r.sigma_lo + frac * (r.sigma_hi - r.sigma_lo)
        tm = r.t_lo + frac * (r.t_hi - r.t_lo)
        return [
            Rectangle(r.sigma_lo, sm, r.t_lo, tm),
            Rectangle(sm, r.sigma_hi, r.t_lo, tm),
            Rectangle(r.sigma_lo, sm, tm, r.t_hi),
            Rectangle(sm, r.sigma_hi, tm, r.t_hi),
        ]

    def recurse(r: Rectangle, count: int, depth: int):
        if count == 0:
            return
        diag = math.hypot(r.sigma_hi - r.sigma_lo, r.t_hi - r.t_lo)
        if count == 1 and (diag <= 0.2 or depth >= max_depth):
            centre = complex(0.5 * (r.sigma_lo + r.sigma_hi),
                             0.5 * (r.t_lo + r.t_hi))
            pole_dist = abs(centre - 1.0)
            refined = _newton_refine(centre, alpha, cfg, rect, pole_dist)
            if refined is not None and r.contains(refined, margin=1e-9):
                resid = abs(q_value(refined, alpha, cfg))
                if resid <= 1e-8:
                    records.append(ZeroRecord(s=refined,
                                              method=ZeroMethod.Subdivision,
                                              residual=resid,
                                              newton_refined=True))
                    return
            # Newton failed or escaped the cell: bisected subdivision
        if depth >= max_depth:
            if count == 1:
                raise NonIntegerWinding(
                    f"zero in {r} resisted Newton refinement at max depth"
                )
            raise UnresolvedCluster(f"{count} zeros left in minimal cell {r}")
        # children are counted WITHOUT boundary perturbation: expanding a
        # child would break the exact partition of the parent, so a split
        # line that hits a zero is handled by moving the split instead
        last_exc: Exception | None = None
        for frac in _SPLIT_FRACTIONS:
            try:
                children = split(r, frac)
                counts = [winding_count(c, alpha, cfg, base_step=0.25,
                                        auto_perturb=False).count
                          for c in children]
                break
            except (ZeroOnBoundary, NonIntegerWinding) as exc:
                last_exc = exc
        else:
            raise last_exc
        if sum(counts) != count:
            raise NonIntegerWinding(
                f"subdivision of {r} lost zeros: {counts} vs parent {count}"
            )
        for child, c in zip(children, counts):
            recurse(child, c, depth + 1)

    total = winding_with_retry(rect)
    recurse(rect, total, 0)
    records.sort(key=lambda z: (z.s.imag, z.s.real))
    return records
