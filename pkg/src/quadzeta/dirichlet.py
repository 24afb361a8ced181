"""Dirichlet characters mod q, twisted Gauss sums, L-functions via Hurwitz
combinations, and the character decomposition of Q(s, r/q).

Characters are built from the group structure of (Z/qZ)^x: a primitive
root for each odd prime-power factor and the {-1} x <5> decomposition for
powers of two.  Every value is a root of unity held as an exact phase
fraction until the final complex conversion, so parities and the small
Gauss sums come out exact.

The decomposition implemented by ``q_via_characters`` is

    2 Q(s, r/q) = q^s / phi(q) * sum_{chi mod q} (1 + chi(-1))
                                  conj(chi)(r) L(s, chi)
                + sum_{d | q} d^(-s) / phi(q/d) * sum_{chi mod q/d}
                      (1 + chi(-1)) G_r(conj chi; q/d) L(s, chi)

with G_r(conj chi; m) = sum_{n=1..m} conj(chi)(n) e^{2 pi i r n / m}.
The first sum is the Hurwitz pair, the second the periodic pair; the
d > 1 terms collect the residues sharing a factor with q, which a single
sum over characters mod q cannot see.  (Restricting to d = 1 reproduces
the shorter formula sometimes quoted for this identity, but that version
is numerically refuted: at s = 2, r = 1, q = 4 it misses Q by about 2%.)
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import PoleAtOne
from .sfcore import (
    DEFAULT_SETTINGS,
    EvalResult,
    EvalSettings,
    Method,
    _cospi_real,
    _sinpi_real,
    hurwitz_zeta,
    zq_eval,
)

__all__ = [
    "Character",
    "DecompositionReport",
    "dirichlet_l",
    "enumerate_characters",
    "gauss_sum",
    "q_via_characters",
]

MAX_MODULUS = 64


def _root_of_unity(frac: Fraction) -> complex:
    """e^{2 pi i frac} with the phase reduced exactly (so +-1, +-i are exact)."""
    t = 2.0 * float(frac % 1)
    return complex(_cospi_real(t), _sinpi_real(t))


def _factorize(q: int) -> list[tuple[int, int]]:
    out = []
    n = q
    for p in range(2, q + 1):
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
    if n > 1:
        out.append((n, 1))
    return out


def _primitive_root(pe: int, phi: int) -> int:
    fac = [f for f, _ in _factorize(phi)]
    for g in range(2, pe):
        if math.gcd(g, pe) != 1:
            continue
        if all(pow(g, phi // f, pe) != 1 for f in fac):
            return g
    raise ArithmeticError(f"no primitive root mod {pe}")


def _crt_lift(residue: int, modulus: int, q: int) -> int:
    """The element of (Z/qZ)^x that is `residue` mod `modulus` and 1 mod q/modulus."""
    other = q // modulus
    if other == 1:
        return residue % q
    inv = pow(modulus, -1, other)
    return (residue * other * pow(other, -1, modulus) + 1 * modulus * inv) % q


def _group_generators(q: int) -> list[tuple[int, int]]:
    """Generators of (Z/qZ)^x as (lifted generator, order) pairs."""
    gens: list[tuple[int, int]] = []
    for p, e in _factorize(q):
        pe = p ** e
        if p == 2:
            if e == 1:
                continue
            if e == 2:
                gens.append((_crt_lift(3, pe, q), 2))
            else:
                gens.append((_crt_lift(pe - 1, pe, q), 2))
                gens.append((_crt_lift(5, pe, q), 2 ** (e - 2)))
        else:
            phi = pe - pe // p
            g = _primitive_root(pe, phi)
            gens.append((_crt_lift(g, pe, q), phi))
    return gens


@dataclass(frozen=True)
class Character:
    """A Dirichlet character mod q as its value table on residues 0..q-1."""

    modulus: int
    values: tuple[complex, ...]
    is_principal: bool
    parity: int  # chi(-1)

    def __call__(self, n: int) -> complex:
        return self.values[n % self.modulus]

    def conj(self, n: int) -> complex:
        return self.values[n % self.modulus].conjugate()


def _euler_phi(q: int) -> int:
    phi = q
    for p, _ in _factorize(q):
        phi -= phi // p
    return phi


@lru_cache(maxsize=None)
def enumerate_characters(q: int) -> tuple[Character, ...]:
    """All phi(q) Dirichlet characters mod q, principal first.

    Each table is verified completely multiplicative on coprime residues
    before being returned.  q is capped at 64 so the exhaustive check
    stays cheap.
    """
    if not 1 <= q <= MAX_MODULUS:
        raise ValueError(f"modulus must be in 1..{MAX_MODULUS}")
    if q == 1:
        return (Character(1, (complex(1.0),), True, 1),)
    gens = _group_generators(q)
    orders = [d for _, d in gens]

    # discrete logs of every coprime residue with respect to the generators
    dlog: dict[int, tuple[int, ...]] = {}

    def _walk(i: int, residue: int, exps: tuple[int, ...]):
        if i == len(gens):
            dlog[residue] = exps
            return
        g, d = gens[i]
        cur = residue
        for x in range(d):
            _walk(i + 1, cur, exps + (x,))
            cur = (cur * g) % q
    _walk(0, 1, ())
    phi = _euler_phi(q)
    if len(dlog) != phi:
        raise ArithmeticError(f"group enumeration mod {q} found {len(dlog)} units")

    coprime = sorted(dlog)
    chars = []

    def _char_indices(i: int, ks: tuple[int, ...]):
        if i == len(gens):
            yield ks
            return
        for k in range(orders[i]):
            yield from _char_indices(i + 1, ks + (k,))

    # enumeration order is deterministic and puts the principal character
    # (all exponents zero) first
    for ks in _char_indices(0, ()):
        values = [complex(0.0)] * q
        for n in coprime:
            phase = sum(Fraction(k * x, d) for k, x, d in zip(ks, dlog[n], orders))
            values[n] = _root_of_unity(phase)
        parity = 1 if values[q - 1].real > 0 else -1
        chars.append(Character(
            modulus=q,
            values=tuple(values),
            is_principal=all(k == 0 for k in ks),
            parity=parity,
        ))

    for chi in chars:
        for m in coprime:
            for n in coprime:
                if abs(chi(m * n) - chi(m) * chi(n)) > 1e-12:
                    raise ArithmeticError(
                        f"character table mod {q} not multiplicative at ({m},{n})"
                    )
    return tuple(chars)


def gauss_sum(chi: Character, r: int) -> complex:
    """The r-twisted Gauss sum sum_{n=1..q} conj(chi)(n) e^{2 pi i r n / q}."""
    q = chi.modulus
    if math.gcd(r, q) != 1:
        raise ValueError("the twist r must be coprime to the modulus")
    acc = complex(0.0)
    for n in range(1, q + 1):
        cv = chi.conj(n)
        if cv != 0.0:
            acc += cv * _root_of_unity(Fraction(r * n, q))
    return acc


def dirichlet_l(s: complex, chi: Character,
                cfg: EvalSettings = DEFAULT_SETTINGS) -> EvalResult:
    """L(s, chi) = q^(-s) sum_{m=1..q} chi(m) zeta(s, m/q), all s by
    Hurwitz continuation (simple pole at s = 1 for principal chi only).

    For non-principal chi near s = 1 the individual Hurwitz poles cancel
    (sum chi(m) = 0); the finite value is recovered by the same 8-point
    circle average the other evaluators use at removable points.
    """
    s = complex(s)
    q = chi.modulus
    if chi.is_principal:
        # genuine pole only at s = 1 itself; nearby values are just large
        return _dirichlet_l_direct(s, chi, cfg)
    if abs(s - 1.0) < cfg.pole_guard_radius:
        r = 2.0 * cfg.pole_guard_radius
        total = complex(0.0)
        max_est = 0.0
        vals = []
        for j in range(8):
            node = s + r * cmath.exp(2j * math.pi * j / 8.0)
            res = _dirichlet_l_direct(node, chi, cfg)
            vals.append(res.value)
            total += res.value
            max_est = max(max_est, res.est_error)
        avg = total / 8.0
        spread = max(abs(v - avg) for v in vals)
        return EvalResult(avg, max_est + spread * r ** 7 + 1e-15,
                          Method.CircleAverage)
    return _dirichlet_l_direct(s, chi, cfg)


def _dirichlet_l_direct(s: complex, chi: Character,
                        cfg: EvalSettings) -> EvalResult:
    q = chi.modulus
    if chi.is_principal and abs(s - 1.0) <= 1e-12:
        raise PoleAtOne("L(s, principal chi) has a pole at s = 1")
    acc = complex(0.0)
    est = 0.0
    for m in range(1, q + 1):
        cv = chi(m)
        if cv != 0.0:
            res = hurwitz_zeta(s, Fraction(m, q), cfg)
            acc += cv * res.value
            est += res.est_error
    qs = q ** (-s)
    return EvalResult(qs * acc, abs(qs) * est, Method.Series)


def _divisors(q: int) -> list[int]:
    return [d for d in range(1, q + 1) if q % d == 0]


@dataclass(frozen=True)
class DecompositionReport:
    s: complex
    r: int
    q: int
    lhs: complex
    rhs: complex
    rel_residual: float


def q_via_characters(s: complex, r: int, q: int,
                     cfg: EvalSettings = DEFAULT_SETTINGS) -> DecompositionReport:
    """Check Q(s, r/q) against its character decomposition (module docstring).

    Only even characters contribute (the parity factor 1 + chi(-1) kills
    the odd ones).  lhs is the direct evaluator; rhs sums L-functions over
    all characters modulo each divisor-complement q/d.
    """
    s = complex(s)
    if math.gcd(r, q) != 1:
        raise ValueError("need gcd(r, q) = 1")
    if not 0 < Fraction(r, q) <= Fraction(1, 2):
        raise ValueError("need 0 < r/q <= 1/2")
    if abs(s - 1.0) <= 1e-12:
        raise PoleAtOne("decomposition undefined at the pole s = 1")

    lhs = zq_eval(s, Fraction(r, q), cfg).q.value

    # Hurwitz pair: q^s / phi(q) * sum over chi mod q
    z_part = complex(0.0)
    for chi in enumerate_characters(q):
        if chi.parity != 1:
            continue
        z_part += 2.0 * chi.conj(r) * dirichlet_l(s, chi, cfg).value
    z_part *= q ** s / _euler_phi(q)

    # periodic pair: divisor-completed sum (non-coprime residues enter
    # through the characters modulo q/d)
    p_part = complex(0.0)
    for d in _divisors(q):
        qd = q // d
        inner = complex(0.0)
        for chi in enumerate_characters(qd):
            if chi.parity != 1:
                continue
            inner += 2.0 * gauss_sum(chi, r % qd if qd > 1 else 1) \
                * dirichlet_l(s, chi, cfg).value
        p_part += d ** (-s) / _euler_phi(qd) * inner

    rhs = 0.5 * (z_part + p_part)
    rel = abs(lhs - rhs) / max(1.0, abs(lhs), abs(rhs))
    return DecompositionReport(s=s, r=r, q=q, lhs=lhs, rhs=rhs, rel_residual=rel)
