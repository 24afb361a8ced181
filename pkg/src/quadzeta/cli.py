"""Command-line front end.

Subcommands: eval, verify {fe,closed-form,positivity,monotonicity},
scan-real, find-a0, classify, beta-z, count, rvm, hardy, locate, decompose,
export-figure.

Output goes to stdout in csv, json or jsonl form (--format); the payload is
deterministic for a fixed invocation, including the seed.  --out appends
zero records to a line-delimited store (those records carry timestamps and
the tool version; re-runs append, never mutate) or writes the delimited
data of export-figure, whose --plot option additionally renders the curve
to an image file via matplotlib.

Exit codes: 0 success, 1 domain error (e.g. a pole), 2 numerical failure
(e.g. a winding count that does not snap), 3 bad arguments.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import random
import sys
from dataclasses import dataclass
from datetime import datetime, timezone
from typing import Optional

from . import __version__
from .errors import DomainError, NumericalError
from .sfcore import (
    AlphaParam,
    EvalSettings,
    as_alpha,
    deriv_s,
    q_value,
    zq_eval,
)
from .identities import (
    SpecialAlpha,
    closed_form_residual,
    fe_residual,
    positivity_sigma_gt1,
    q_partial_a,
)
from .realzeros import classify_real, find_a0, find_beta_z, scan_real_zeros
from .complexzeros import (
    Rectangle,
    ZeroMethod,
    ZeroRecord,
    count_nonreal,
    hardy_scan,
    locate_zeros,
    rvm_compare,
)
from .dirichlet import q_via_characters

__all__ = ["main", "run_command"]

# the identities-module verification grids
FE_SIGMAS = (-1.5, -0.5, 0.25, 0.75, 2.0, 3.0)
FE_TS = (0.0, 1.0, 5.0, 20.0)
FE_ALPHAS = (0.07, 0.11837513961527229, 1.0 / 6.0, 0.25, 1.0 / 3.0, 0.49, 0.5)
MONO_SIGMAS = tuple(round(0.1 * i, 1) for i in range(1, 10))
MONO_ALPHAS = tuple(round(0.05 * i, 2) for i in range(1, 10))


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit(2); we reserve 2
        raise UsageError(message)


def parse_alpha(text: str) -> AlphaParam:
    """Decimal or exact r/q; fractions keep their exactness for fast paths."""
    try:
        return as_alpha(text if "/" in text else float(text), half=True)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad shift parameter {text!r}: {exc}") from exc


def parse_complex(text: str) -> complex:
    t = text.strip().replace(" ", "").replace("i", "j")
    try:
        return complex(t)
    except ValueError as exc:
        raise UsageError(f"bad complex number {text!r}") from exc


def _cnum(z: complex) -> dict:
    return {"re": z.real, "im": z.imag}


@dataclass
class _Output:
    fmt: str
    out_path: Optional[str]

    def emit(self, payload: dict, rows: list[dict], headers: list[str]):
        """payload: whole-result document (json); rows: tabular view."""
        if self.fmt == "json":
            text = json.dumps(payload, sort_keys=True, allow_nan=True)
            sys.stdout.write(text + "\n")
        elif self.fmt == "jsonl":
            for row in rows:
                sys.stdout.write(json.dumps(row, sort_keys=True) + "\n")
        else:
            buf = io.StringIO()
            writer = csv.DictWriter(buf, fieldnames=headers, lineterminator="\n")
            writer.writeheader()
            for row in rows:
                writer.writerow({k: row.get(k, "") for k in headers})
            sys.stdout.write(buf.getvalue())


def _store_records(path: str, records: list[ZeroRecord], alpha: AlphaParam):
    """Append zero records to the line-delimited store (with timestamps)."""
    stamp = datetime.now(timezone.utc).isoformat()
    with open(path, "a", encoding="utf-8") as fh:
        for rec in records:
            fh.write(json.dumps(_zero_row(rec, alpha, timestamp=stamp),
                                sort_keys=True) + "\n")


def _zero_row(rec: ZeroRecord, alpha: AlphaParam, timestamp=None) -> dict:
    return {
        "a": repr(alpha.a),
        "a_fraction": (f"{alpha.fraction.numerator}/{alpha.fraction.denominator}"
                       if alpha.fraction else None),
        "s_re": rec.s.real,
        "s_im": rec.s.imag,
        "method": rec.method.value,
        "residual": rec.residual,
        "timestamp": timestamp,
        "tool_version": __version__,
    }


def _zero_rows(records: list[ZeroRecord], alpha: AlphaParam) -> list[dict]:
    return [_zero_row(r, alpha) for r in records]


_ZERO_HEADERS = ["a", "a_fraction", "s_re", "s_im", "method", "residual",
                 "timestamp", "tool_version"]


def _settings(args) -> EvalSettings:
    return EvalSettings(abs_tol=args.tol) if args.tol else EvalSettings()


# ---------------------------------------------------------------- commands

def _cmd_eval(args, out: _Output) -> int:
    alpha = parse_alpha(args.a)
    s = parse_complex(args.s)
    trip = zq_eval(s, alpha, _settings(args))
    payload = {
        "s": _cnum(s),
        "a": alpha.a,
        "Z": _cnum(trip.z.value),
        "P": _cnum(trip.p.value),
        "Q": _cnum(trip.q.value),
        "est_error": trip.q.est_error,
        "method": trip.q.method.value,
        "tool_version": __version__,
    }
    rows = [{"quantity": k, "re": getattr(trip, k.lower()).value.real,
             "im": getattr(trip, k.lower()).value.imag,
             "est_error": getattr(trip, k.lower()).est_error,
             "method": getattr(trip, k.lower()).method.value}
            for k in ("Z", "P", "Q")]
    out.emit(payload, rows, ["quantity", "re", "im", "est_error", "method"])
    return 0


def _cmd_find_a0(args, out: _Output) -> int:
    tol = args.tol or 1e-12
    a0 = find_a0(tol)
    payload = {"a0": a0, "tol": tol, "tool_version": __version__}
    out.emit(payload, [{"a0": a0, "tol": tol}], ["a0", "tol"])
    return 0


def _cmd_scan_real(args, out: _Output) -> int:
    alpha = parse_alpha(args.a)
    zeros = scan_real_zeros(alpha, args.lo, args.hi, args.grid, _settings(args))
    rows = [{"sigma": z.sigma, "residual": z.residual,
             "multiplicity_hint": z.multiplicity_hint.value,
             "bracket_lo": z.bracket[0], "bracket_hi": z.bracket[1]}
            for z in zeros]
    payload = {"a": alpha.a, "lo": args.lo, "hi": args.hi, "grid": args.grid,
               "zeros": rows, "tool_version": __version__}
    out.emit(payload, rows,
             ["sigma", "residual", "multiplicity_hint", "bracket_lo", "bracket_hi"])
    return 0


def _cmd_classify(args, out: _Output) -> int:
    alpha = parse_alpha(args.a)
    cls = classify_real(alpha, grid=args.grid, cfg=_settings(args))
    rows = [{"sigma": z.sigma, "residual": z.residual,
             "multiplicity_hint": z.multiplicity_hint.value} for z in cls.zeros]
    payload = {"a": cls.a, "verdict": cls.verdict.value, "zeros": rows,
               "tool_version": __version__}
    out.emit(payload, rows or [{"sigma": "", "residual": "",
                                "multiplicity_hint": cls.verdict.value}],
             ["sigma", "residual", "multiplicity_hint"])
    return 0


def _cmd_beta_z(args, out: _Output) -> int:
    alpha = parse_alpha(args.a)
    z = find_beta_z(alpha, _settings(args))
    payload = {"a": alpha.a, "beta_z": z.sigma, "residual": z.residual,
               "tool_version": __version__}
    out.emit(payload, [{"beta_z": z.sigma, "residual": z.residual}],
             ["beta_z", "residual"])
    return 0


def _cmd_count(args, out: _Output) -> int:
    alpha = parse_alpha(args.a)
    n = count_nonreal(args.T, alpha, _settings(args))
    payload = {"T": args.T, "a": alpha.a, "count": n, "tool_version": __version__}
    out.emit(payload, [{"T": args.T, "a": alpha.a, "count": n}],
             ["T", "a", "count"])
    return 0


def _cmd_rvm(args, out: _Output) -> int:
    alpha = parse_alpha(args.a)
    rep = rvm_compare(args.T, alpha, _settings(args))
    payload = {
        "T": rep.T, "a": rep.a, "empirical_N": rep.empirical_N,
        "main_term": rep.main_term, "diff": rep.diff,
        "diff_over_logT": rep.diff_over_logT, "tool_version": __version__,
    }
    out.emit(payload, [payload],
             ["T", "a", "empirical_N", "main_term", "diff", "diff_over_logT"])
    return 0


def _cmd_hardy(args, out: _Output) -> int:
    alpha = parse_alpha(args.a)
    recs = hardy_scan(alpha, args.t_lo, args.t_hi, args.step, _settings(args))
    rows = _zero_rows(recs, alpha)
    if args.out:
        _store_records(args.out, recs, alpha)
    payload = {"a": alpha.a, "t_lo": args.t_lo, "t_hi": args.t_hi,
               "count": len(recs), "zeros": rows, "tool_version": __version__}
    out.emit(payload, rows, _ZERO_HEADERS)
    return 0


def _cmd_locate(args, out: _Output) -> int:
    alpha = parse_alpha(args.a)
    if args.resume:
        recs = _resume_records(args.resume, alpha, _settings(args))
    else:
        if args.rect is None:
            raise UsageError("locate needs --rect sigma_lo,sigma_hi,t_lo,t_hi "
                             "(or --resume FILE)")
        try:
            lo, hi, tlo, thi = (float(x) for x in args.rect.split(","))
        except ValueError as exc:
            raise UsageError(f"bad rectangle {args.rect!r}") from exc
        recs = locate_zeros(Rectangle(lo, hi, tlo, thi), alpha,
                            args.max_depth, _settings(args))
    rows = _zero_rows(recs, alpha)
    if args.out:
        _store_records(args.out, recs, alpha)
    payload = {"a": alpha.a, "count": len(recs), "zeros": rows,
               "tool_version": __version__}
    out.emit(payload, rows, _ZERO_HEADERS)
    return 0


def _resume_records(path: str, alpha: AlphaParam,
                    cfg: EvalSettings) -> list[ZeroRecord]:
    """Re-ingest a jsonl store and re-refine each position by one Newton
    pass; a position that is already converged is kept bit-identical."""
    out = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            row = json.loads(line)
            s0 = complex(row["s_re"], row["s_im"])
            dq = deriv_s(lambda z: q_value(z, alpha, cfg), s0, 1,
                         radius=max(1e-3, min(0.1, 0.8 * abs(s0 - 1.0))))
            step = q_value(s0, alpha, cfg) / dq.value
            s1 = s0 if abs(step) <= 1e-12 else s0 - step
            out.append(ZeroRecord(s=s1, method=ZeroMethod(row["method"]),
                                  residual=abs(q_value(s1, alpha, cfg)),
                                  newton_refined=True))
    return out


def _cmd_decompose(args, out: _Output) -> int:
    alpha = parse_alpha(args.a)
    if alpha.fraction is None:
        raise UsageError("decompose needs an exact fraction, e.g. --a 1/4")
    s = parse_complex(args.s)
    rep = q_via_characters(s, alpha.fraction.numerator,
                           alpha.fraction.denominator, _settings(args))
    payload = {
        "s": _cnum(rep.s), "r": rep.r, "q": rep.q,
        "lhs": _cnum(rep.lhs), "rhs": _cnum(rep.rhs),
        "rel_residual": rep.rel_residual, "tool_version": __version__,
    }
    out.emit(payload, [{
        "s_re": rep.s.real, "s_im": rep.s.imag, "r": rep.r, "q": rep.q,
        "lhs_re": rep.lhs.real, "lhs_im": rep.lhs.imag,
        "rhs_re": rep.rhs.real, "rhs_im": rep.rhs.imag,
        "rel_residual": rep.rel_residual,
    }], ["s_re", "s_im", "r", "q", "lhs_re", "lhs_im", "rhs_re", "rhs_im",
         "rel_residual"])
    return 0


# ------------------------------------------------------------ verify suites

def _guarded(s: complex, guard: float = 0.06) -> bool:
    """True when s or 1-s sits in a circle-average guard zone."""
    for w in (s, 1.0 - s):
        if abs(w) < guard:
            return True
        n = max(1, round(w.real))
        if math.hypot(w.real - n, w.imag) < guard:
            return True
    return False


def _cmd_verify(args, out: _Output) -> int:
    cfg = _settings(args)
    rows: list[dict] = []
    ok = True
    if args.suite == "fe":
        tol = args.tol or 1e-9
        for a in FE_ALPHAS:
            for sig in FE_SIGMAS:
                for t in FE_TS:
                    s = complex(sig, t)
                    if _guarded(s):
                        continue
                    rep = fe_residual(s, a, cfg)
                    worst = max(rep.q_equation.rel_residual,
                                rep.z_to_p.rel_residual,
                                rep.p_to_z.rel_residual)
                    rows.append({"a": a, "sigma": sig, "t": t,
                                 "rel_residual": worst,
                                 "pass": worst <= tol})
                    ok = ok and worst <= tol
    elif args.suite == "closed-form":
        tol = args.tol or 1e-9
        for which in SpecialAlpha:
            for sig in FE_SIGMAS:
                for t in FE_TS:
                    s = complex(sig, t)
                    if _guarded(s):
                        continue
                    rep = closed_form_residual(s, which, cfg)
                    worst = max(rep.z.rel_residual, rep.p.rel_residual,
                                rep.q.rel_residual)
                    rows.append({"a": f"1/{which.value}", "sigma": sig, "t": t,
                                 "rel_residual": worst, "pass": worst <= tol})
                    ok = ok and worst <= tol
    elif args.suite == "positivity":
        rng = random.Random(args.seed)
        for _ in range(args.samples):
            sigma = 1.0 + 1e-5 + rng.random() * 9.0
            a = 0.01 + rng.random() * 0.49
            res = positivity_sigma_gt1(sigma, a, cfg)
            rows.append({"sigma": sigma, "a": a, "positive": res, "pass": res})
            ok = ok and res
    elif args.suite == "monotonicity":
        for sig in MONO_SIGMAS:
            for a in MONO_ALPHAS:
                d = q_partial_a(sig, a, cfg=cfg)
                rows.append({"sigma": sig, "a": a, "dQ_da": d, "pass": d < 0.0})
                ok = ok and d < 0.0
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(f"unknown verify suite {args.suite!r}")
    payload = {"suite": args.suite, "points": len(rows), "all_pass": ok,
               "results": rows, "tool_version": __version__}
    headers = sorted({k for row in rows for k in row})
    out.emit(payload, rows, headers)
    return 0 if ok else 2


# ------------------------------------------------------------ figure export

FIGURE_KINDS = ("z-half-a", "q-half-a", "dq-half-a", "d2q-half-a",
                "q-sigma", "dq-sigma", "d2q-sigma")


def _figure_series(kind: str, alpha_or_none, lo: float, hi: float,
                   grid: int, cfg: EvalSettings):
    xs = [lo + (hi - lo) * i / grid for i in range(grid + 1)]
    if kind.endswith("-half-a"):
        def q_at(a: float) -> float:
            return q_value(complex(0.5), a, cfg).real

        if kind == "z-half-a":
            from .sfcore import hurwitz_zeta
            ys = [hurwitz_zeta(0.5, a, cfg).value.real
                  + hurwitz_zeta(0.5, 1.0 - a, cfg).value.real for a in xs]
        elif kind == "q-half-a":
            ys = [q_at(a) for a in xs]
        else:
            order = 1 if kind == "dq-half-a" else 2
            ys = [deriv_s(lambda z, aa=a: q_value(z, aa, cfg),
                          complex(0.5), order).value.real for a in xs]
        label_x, label_y = "a", kind
    else:
        if alpha_or_none is None:
            raise UsageError(f"--a is required for kind {kind}")
        alpha = alpha_or_none
        if kind == "q-sigma":
            ys = [q_value(complex(x), alpha, cfg).real for x in xs]
        else:
            order = 1 if kind == "dq-sigma" else 2
            ys = [deriv_s(lambda z: q_value(z, alpha, cfg),
                          complex(x), order).value.real for x in xs]
        label_x, label_y = "sigma", kind
    return xs, ys, label_x, label_y


def _cmd_export_figure(args, out: _Output) -> int:
    cfg = _settings(args)
    alpha = parse_alpha(args.a) if args.a else None
    xs, ys, label_x, label_y = _figure_series(args.kind, alpha, args.lo,
                                              args.hi, args.grid, cfg)
    rows = [{"x": x, "y": y} for x, y in zip(xs, ys)]
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["x", "y"])
            writer.writerows(zip(xs, ys))
    if args.plot:
        import matplotlib
        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
        fig, ax = plt.subplots(figsize=(7.0, 4.0))
        ax.plot(xs, ys, lw=1.2)
        ax.axhline(0.0, color="0.6", lw=0.6)
        ax.set_xlabel(label_x)
        ax.set_ylabel(label_y)
        ax.set_title(f"{args.kind}" + (f"  a={alpha.a:.12g}" if alpha else ""))
        fig.tight_layout()
        fig.savefig(args.plot, dpi=150)
        plt.close(fig)
    payload = {"kind": args.kind, "a": alpha.a if alpha else None,
               "lo": args.lo, "hi": args.hi, "grid": args.grid,
               "points": rows, "tool_version": __version__}
    out.emit(payload, rows, ["x", "y"])
    return 0


# ------------------------------------------------------------------- main

def _build_parser() -> _Parser:
    p = _Parser(prog="quadzeta",
                description="quadrilateral zeta evaluation and zero census")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, tol_default=None):
        sp.add_argument("--format", choices=("csv", "json", "jsonl"),
                        default="json")
        sp.add_argument("--out", default=None,
                        help="file target (zero store / figure data)")
        sp.add_argument("--tol", type=float, default=tol_default)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--threads", type=int, default=1,
                        help="accepted for compatibility; evaluation is "
                             "deterministic regardless")

    sp = sub.add_parser("eval", help="evaluate Z, P, Q at one point")
    sp.add_argument("--s", required=True)
    sp.add_argument("--a", required=True)
    common(sp)
    sp.set_defaults(func=_cmd_eval)

    sp = sub.add_parser("find-a0", help="threshold a0 with Q(1/2, a0) = 0")
    common(sp)
    sp.set_defaults(func=_cmd_find_a0)

    sp = sub.add_parser("scan-real", help="real zeros of Q on an interval")
    sp.add_argument("--a", required=True)
    sp.add_argument("--lo", type=float, required=True)
    sp.add_argument("--hi", type=float, required=True)
    sp.add_argument("--grid", type=int, default=1024)
    common(sp)
    sp.set_defaults(func=_cmd_scan_real)

    sp = sub.add_parser("classify", help="interior real-zero trichotomy")
    sp.add_argument("--a", required=True)
    sp.add_argument("--grid", type=int, default=2048)
    common(sp)
    sp.set_defaults(func=_cmd_classify)

    sp = sub.add_parser("beta-z", help="interior zero of Z(sigma, a)")
    sp.add_argument("--a", required=True)
    common(sp)
    sp.set_defaults(func=_cmd_beta_z)

    sp = sub.add_parser("count", help="non-real zero census N(T)")
    sp.add_argument("--T", type=float, required=True)
    sp.add_argument("--a", required=True)
    common(sp)
    sp.set_defaults(func=_cmd_count)

    sp = sub.add_parser("rvm", help="census vs counting main term")
    sp.add_argument("--T", type=float, required=True)
    sp.add_argument("--a", required=True)
    common(sp)
    sp.set_defaults(func=_cmd_rvm)

    sp = sub.add_parser("hardy", help="critical-line sign-change scan")
    sp.add_argument("--a", required=True)
    sp.add_argument("--t-lo", type=float, default=0.0)
    sp.add_argument("--t-hi", type=float, required=True)
    sp.add_argument("--step", type=float, default=0.1)
    common(sp)
    sp.set_defaults(func=_cmd_hardy)

    sp = sub.add_parser("locate", help="quadtree zero isolation in a rectangle")
    sp.add_argument("--a", required=True)
    sp.add_argument("--rect", default=None,
                    help="sigma_lo,sigma_hi,t_lo,t_hi")
    sp.add_argument("--max-depth", type=int, default=10)
    sp.add_argument("--resume", default=None,
                    help="re-refine zeros from a jsonl store")
    common(sp)
    sp.set_defaults(func=_cmd_locate)

    sp = sub.add_parser("decompose", help="character decomposition at a = r/q")
    sp.add_argument("--s", required=True)
    sp.add_argument("--a", required=True, help="exact fraction r/q")
    common(sp)
    sp.set_defaults(func=_cmd_decompose)

    sp = sub.add_parser("verify", help="identity verification suites")
    sp.add_argument("suite",
                    choices=("fe", "closed-form", "positivity", "monotonicity"))
    sp.add_argument("--samples", type=int, default=50)
    common(sp)
    sp.set_defaults(func=_cmd_verify)

    sp = sub.add_parser("export-figure",
                        help="emit (x, y) data for the survey curves")
    sp.add_argument("--kind", choices=FIGURE_KINDS, required=True)
    sp.add_argument("--a", default=None)
    sp.add_argument("--lo", type=float, required=True)
    sp.add_argument("--hi", type=float, required=True)
    sp.add_argument("--grid", type=int, default=200)
    sp.add_argument("--plot", default=None,
                    help="also render the curve to this image file")
    common(sp)
    sp.set_defaults(func=_cmd_export_figure)

    return p


def run_command(argv: list[str]) -> int:
    """Entry point used by tests; returns the process exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    out = _Output(fmt=args.format, out_path=args.out)
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return 1
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
