"""Command-line interface.

Every computation in the package is reachable as a subcommand with
machine-readable output (--json, and --csv for spectra). Exit codes:
0 for success (a divergence verdict is a successful computation), 2 for
mathematical non-applicability or usage errors, 1 for internal errors.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from fractions import Fraction

from symspec.domains import CARTAN_FAMILIES, DomainError, DomainParams, classification_table, make_domain
from symspec.gindikin import GammaPoleError, dim_pm
from symspec.integrate import (
    AcceptanceRateError,
    NonIntegrableError,
    mc_trace,
    polar_integral_report,
    trace_quadrature,
)
from symspec.partitions import enumerate_graded
from symspec.spectral import (
    NotTraceClassError,
    OperatorSpec,
    berezin_report,
    classify,
    eigenvalue,
    hs_norm_sq,
    j_integral,
    schatten_norm,
    trace_closed,
    trace_series,
)


class UsageError(ValueError):
    """Malformed command line (bad rational, missing domain spec, ...)."""


_ERROR_REASONS = {
    NotTraceClassError: "not_trace_class",
    NonIntegrableError: "not_integrable",
    GammaPoleError: "gamma_pole",
    AcceptanceRateError: "acceptance_rate",
    DomainError: "invalid_domain",
    UsageError: "usage",
    ValueError: "invalid_parameter",
}


def _rational(text: str) -> Fraction:
    """Exact rational from "p/q" or a decimal literal (0.5 -> 1/2)."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"malformed rational {text!r}: {exc}") from None


def _default_threads() -> int:
    try:
        return max(1, int(os.environ.get("SYMSPEC_THREADS", "1")))
    except ValueError:
        return 1


def _add_domain_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--type", dest="cartan", choices=["I", "II", "III", "IV", "V", "VI"], help="Cartan family")
    p.add_argument("--r", type=int, help="rank size parameter (types I, II via n, III) or raw rank")
    p.add_argument("--s", type=int, help="size parameter for types I and IV")
    p.add_argument("--n", type=int, help="matrix size for type II")
    p.add_argument("--a", type=int, help="raw off-diagonal multiplicity")
    p.add_argument("--b", type=int, help="raw boundary multiplicity")


def _add_output_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--json", action="store_true", help="machine-readable JSON on stdout")


def _add_operator_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--alpha", required=True, help="kernel exponent (rational: 1/2 or 0.5)")
    p.add_argument("--gamma", default="0", help="Bergman weight (rational, default 0)")
    p.add_argument("--kind", choices=["bergman", "szego"], default="bergman")


def _add_budget_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--max-weight", type=int, default=None, help="series weight budget")
    p.add_argument("--tolerance", type=float, default=1e-6, help="relative tail tolerance")


def build_domain(args: argparse.Namespace) -> DomainParams:
    if args.cartan:
        if args.a is not None or args.b is not None:
            raise UsageError("--type excludes raw --a/--b")
        try:
            return make_domain(args.cartan, r=args.r, s=args.s, n=args.n)
        except DomainError:
            raise
    if args.a is None or args.b is None or args.r is None:
        raise UsageError("missing domain spec: give --type ... or all of --a --b --r")
    return make_domain(a=args.a, b=args.b, r=args.r)


def build_operator(args: argparse.Namespace) -> OperatorSpec:
    domain = build_domain(args)
    alpha = _rational(args.alpha)
    if args.kind == "szego":
        return OperatorSpec(domain, alpha, kind="szego")
    return OperatorSpec(domain, alpha, gamma=_rational(args.gamma))


def _emit(args: argparse.Namespace, payload: dict, text: str) -> None:
    if getattr(args, "json", False):
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


# ---------------------------------------------------------------------------
# subcommand bodies


def cmd_domain(args: argparse.Namespace) -> int:
    dom = build_domain(args)
    payload = {"kind": "domain", "domain": dom.to_dict()}
    lines = [f"{k:>6}: {v}" for k, v in dom.to_dict().items()]
    _emit(args, payload, "\n".join(lines))
    return 0


def cmd_classify(args: argparse.Namespace) -> int:
    op = build_operator(args)
    rep = classify(op)
    payload = {
        "kind": "classification",
        "operator": {"kind": op.kind, "alpha": str(op.alpha), "gamma": None if op.gamma is None else str(op.gamma), "nu": str(op.nu)},
        "domain": op.domain.to_dict(),
        "report": rep.to_dict(),
    }
    lines = [op.describe()]
    lines.append(f"bounded:            {rep.bounded}")
    lines.append(f"compact:            {rep.compact}")
    lines.append(f"finite_rank:        {rep.finite_rank}")
    if rep.rank is not None:
        lines.append(f"rank:               {rep.rank}")
    thr = "none (not in any S_p)" if rep.schatten_threshold is None else f"p > {rep.schatten_threshold}"
    lines.append(f"schatten:           {'all p > 0' if rep.finite_rank else thr}")
    lines.append(f"alpha in F:         {rep.in_F.member}  witnesses l,k: {list(rep.in_F.witnesses)}")
    for note in rep.paper_consistency_notes:
        lines.append(f"note [{note.code}]: {note.detail}")
    _emit(args, payload, "\n".join(lines))
    return 0


def cmd_spectrum(args: argparse.Namespace) -> int:
    op = build_operator(args)
    max_weight = args.max_weight if args.max_weight is not None else 12
    rows = []
    for m in enumerate_graded(op.domain.r, max_weight):
        lam = eigenvalue(op, m)
        rows.append((m.parts, dim_pm(op.domain, m), lam.sign, lam.log_abs, lam.to_float()))
    if args.json:
        payload = {
            "kind": "spectrum",
            "domain": op.domain.to_dict(),
            "rows": [
                {"m": list(parts), "dim": dim, "eigenvalue_sign": s, "eigenvalue_log_abs": la, "eigenvalue": v}
                for parts, dim, s, la, v in rows
            ],
        }
        print(json.dumps(payload, indent=2, sort_keys=True))
        return 0
    header = ",".join(f"m{i+1}" for i in range(op.domain.r)) + ",dim,eigenvalue_sign,eigenvalue_log_abs,eigenvalue"
    out = [header]
    for parts, dim, s, la, v in rows:
        out.append(",".join(map(str, parts)) + f",{dim},{s},{la!r},{v!r}")
    print("\n".join(out))
    return 0


def cmd_schatten(args: argparse.Namespace) -> int:
    op = build_operator(args)
    p = _rational(args.p)
    est = schatten_norm(op, p, tolerance=args.tolerance, max_weight=args.max_weight)
    rep = classify(op)
    payload = {
        "kind": "series",
        "quantity": "schatten_norm",
        "p": str(p),
        "estimate": est.to_dict(),
        "membership_by_threshold": rep.schatten_membership(p),
        "domain": op.domain.to_dict(),
    }
    text = (
        f"S_p norm estimate for {op.describe()}, p={p}\n"
        f"value:    {est.value!r}\n"
        f"verdict:  {est.verdict}  (threshold rule says member={rep.schatten_membership(p)})\n"
        f"blocks:   {est.blocks_used}, tail_bound: {est.tail_bound}"
    )
    _emit(args, payload, text)
    return 0


def cmd_trace(args: argparse.Namespace) -> int:
    op = build_operator(args)
    methods: dict[str, object] = {}
    wanted = ["series", "closed", "quad"] if args.method == "all" else [args.method]
    if "series" in wanted:
        methods["series"] = trace_series(op, tolerance=args.tolerance, max_weight=args.max_weight)
    if "closed" in wanted:
        methods["closed"] = trace_closed(op)
    if "quad" in wanted:
        methods["quad"] = trace_quadrature(op, nodes_per_axis=args.nodes)
    values = {k: (v.value if hasattr(v, "value") else v) for k, v in methods.items()}
    spread = 0.0
    vals = list(values.values())
    for i in range(len(vals)):
        for j in range(i + 1, len(vals)):
            denom = max(abs(vals[i]), abs(vals[j]), 1e-300)
            spread = max(spread, abs(vals[i] - vals[j]) / denom)
    payload = {
        "kind": "trace",
        "methods": {k: (v.to_dict() if hasattr(v, "to_dict") else v) for k, v in methods.items()},
        "max_pairwise_rel_diff": spread if len(vals) > 1 else None,
        "domain": op.domain.to_dict(),
        "alpha": str(op.alpha),
        "gamma": None if op.gamma is None else str(op.gamma),
    }
    lines = [f"trace of {op.describe()}"]
    for k, v in values.items():
        extra = ""
        if hasattr(methods[k], "verdict"):
            extra = f"   [{methods[k].verdict}, blocks={methods[k].blocks_used}]"
        lines.append(f"{k:>7}: {v!r}{extra}")
    if len(vals) > 1:
        lines.append(f"max pairwise relative difference: {spread:.3e}")
    _emit(args, payload, "\n".join(lines))
    return 0


def cmd_hs(args: argparse.Namespace) -> int:
    op = build_operator(args)
    est = hs_norm_sq(op, tolerance=args.tolerance, max_weight=args.max_weight)
    if op.kind == "bergman":
        threshold = Fraction(op.domain.N + 1, 2) + op.gamma
        thr_text = f"(N+1+2g)/2 = {threshold}"
    else:
        threshold = op.domain.rho - Fraction(op.domain.N - 1, 2)
        thr_text = f"rho - (N-1)/2 = {threshold}"
    payload = {
        "kind": "series",
        "quantity": "hs_norm_sq",
        "estimate": est.to_dict(),
        "hs_threshold_alpha": str(threshold),
        "domain": op.domain.to_dict(),
    }
    text = (
        f"squared Hilbert-Schmidt norm of {op.describe()}\n"
        f"value:    {est.value!r}\n"
        f"verdict:  {est.verdict}   (finite iff alpha < {thr_text})\n"
        f"blocks:   {est.blocks_used}, tail_bound: {est.tail_bound}"
    )
    _emit(args, payload, text)
    return 0


def cmd_berezin(args: argparse.Namespace) -> int:
    op = build_operator(args)
    rep = berezin_report(op, _rational(args.p))
    payload = {"kind": "berezin", "p": args.p, "report": rep.to_dict(), "domain": op.domain.to_dict()}
    text = (
        f"Berezin transform of {op.describe()}: h^({rep.exponent})\n"
        f"in L^p(dlambda) for p={args.p}: {rep.in_Lp_lambda}  (threshold p > {rep.threshold})"
    )
    _emit(args, payload, text)
    return 0


def cmd_jintegral(args: argparse.Namespace) -> int:
    domain = build_domain(args)
    beta, gamma = _rational(args.beta), _rational(args.gamma)
    est = j_integral(domain, beta, gamma, tolerance=args.tolerance, max_weight=args.max_weight)
    payload = {
        "kind": "series",
        "quantity": "j_integral",
        "beta": str(beta),
        "gamma": str(gamma),
        "estimate": est.to_dict(),
        "domain": domain.to_dict(),
    }
    text = (
        f"integral of J_(beta={beta}, gamma={gamma}) over the domain\n"
        f"value:    {est.value!r}\n"
        f"verdict:  {est.verdict}   (finite iff beta < 1)\n"
        f"blocks:   {est.blocks_used}, tail_bound: {est.tail_bound}"
    )
    _emit(args, payload, text)
    return 0


def cmd_quad(args: argparse.Namespace) -> int:
    domain = build_domain(args)
    t = _rational(args.t)
    value, delta, converged = polar_integral_report(domain, t, nodes_per_axis=args.nodes)
    payload = {
        "kind": "quad",
        "t": str(t),
        "value": value,
        "refinement_delta": delta,
        "converged": converged,
        "domain": domain.to_dict(),
    }
    text = (
        f"int h(z,z)^({t}) dv = {value!r}\n"
        f"refinement delta: {delta:.3e}  converged: {converged}"
    )
    _emit(args, payload, text)
    return 0


def cmd_mc(args: argparse.Namespace) -> int:
    if args.cartan not in (None, "I"):
        raise UsageError("Monte Carlo sampling is implemented for type I domains only")
    if args.r is None or args.s is None:
        raise UsageError("mc needs --r and --s (type I matrix sizes)")
    est = mc_trace(
        args.r,
        args.s,
        _rational(args.alpha),
        _rational(args.gamma),
        n_samples=args.samples,
        seed=args.seed,
        threads=args.threads,
    )
    payload = {"kind": "mc", "estimate": est.to_dict(), "alpha": args.alpha, "gamma": args.gamma}
    text = (
        f"MC trace on I({args.r},{args.s}), alpha={args.alpha}, gamma={args.gamma}\n"
        f"value:    {est.value!r} +- {est.stderr:.2e}\n"
        f"accepted: {est.n_accepted} of {est.n_samples} proposals, seed {est.seed}"
    )
    _emit(args, payload, text)
    return 0


def _table_lines(gamma: Fraction) -> list[str]:
    rows = classification_table(gamma)
    cols = ["type", "d", "a", "b", "r", "N", "F", "B_gamma", "B in S_p"]
    data = []
    for fam, row in zip(CARTAN_FAMILIES, rows):
        data.append(
            [fam["type"], fam["d"], fam["a"], fam["b"], fam["r"], fam["N"], row.F_description, row.B_gamma_description, row.schatten_condition]
        )
    widths = [max(len(c), *(len(d[i]) for d in data)) for i, c in enumerate(cols)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip()]
    lines.append("  ".join("-" * w for w in widths))
    for d in data:
        lines.append("  ".join(c.ljust(w) for c, w in zip(d, widths)).rstrip())
    return lines


def cmd_table(args: argparse.Namespace) -> int:
    gamma = _rational(args.gamma)
    rows = classification_table(gamma)
    if args.csv:
        out = ["type,d,a,b,r,N,F,B_gamma,schatten"]
        for fam, row in zip(CARTAN_FAMILIES, rows):
            out.append(
                ",".join(
                    [fam["type"], fam["d"], fam["a"], fam["b"], fam["r"], fam["N"],
                     f'"{row.F_description}"', f'"{row.B_gamma_description}"', f'"{row.schatten_condition}"']
                )
            )
        print("\n".join(out))
        return 0
    payload = {
        "kind": "table",
        "gamma": str(gamma),
        "rows": [
            {**fam, "F": row.F_description, "B_gamma": row.B_gamma_description, "schatten": row.schatten_condition}
            for fam, row in zip(CARTAN_FAMILIES, rows)
        ],
    }
    _emit(args, payload, "\n".join(_table_lines(gamma)))
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="symspec",
        description="Spectra, Schatten classification, traces, and verification oracles "
        "for Bergman-type and Szego-type operators on bounded symmetric domains.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def new(name: str, fn, help_: str, domain=True, operator=False, budgets=False, p_arg=False):
        p = sub.add_parser(name, help=help_)
        if domain:
            _add_domain_args(p)
        if operator:
            _add_operator_args(p)
        if budgets:
            _add_budget_args(p)
        if p_arg:
            p.add_argument("--p", required=True, help="Schatten exponent p (rational)")
        _add_output_args(p)
        p.add_argument("--threads", type=int, default=_default_threads(), help="worker cap (env SYMSPEC_THREADS)")
        p.set_defaults(fn=fn)
        return p

    new("domain", cmd_domain, "derived invariants of a domain")
    new("classify", cmd_classify, "boundedness/compactness/finite-rank/Schatten report", operator=True)
    p = new("spectrum", cmd_spectrum, "eigenvalue table (CSV by default)", operator=True)
    p.add_argument("--max-weight", type=int, default=None)
    new("schatten", cmd_schatten, "Schatten norm estimate", operator=True, budgets=True, p_arg=True)
    p = new("trace", cmd_trace, "operator trace (series/closed/quad)", operator=True, budgets=True)
    p.add_argument("--method", choices=["series", "closed", "quad", "all"], default="all")
    p.add_argument("--nodes", type=int, default=None, help="quadrature nodes per axis")
    new("hs", cmd_hs, "squared Hilbert-Schmidt norm", operator=True, budgets=True)
    new("berezin", cmd_berezin, "Berezin transform L^p membership", operator=True, p_arg=True)
    p = new("jintegral", cmd_jintegral, "Forelli-Rudin-type integral series", budgets=True)
    p.add_argument("--beta", required=True, help="kernel offset beta (rational)")
    p.add_argument("--gamma", default="0", help="weight gamma (rational, default 0)")
    p = new("quad", cmd_quad, "polar quadrature of h^t")
    p.add_argument("--t", required=True, help="radial exponent t (rational, t > -1)")
    p.add_argument("--nodes", type=int, default=None)
    p = new("mc", cmd_mc, "Monte Carlo trace on a type I matrix ball")
    p.add_argument("--alpha", required=True)
    p.add_argument("--gamma", default="0")
    p.add_argument("--samples", type=int, default=1_000_000, help="accepted-sample budget")
    p.add_argument("--seed", type=int, default=20240817)
    p = new("table", cmd_table, "the six-family classification table", domain=False)
    p.add_argument("--gamma", default="0")
    p.add_argument("--csv", action="store_true")
    return ap


_RATIONAL_OPTS = {"--alpha", "--gamma", "--beta", "--p", "--t"}
_NEG_RATIONAL = re.compile(r"-(\d+(/\d+)?|\d*\.\d+)$")


def _merge_negative_values(argv: list[str]) -> list[str]:
    """Join "--alpha -1/2" into "--alpha=-1/2" so argparse does not read
    the negative rational as an option flag."""
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in _RATIONAL_OPTS and i + 1 < len(argv) and _NEG_RATIONAL.match(argv[i + 1]):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    try:
        args = ap.parse_args(_merge_negative_values(list(argv)))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.fn(args)
    except Exception as exc:  # noqa: BLE001 - boundary of the process
        reason = "internal"
        for klass, name in _ERROR_REASONS.items():
            if isinstance(exc, klass):
                reason = name
                break
        if getattr(args, "json", False):
            print(json.dumps({"kind": "error", "reason": reason, "message": str(exc)}, sort_keys=True))
        else:
            print(f"error ({reason}): {exc}", file=sys.stderr)
        return 2 if reason != "internal" else 1


if __name__ == "__main__":
    sys.exit(main())
