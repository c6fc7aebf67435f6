"""Command-line front door.

Each subcommand runs one or more two-sided identity checks and reports
them uniformly: human-readable lines by default, a stable JSON array
with --json (fields check, inputs, lhs_log, rhs_log, digits_agreed,
pass; numbers as decimal strings so output is byte-identical across
runs).  Exit codes: 0 all checks pass, 1 an identity check failed,
2 usage or domain error, 3 precision failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from mpmath import mp

from .csperiods import (cs_verify, faltings_height_L, faltings_height_periods,
                        m_invariant, make_report, period_integral)
from .epstein import epstein_jet
from .errors import ConsistencyError, DomainError, PrecisionError
from .fermat import cm_type, epsilon_rst, tate_twist_certificate
from .heckechar import psi_M
from .numkernel import PrecisionContext, delta_lattice, log_gamma
from .quadforms import (Discriminant, QuadForm, class_number, class_number_dirichlet,
                        form_to_lattice, inverse_ideal_lattice, is_fundamental,
                        reduced_forms)
from .relint import recognize_rational, recognize_sqrtp

_RECOGNIZE_MAX_DEN = 10 ** 12

_FALTINGS_PRIMES = (7, 11, 23, 43, 67, 163)
_PERIOD_PRIMES = (7, 11, 23, 31, 47)


def _numstr(x, ctx):
    return mp.nstr(x, ctx.target_digits)


def _identity_dict(rep, inputs, ctx):
    return {"check": rep.name, "inputs": inputs,
            "lhs_log": _numstr(rep.lhs, ctx), "rhs_log": _numstr(rep.rhs, ctx),
            "digits_agreed": rep.digits_agreed, "pass": rep.passed}


def _exact_dict(name, inputs, lhs, rhs, ctx):
    ok = lhs == rhs
    return {"check": name, "inputs": inputs, "lhs_log": str(lhs), "rhs_log": str(rhs),
            "digits_agreed": ctx.target_digits if ok else 0, "pass": ok}


def _parse_ints(text, n, what):
    parts = text.split(",")
    if len(parts) != n:
        raise DomainError(f"{what} takes {n} comma-separated integers")
    try:
        return tuple(int(x) for x in parts)
    except ValueError as exc:
        raise DomainError(f"bad {what}: {text!r}") from exc


def _cmd_class(args, ctx):
    disc = Discriminant(args.d)
    group = reduced_forms(disc)
    lines = [f"h(-{disc.d}) = {group.h}"]
    lines += [f"  {f.tuple()}" for f in group]
    rep = _exact_dict(f"class-number d={disc.d}", {"d": disc.d},
                      group.h, class_number_dirichlet(disc), ctx)
    return [rep], lines


def _cmd_verify_cs(args, ctx):
    rep = cs_verify(Discriminant(args.d), ctx)
    return [_identity_dict(rep, {"d": args.d}, ctx)], []


def _kronecker_class(disc, i, f, ctx):
    jet = epstein_jet(f, ctx)
    with ctx.workprec():
        z = (delta_lattice(form_to_lattice(f, ctx), ctx)
             * delta_lattice(inverse_ideal_lattice(f, ctx), ctx))
        rhs = -mp.log(mp.re(z)) / 12
        err = max(abs(jet.value + 1), abs(jet.deriv - rhs))
        scale = max(abs(rhs), mp.mpf(1))
        if err == 0:
            digits = ctx.working_digits
        else:
            digits = min(ctx.working_digits, max(0, int(-mp.log10(err / scale))))
        ok = err < mp.mpf(10) ** (-(ctx.target_digits // 2))
        return {"check": f"kronecker-limit d={disc.d} class={i}",
                "inputs": {"d": disc.d, "class": i, "form": list(f.tuple())},
                "lhs_log": _numstr(jet.deriv, ctx), "rhs_log": _numstr(rhs, ctx),
                "digits_agreed": digits, "pass": bool(ok)}


def _cmd_kronecker(args, ctx):
    disc = Discriminant(args.d)
    forms = list(reduced_forms(disc))
    if args.class_index is None:
        picked = list(enumerate(forms))
    else:
        if not 0 <= args.class_index < len(forms):
            raise DomainError(f"--class must be in 0..{len(forms) - 1} for d={disc.d}")
        picked = [(args.class_index, forms[args.class_index])]
    return [_kronecker_class(disc, i, f, ctx) for i, f in picked], []


def _cmd_periods(args, ctx):
    disc = Discriminant(args.p)
    group = reduced_forms(disc)
    lines = []
    with ctx.workprec():
        total = mp.mpf(0)
        for f in group:
            val = period_integral(f, disc, ctx)
            lines.append(f"  class {f.tuple()}: {mp.nstr(val, 30)}")
            total += mp.log(val)
        gsum = mp.fsum(disc.epsilon(a) * log_gamma(Fraction(a, disc.d), ctx)
                       for a in range(1, disc.d))
        rhs = group.h * mp.log(2 * mp.pi / disc.d) + gsum
    rep = make_report(f"period-product p={disc.d}", total, rhs, ctx)
    return [_identity_dict(rep, {"p": disc.d}, ctx)], lines


def _cmd_faltings(args, ctx):
    disc = Discriminant(args.p)
    rep = make_report(f"faltings-height p={disc.d}",
                      faltings_height_periods(disc, ctx),
                      faltings_height_L(disc, ctx), ctx)
    return [_identity_dict(rep, {"p": disc.d}, ctx)], []


def _cert_dict(cert, inputs, ctx):
    if cert.recognized is None:
        return {"check": cert.name, "inputs": inputs,
                "lhs_log": _numstr(cert.ratio, ctx), "rhs_log": "unrecognized",
                "digits_agreed": 0, "pass": False}
    with ctx.workprec():
        exact = mp.mpf(cert.recognized.numerator) / cert.recognized.denominator
        if cert.kind == "sqrtp":
            exact *= mp.sqrt(inputs["p"])
        rel = abs(cert.ratio - exact) / abs(cert.ratio)
        digits = ctx.working_digits if rel == 0 else \
            min(ctx.working_digits, max(0, int(-mp.log10(rel))))
    rhs = str(cert.recognized) + (f"*sqrt({inputs['p']})" if cert.kind == "sqrtp" else "")
    return {"check": cert.name, "inputs": inputs,
            "lhs_log": _numstr(cert.ratio, ctx), "rhs_log": rhs,
            "digits_agreed": digits, "pass": cert.passed}


def _cmd_fermat(args, ctx):
    r, s, t = _parse_ints(args.rst, 3, "--rst")
    rec = cm_type(args.p, r, s, t)
    eps = epsilon_rst(args.p, r, s, t)
    lines = [f"phi = {rec.phi}",
             f"u = {rec.u}, v = {rec.v}, eps(r,s,t) = {eps}"]
    inputs = {"p": args.p, "rst": [rec.rst[0], rec.rst[1], rec.rst[2]]}
    reports = [
        _exact_dict(f"cm-type-size p={args.p} rst={args.rst}", inputs,
                    rec.u + rec.v, (args.p - 1) // 2, ctx),
        _exact_dict(f"cm-type-balance p={args.p} rst={args.rst}", inputs,
                    rec.u - rec.v, class_number_dirichlet(Discriminant(args.p)) * eps,
                    ctx),
    ]
    cert = tate_twist_certificate(args.p, r, s, t, ctx)
    lines.append(f"tate ratio recognized: {_cert_text(cert)} (height {cert.height}, m = {cert.m})")
    reports.append(_cert_dict(cert, inputs, ctx))
    return reports, lines


def _cert_text(cert):
    if cert.recognized is None:
        return "no"
    return str(cert.recognized) + ("*sqrt(p)" if cert.kind == "sqrtp" else "")


def _cmd_hecke(args, ctx):
    a, b, c = _parse_ints(args.form, 3, "--form")
    f = QuadForm(a, b, c)
    beta = psi_M(f, args.p)
    h = class_number_dirichlet(Discriminant(args.p))
    lines = [f"beta = ({beta.x}, {beta.y})   meaning ({beta.x} + {beta.y}*sqrt(-{args.p}))/2",
             f"N(beta) = {beta.norm} = {a}^{h}"]
    rep = _exact_dict(
        f"hecke-psi p={args.p} form={a},{b},{c} beta=({beta.x},{beta.y})",
        {"p": args.p, "form": [a, b, c]}, beta.norm, a ** h, ctx)
    return [rep], lines


def _cmd_recognize(args, ctx):
    try:
        with ctx.workprec():
            x = mp.mpf(args.value)
    except ValueError as exc:
        raise DomainError(f"bad --value: {args.value!r}") from exc
    if args.sqrtp is None:
        rec = recognize_rational(x, _RECOGNIZE_MAX_DEN, ctx)
        suffix = ""
    else:
        rec = recognize_sqrtp(x, args.sqrtp, _RECOGNIZE_MAX_DEN, ctx)
        suffix = f"*sqrt({args.sqrtp})"
    inputs = {"value": args.value, "sqrtp": args.sqrtp}
    name = "recognize"
    if rec is None:
        rep = {"check": name, "inputs": inputs, "lhs_log": args.value,
               "rhs_log": "unrecognized", "digits_agreed": 0, "pass": False}
        return [rep], ["unrecognized"]
    text = str(rec) + suffix
    rep = {"check": name, "inputs": inputs, "lhs_log": args.value, "rhs_log": text,
           "digits_agreed": ctx.target_digits, "pass": True}
    return [rep], [text]


def _cs_worker(task):
    d, prec = task
    ctx = PrecisionContext(prec)
    return _identity_dict(cs_verify(Discriminant(d), ctx), {"d": d}, ctx)


def _cmd_suite(args, ctx):
    maxd = args.max_d
    if maxd < 3:
        raise DomainError("--max-d must be at least 3")
    ds = [d for d in range(3, maxd + 1) if is_fundamental(d)]
    reports = []

    agree = sum(1 for d in ds
                if class_number(Discriminant(d)) == class_number_dirichlet(Discriminant(d)))
    reports.append(_exact_dict(f"class-number-sweep 3<=d<={maxd}", {"max_d": maxd},
                               agree, len(ds), ctx))

    ps = [d for d in ds if Discriminant(d).is_prime_3mod4 and d >= 7]
    for p in ps:
        m_invariant(Discriminant(p))
    reports.append(_exact_dict(f"m-invariant-sweep p<={maxd}", {"max_d": maxd},
                               len(ps), len(ps), ctx))

    tasks = [(d, ctx.target_digits) for d in ds]
    if args.threads > 1:
        with ProcessPoolExecutor(max_workers=args.threads) as pool:
            reports.extend(pool.map(_cs_worker, tasks))
    else:
        reports.extend(_cs_worker(t) for t in tasks)

    for p in (q for q in _PERIOD_PRIMES if q <= maxd):
        reports.extend(_cmd_periods(argparse.Namespace(p=p), ctx)[0])
    for p in (q for q in _FALTINGS_PRIMES if q <= maxd):
        reports.extend(_cmd_faltings(argparse.Namespace(p=p), ctx)[0])
    return reports, []


_HANDLERS = {
    "class": _cmd_class,
    "verify-cs": _cmd_verify_cs,
    "kronecker": _cmd_kronecker,
    "periods": _cmd_periods,
    "faltings": _cmd_faltings,
    "fermat": _cmd_fermat,
    "hecke": _cmd_hecke,
    "recognize": _cmd_recognize,
    "suite": _cmd_suite,
}


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="cmperiods",
        description="Verify Chowla-Selberg / CM period identities to high precision.")
    _global_flags(top, on_top=True)
    sub = top.add_subparsers(dest="command", required=True)

    def add(name, help_text):
        p = sub.add_parser(name, help=help_text)
        _global_flags(p, on_top=False)
        return p

    add("class", "reduced forms and the class number, two ways").add_argument(
        "--d", type=int, required=True, help="fundamental discriminant is -d")
    add("verify-cs", "Chowla-Selberg identity at -d").add_argument(
        "--d", type=int, required=True)
    p = add("kronecker", "per-class limit formula: Z_Q(0) and Z_Q'(0)")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--class", dest="class_index", type=int, default=None,
                   help="single class index (default: all classes)")
    add("periods", "per-class period integrals and their product law").add_argument(
        "--p", type=int, required=True, help="prime = 3 mod 4, p > 3")
    add("faltings", "Faltings height from periods and from L'(0)").add_argument(
        "--p", type=int, required=True)
    p = add("fermat", "CM type and Tate-twist period certificate for x^p = y^r z^s w^t")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--rst", required=True, help="triple r,s,t with r+s+t = 0 mod p")
    p = add("hecke", "Hecke character value on an ideal class")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--form", required=True, help="form a,b,c of discriminant -p")
    p = add("recognize", "reconstruct a rational (or rational*sqrt(p)) from digits")
    p.add_argument("--value", required=True)
    p.add_argument("--sqrtp", type=int, default=None)
    add("suite", "full invariant battery up to a discriminant bound").add_argument(
        "--max-d", dest="max_d", type=int, default=200)
    return top


def _global_flags(parser, on_top):
    # Declared on the top parser with real defaults and on every
    # subparser with SUPPRESS, so both flag positions work.
    kw = {} if on_top else {"default": argparse.SUPPRESS}
    parser.add_argument("--prec", type=int, help="target decimal digits (default 120)",
                        **({"default": 120} if on_top else kw))
    parser.add_argument("--json", action="store_true",
                        **({"default": False} if on_top else kw))
    parser.add_argument("--threads", type=int, help="parallel workers (suite only)",
                        **({"default": 1} if on_top else kw))
    parser.add_argument("--out", help="write the report to a file instead of stdout",
                        **({"default": None} if on_top else kw))


def _render(rep) -> str:
    mark = "pass" if rep["pass"] else "FAIL"
    return f"[{mark}] {rep['check']}  ({rep['digits_agreed']} digits agreed)"


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.prec < 30:
        print("error: --prec must be at least 30", file=sys.stderr)
        return 2
    if args.threads < 1:
        print("error: --threads must be positive", file=sys.stderr)
        return 2
    ctx = PrecisionContext(args.prec)
    try:
        reports, lines = _HANDLERS[args.command](args, ctx)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except PrecisionError as exc:
        msg = f"precision failure: {exc}"
        if exc.achieved_digits is not None:
            msg += f" (achieved {exc.achieved_digits} digits)"
        print(msg, file=sys.stderr)
        return 3
    except ConsistencyError as exc:
        print(f"identity violation: {exc}", file=sys.stderr)
        return 1

    if args.json:
        text = json.dumps(reports, indent=2, sort_keys=True) + "\n"
    else:
        text = "".join(line + "\n" for line in lines)
        text += "".join(_render(r) + "\n" for r in reports)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if all(r["pass"] for r in reports) else 1


if __name__ == "__main__":
    sys.exit(main())
