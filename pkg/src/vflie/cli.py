"""Command-line front end: ``vflie <subcommand> ...``.

Exit status: 0 on success, 1 when a verification suite finds a violation,
2 on bad input (unparsable expressions, invalid parameters, unknown flags).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import borel1, generate, lattice, liealg, parse, vecfield
from .scalar import QQ, cyclotomic_field, format_rational

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(ValueError):
    pass


def _default_cap(fallback: int) -> int:
    raw = os.environ.get("VFLIE_MAX_DEGREE")
    if raw is None:
        return fallback
    try:
        cap = int(raw)
    except ValueError:
        raise InputError(f"VFLIE_MAX_DEGREE must be an integer, got {raw!r}") from None
    if cap < 0:
        raise InputError("VFLIE_MAX_DEGREE must be >= 0")
    return cap


def _cap(args, fallback: int) -> int:
    return args.cap if args.cap is not None else _default_cap(fallback)


def _field(args):
    d = getattr(args, "cyclotomic", None)
    if d is None:
        return QQ
    if d < 1:
        raise InputError("--cyclotomic order must be >= 1")
    return cyclotomic_field(d)


def _vf(text, args):
    return parse.parse_vecfield(text, args.arity, _field(args))


def _params(args):
    if args.d is None or args.e is None:
        raise InputError("--d and --e are required")
    return lattice.make_params(args.d, args.e)


def _dump(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _pairs(points):
    return [list(p) for p in points]


# ---------------------------------------------------------------------------
# subcommands; each returns (exit code, output text)


def cmd_bracket(args):
    Z = _vf(args.X, args).bracket(_vf(args.Y, args))
    return EXIT_OK, _dump({"result": str(Z)}) if args.json else str(Z)


def cmd_divergence(args):
    p = _vf(args.X, args).divergence()
    return EXIT_OK, _dump({"result": str(p)}) if args.json else str(p)


def cmd_components(args):
    X = parse.parse_vecfield(args.X, 2, _field(args))
    comps = vecfield.bidegree_components(X)
    if args.json:
        items = [{"bidegree": list(b), "field": str(V)} for b, V in comps.items()]
        return EXIT_OK, _dump({"components": items})
    labels = [f"({a}, {b})" for a, b in comps]
    width = max((len(s) for s in labels), default=0)
    lines = [f"{s:<{width}}  {V}" for s, V in zip(labels, comps.values())]
    return EXIT_OK, "\n".join(lines) if lines else "0"


def cmd_table_check(args):
    if args.max < 0:
        raise InputError("--max must be >= 0")
    count, failures = vecfield.table_check(args.max)
    if args.json:
        out = {"checked": count, "failures": [[str(a), str(b)] for a, b, *_ in failures]}
        return (EXIT_FAIL if failures else EXIT_OK), _dump(out)
    if failures:
        lines = [f"{len(failures)} of {count} identities fail"]
        lines += [f"  [{a}, {b}]" for a, b, *_ in failures]
        return EXIT_FAIL, "\n".join(lines)
    return EXIT_OK, f"all {count} identities hold"


def cmd_decompose(args):
    params = _params(args)
    if args.a is None or args.b is None:
        raise InputError("--a and --b are required")
    p = (args.a, args.b)
    w, c = generate.build_dab_word(params, p)
    value = generate.eval_word(generate.Scale(c, w), generate.dab_binding(params))
    ok = value == vecfield.gen_dab(*p)
    code = EXIT_OK if ok else EXIT_FAIL
    if args.json:
        return code, _dump({"word": generate.word_to_json(w), "c": format_rational(c), "verified": ok})
    path = lattice.decompose_path(params, p)
    steps = " ".join(f"{s.direction}^{s.mult}" for s in path.steps) or "(base)"
    lines = [
        f"path: {path.start} {steps} -> {path.end}",
        f"word: {parse.format_word(w)}",
        f"c: {format_rational(c)}",
        f"verified: {str(ok).lower()}",
    ]
    return code, "\n".join(lines)


def _algebra(args):
    tag = args.algebra
    if tag not in liealg.TAGS:
        raise InputError(f"unknown algebra {tag!r}; choose from {', '.join(liealg.TAGS)}")
    params = _params(args) if tag in liealg.PARAM_TAGS else None
    return liealg.NamedAlgebra(tag, params)


def cmd_invariant_basis(args):
    params = _params(args)
    cap = _cap(args, 6)
    basis = liealg.truncated_basis(liealg.NamedAlgebra("n_de_invariants", params), cap)
    if args.json:
        return EXIT_OK, _dump({"degree_cap": cap, "basis": [str(X) for X in basis]})
    return EXIT_OK, "\n".join(str(X) for X in basis)


def cmd_derived_series(args):
    cap = _cap(args, 6)
    if args.levels < 1:
        raise InputError("--levels must be >= 1")
    if args.fields:
        gens = [_vf(t, args) for t in args.fields]
        report = liealg.derived_series(liealg.span(gens, arity=args.arity, field=_field(args)), cap, args.levels)
    elif args.algebra:
        alg = _algebra(args)
        if args.nested:
            report = liealg.nested_derived_series(alg, cap, args.levels)
        else:
            report = liealg.derived_series_of(alg, cap, args.levels)
    else:
        raise InputError("give --algebra or one or more generator fields")
    if args.json:
        return EXIT_OK, _dump(report.to_json())
    lines = [
        f"truncation: {report.truncation}",
        f"levels: {' '.join(map(str, report.level_dims))}",
        f"discards: {report.discards}",
        f"verdict: {report.verdict.value}",
    ]
    if report.derived_length is not None:
        lines.append(f"derived length: {report.derived_length}")
    return EXIT_OK, "\n".join(lines)


def cmd_member(args):
    alg = _algebra(args)
    X = parse.parse_vecfield(args.X, alg.arity, _field(args))
    ok = liealg.member(alg, X)
    return EXIT_OK, _dump({"member": ok}) if args.json else str(ok).lower()


def cmd_sl2_detect(args):
    v = parse.parse_vecfield(args.X, 2)
    cert = generate.detect_sl2(v)
    if args.json:
        out = {
            "E": str(cert.E),
            "H": str(cert.H),
            "F": str(cert.F),
            "relations": list(cert.relations_verified),
            "provenance": {k: generate.word_to_json(w) for k, w in cert.provenance.items()},
        }
        return (EXIT_OK if cert.valid else EXIT_FAIL), _dump(out)
    lines = [f"E = {cert.E}", f"H = {cert.H}", f"F = {cert.F}"]
    names = ("[H,E] = 2E", "[H,F] = -2F", "[E,F] = H")
    lines += [f"{n}: {'ok' if r else 'FAILED'}" for n, r in zip(names, cert.relations_verified)]
    return (EXIT_OK if cert.valid else EXIT_FAIL), "\n".join(lines)


def cmd_special(args):
    f = parse.parse_poly(args.P, 1)
    form = borel1.special_form(f)
    if args.json:
        return EXIT_OK, _dump(form.to_json())
    out = form.flag.value
    if form.flag is borel1.SpecialClass.SPECIAL:
        w = form.to_json()
        out += f" alpha={w['alpha']} lambda={w['lambda']} mu={w['mu']} k={w['k']}"
    return EXIT_OK, out


def cmd_ideal_check(args):
    params = _params(args)
    box = args.box
    cap = _cap(args, 8)
    mono = lattice.monoid_ideal_check(params, box)
    suite = liealg.ideal_bracket_suite(params, cap)
    ok = mono.holds and suite.holds
    code = EXIT_OK if ok else EXIT_FAIL
    if args.json:
        out = {
            "monoid": {"box": box, "checked": mono.checked, "violations": [_pairs(v) for v in mono.violations]},
            "brackets": {"degree_cap": cap, "checked": suite.checked, "failures": len(suite.failures)},
            "holds": ok,
        }
        return code, _dump(out)
    lines = [
        f"monoid inclusion on [-1,{box}]^2: {mono.checked} sums, {len(mono.violations)} violations",
        f"bracket suite at degree <= {cap}: {suite.checked} pairs, {len(suite.failures)} failures",
        "ideal check passed" if ok else "ideal check FAILED",
    ]
    return code, "\n".join(lines)


def cmd_veronese_check(args):
    if args.max_d < 2 or args.max_kl < 0:
        raise InputError("need --max-d >= 2 and --max-kl >= 0")
    identities = chains = 0
    failures = []
    for d in range(2, args.max_d + 1):
        for k in range(args.max_kl + 1):
            for l in range(args.max_kl + 1):
                lhs, rhs = generate.veronese_identity(d, k, l)
                identities += 1
                if lhs != rhs:
                    failures.append(f"identity d={d} k={k} l={l}")
        for l in range(args.max_kl + 1):
            for s in range(l * d + 1):
                chains += 1
                try:
                    generate.veronese_ad_chain(d, l, s)
                except ArithmeticError:
                    failures.append(f"chain d={d} l={l} s={s}")
    code = EXIT_FAIL if failures else EXIT_OK
    if args.json:
        return code, _dump({"identities": identities, "chains": chains, "failures": failures})
    if failures:
        return code, "\n".join([f"{len(failures)} failures"] + failures)
    return code, f"all {identities} identities hold; all {chains} chain scalars positive"


def cmd_triangular_extension_check(args):
    cap = _cap(args, 4)
    if cap < 3:
        raise InputError("--cap must be >= 3")
    report = generate.verify_triangular_extension(cap)
    code = EXIT_OK if report.holds else EXIT_FAIL
    if args.json:
        return code, _dump({"degree_cap": cap, "clauses": report.clauses, "dims": report.dims, "holds": report.holds})
    width = max(len(k) for k in report.clauses)
    lines = [f"{k:<{width}}  {'pass' if v else 'FAIL'}" for k, v in report.clauses.items()]
    return code, "\n".join(lines)


def cmd_probe_question2(args):
    params = _params(args)
    cap = _cap(args, 6)
    r = generate.question2_probe(params, cap)
    if args.json:
        out = {
            "degree_cap": cap,
            "generated_support": _pairs(r.generated_support),
            "invariant_support": _pairs(r.invariant_support),
            "missing": _pairs(r.missing),
        }
        return EXIT_OK, _dump(out)
    lines = [
        f"degree cap: {cap}",
        f"generated: dim {r.generated_dim}, {len(r.generated_support)} bidegrees",
        f"invariant: dim {r.invariant_dim}, {len(r.invariant_support)} bidegrees",
        "missing: " + (" ".join(f"({a},{b})" for a, b in r.missing) or "none"),
    ]
    return EXIT_OK, "\n".join(lines)


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="vflie", description="Exact computations with polynomial vector fields.")
    sub = ap.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, func, help_text, fields=0, arity=False, params=False, cap=False, algebra=False):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        p.add_argument("--json", action="store_true", help="emit JSON")
        for label in ("X", "Y")[:fields]:
            p.add_argument(label)
        if arity:
            p.add_argument("--arity", type=int, default=2, help="number of variables (default 2)")
            p.add_argument("--cyclotomic", type=int, metavar="D", help="coefficients in Q(zeta_D)")
        if params or algebra:
            p.add_argument("--d", type=int)
            p.add_argument("--e", type=int)
        if cap:
            p.add_argument("--cap", type=int, help="degree cap (default from VFLIE_MAX_DEGREE)")
        if algebra:
            p.add_argument("--algebra", help="named algebra tag")
        return p

    add("bracket", cmd_bracket, "Lie bracket of two fields", fields=2, arity=True)
    add("divergence", cmd_divergence, "divergence of a field", fields=1, arity=True)
    p = add("components", cmd_components, "bihomogeneous components of a plane field", fields=1)
    p.add_argument("--cyclotomic", type=int, metavar="D")
    p = add("table-check", cmd_table_check, "verify the closed-form commutation table")
    p.add_argument("--max", type=int, default=8)
    p = add("decompose", cmd_decompose, "express d_{a,b} as a bracket word", params=True)
    p.add_argument("--a", type=int)
    p.add_argument("--b", type=int)
    add("invariant-basis", cmd_invariant_basis, "truncated basis of the invariant algebra", params=True, cap=True)
    p = add("derived-series", cmd_derived_series, "truncated derived series", arity=True, cap=True, algebra=True)
    p.add_argument("fields", nargs="*", help="generator fields (instead of --algebra)")
    p.add_argument("--levels", type=int, default=8)
    p.add_argument("--nested", action="store_true", help="use the closed nested truncation")
    p = add("member", cmd_member, "membership in a named algebra", fields=1, algebra=True)
    p.add_argument("--cyclotomic", type=int, metavar="D")
    add("sl2-detect", cmd_sl2_detect, "sl(2)-triple from a field outside j2+", fields=1)
    p = add("special", cmd_special, "classify a polynomial in x as special or not")
    p.add_argument("P")
    p = add("ideal-check", cmd_ideal_check, "verify the ideal I_{d,e}", params=True, cap=True)
    p.add_argument("--box", type=int, default=12)
    p = add("veronese-check", cmd_veronese_check, "verify the e = 1 identities")
    p.add_argument("--max-d", type=int, default=6)
    p.add_argument("--max-kl", type=int, default=3)
    add("triangular-extension-check", cmd_triangular_extension_check, "verify j3+ + k z(x dx - y dy)", cap=True)
    add("probe-question2", cmd_probe_question2, "compare generated and invariant supports", params=True, cap=True)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:  # argparse reports usage errors itself
        return exc.code if isinstance(exc.code, int) else EXIT_INPUT
    try:
        code, text = args.func(args)
    except (parse.ParseError, InputError, lattice.LatticeError, generate.Sl2PreconditionError,
            generate.WordError, borel1.BorelFormError, ValueError, TypeError) as exc:  # fmt: skip
        print(f"vflie {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
