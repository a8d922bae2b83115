"""Command line entry point.

Every subcommand builds a report ``{command, input, results, exit_status}``;
``--json`` prints it verbatim, otherwise a short table.  Exit codes: 0 when
no check failed, 1 on a failed mathematical check, 2 on usage or IO errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import ncsf
from .coeffs import case_split_sign, q_binomial, qbinom_sign_probe
from .presentation import (
    FORMS,
    Presentation,
    compare_integral_forms,
    degrees_up_to,
    divided_serre_check,
    integral_lattice_closure,
    tilde_serre_check,
)
from .quiver import (
    Quiver,
    QuiverError,
    TwistForm,
    classify_vertices,
    default_twist,
    generator_pairing,
    validate_twist,
)
from .seminil import character_identity_check, component_count_one_vertex
from .twist import (
    coproduct_descends_check,
    minus_q_correspondence_check,
    tilde_coproduct_check,
    twisted_bialgebra_check,
)

DEFAULT_BOUND = 4


class UsageError(Exception):
    pass


def _locate(text, token):
    for n, line in enumerate(text.splitlines(), 1):
        if f'"{token}"' in line:
            return n
    return None


def parse_quiver_file(path):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}:{exc.lineno}: malformed JSON: {exc.msg}") from None
    try:
        return Quiver.from_json(data)
    except QuiverError as exc:
        msg = str(exc)
        line = None
        if "'" in msg:
            line = _locate(text, msg.split("'")[-2])
        where = f"{path}:{line}" if line else path
        raise UsageError(f"{where}: {msg}") from None


def _result(name, status, payload):
    return {"check": name, "status": status, "payload": payload}


def _from_check(c):
    return c.to_json()


def _fmt_deg(d):
    return "(" + ",".join(str(x) for x in d) + ")"


# commands

def cmd_info(args, q):
    kinds = classify_vertices(q)
    results = [
        _result(
            "quiver",
            "info",
            {
                "vertices": list(q.vertices),
                "classification": kinds,
                "euler_matrix": q.euler_matrix(),
                "symmetrized_matrix": q.symmetrized_matrix(),
            },
        ),
        _result("default_twist", "ok" if validate_twist(q, default_twist(q)) is None else "fail",
                {"psi": [list(r) for r in default_twist(q).psi]}),
    ]
    lines = [f"{v}: {k} ({q.loops(v)} loops)" for v, k in kinds.items()]
    lines.append("Euler matrix: " + str(q.euler_matrix()))
    lines.append("symmetrised: " + str(q.symmetrized_matrix()))
    return results, lines


def cmd_dims(args, q):
    p = Presentation(q, "quantum" if args.quantum else "classical", args.max_degree)
    results, lines = [], []
    for d in degrees_up_to(q.n, args.max_degree):
        row = p.quotient(d).to_json()
        results.append(_result("graded_dimension", "info", row))
        lines.append(f"{_fmt_deg(d)}: free {row['free']}, ideal {row['ideal']}, dim {row['dim']}")
    return results, lines


def cmd_serre_check(args, q):
    flavor = "quantum" if args.quantum else "classical"
    p = Presentation(q, flavor, args.bound)
    results, lines = [], []
    bad = [r for r in p.relations if not p.in_ideal(r)]
    results.append(_result("relations_reduce_to_zero", "fail" if bad else "ok",
                           {"relations": len(p.relations), "nonzero": len(bad)}))
    lines.append(f"{len(p.relations)} {flavor} relations, {len(bad)} with nonzero normal form")
    classical = p if flavor == "classical" else Presentation(q, "classical", args.bound)
    for iv in range(q.n):
        if not q.is_real(iv):
            continue
        for jv in range(q.n):
            if jv == iv:
                continue
            t = q.arrows_between(iv, jv)
            n = 1
            while n * t + 1 + n <= args.bound:
                c = divided_serre_check(p, iv, jv, n)
                results.append(_from_check(c))
                lines.append(f"divided Serre {q.vertices[iv]}->{q.vertices[jv]} n={n}: {'ok' if c.ok else 'FAIL'}")
                if not q.is_real(jv):
                    c = tilde_serre_check(classical, iv, jv, n)
                    results.append(_from_check(c))
                    lines.append(f"tilde Serre {q.vertices[iv]}->{q.vertices[jv]} n={n}: {'ok' if c.ok else 'FAIL'}")
                n += 1
    return results, lines


def cmd_ncsf(args, q):
    results, lines = [], []
    if args.action == "expand":
        kind = {"s": "S", "psi": "Psi", "lambda": "Lambda"}[args.kind.lower()]
        basis = {"s": "S", "psi": "Psi", "lambda": "Lambda"}[args.basis.lower()]
        expr = ncsf.to_basis(ncsf.NcsfExpr.gen(kind, args.n), basis)
        results.append(_result("expand", "info", {"element": f"{kind}_{args.n}", **expr.to_json()}))
        lines.append(f"{kind}_{args.n} = {expr}")
        if kind == "S" and basis == "Psi":
            lines.append(f"{args.n}{kind}_{args.n} = {expr * args.n}")
    else:
        for n in range(1, args.max + 1):
            a, b, c = ncsf.s_from_psi_recursive(n), ncsf.s_from_psi_explicit(n), ncsf.quasidet_expand(n)
            ok = a == b == c
            results.append(_result("s_expansions_agree", "ok" if ok else "fail", {"n": n}))
            ok2 = ncsf.comult_s_check(n)
            results.append(_result("comult_S", "ok" if ok2 else "fail", {"n": n}))
            lines.append(f"n={n}: recursion/explicit/quasi-determinant {'agree' if ok else 'DISAGREE'}, "
                         f"Delta S_n {'ok' if ok2 else 'FAIL'}")
        ok, deg, _ = ncsf.lambda_sigma_inverse_check(args.max)
        results.append(_result("lambda_sigma_inverse", "ok" if ok else "fail", {"max": args.max, "first_failure": deg}))
        lines.append(f"lambda(-t) sigma(t) = 1 up to degree {args.max}: {'ok' if ok else 'FAIL'}")
    return results, lines


def _read_twist(args, q):
    if args.psi in (None, "default"):
        return default_twist(q)
    try:
        with open(args.psi) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"{args.psi}: cannot read twist: {exc}") from None
    psi = data["psi"] if isinstance(data, dict) else data
    return TwistForm(tuple(tuple(r) for r in psi))


def cmd_twist_check(args, q):
    t = _read_twist(args, q)
    try:
        violation = validate_twist(q, t)
    except QuiverError as exc:
        raise UsageError(str(exc)) from None
    results = [_result("validate_twist", "ok" if violation is None else "fail",
                       {"violation": [list(x) for x in violation] if violation else None})]
    lines = [f"twist compatibility: {'ok' if violation is None else f'violated at {violation}'}"]
    first = True
    for jv in range(q.n):
        if not q.is_real(jv):
            continue
        for letter in q.generators(args.bound):
            if letter.vertex == jv:
                continue
            N = 1 - generator_pairing(q, (jv, 1), letter)
            if N + letter.level > args.bound:
                continue
            c = minus_q_correspondence_check(q, t, jv, letter.vertex, letter.level,
                                             bound=args.bound if first else None)
            first = False
            results.append(_from_check(c))
            lines.append(f"q->-q {q.vertices[jv]} on {q.letter_name(letter)}: "
                         f"{'ok' if c.ok else 'FAIL'} (overall sign {c.detail['overall_sign']})")
    p = Presentation(q, "classical", args.bound)
    c = twisted_bialgebra_check(p, t, min(args.bound, 4))
    results.append(_from_check(c))
    lines.append(f"twisted bialgebra axiom on {c.detail['pairs']} word pairs: {'ok' if c.ok else 'FAIL'}")
    return results, lines


def cmd_coproduct_check(args, q):
    p = Presentation(q, "quantum" if args.quantum else "classical", args.bound)
    results, lines = [], []
    for c in coproduct_descends_check(p):
        results.append(_from_check(c))
    nbad = sum(1 for r in results if r["status"] == "fail")
    lines.append(f"coproduct descends on {len(results)} relations, {nbad} failing")
    classical = p if not args.quantum else Presentation(q, "classical", args.bound)
    for v in range(q.n):
        if q.is_real(v):
            continue
        for n in range(1, args.bound + 1):
            c = tilde_coproduct_check(classical, v, n)
            results.append(_from_check(c))
            lines.append(f"tilde coproduct {q.vertices[v]} n={n}: {'ok' if c.ok else 'FAIL'}")
    return results, lines


def cmd_components(args, q):
    results, lines = [], []
    if q.n == 1:
        c = character_identity_check(q, args.max_d)
        results.append(_from_check(c))
        for row in c.detail["rows"]:
            lines.append(f"d={row['d']}: components {row['components']}, graded rank {row['graded_rank']}")
        return results, lines
    p = Presentation(q, "classical", args.max_d)
    for d in degrees_up_to(q.n, args.max_d, include_zero=True):
        dim = p.graded_dimension(d)
        results.append(_result("components", "info", {"degree": list(d), "count": dim,
                                                      "note": "graded rank; no independent oracle"}))
        lines.append(f"{_fmt_deg(d)}: {dim} (graded rank)")
    return results, lines


def cmd_qbinom(args, q):
    results, lines = [], []
    for n in range(args.max_n + 1):
        for k in range(n + 1):
            s = qbinom_sign_probe(n, k)
            law = (-1) ** (k * (n - k))
            rule = case_split_sign(n, k)
            status = "ok" if s == law else "fail"
            results.append(_result("qbinom_sign", status, {"n": n, "k": k, "sign": s, "law": law,
                                                            "case_split_rule": rule,
                                                            "case_split_agrees": rule == s}))
    disagreements = sum(1 for r in results if not r["payload"]["case_split_agrees"])
    lines.append(f"sign of {{n,k}}_(-q) equals (-1)^(k(n-k)) for all n <= {args.max_n}: "
                 f"{'yes' if all(r['status'] == 'ok' for r in results) else 'NO'}")
    lines.append(f"case-split rule (-1 if n,k even or n odd) disagrees with direct computation in {disagreements} of {len(results)} cases")
    lines.append(f"e.g. {{2,1}}_q = {q_binomial(2, 1)}, sign {qbinom_sign_probe(2, 1)}, case-split rule {case_split_sign(2, 1)}")
    return results, lines


def cmd_lattice(args, q):
    p = Presentation(q, "classical", args.max_degree)
    rep = integral_lattice_closure(p, args.form, args.max_degree)
    results = [_result("integral_lattice_closure", "ok" if rep.ok else "fail", rep.to_json())]
    lines = [f"{_fmt_deg(r['degree'])}: dim {r['dim']}, lattice rank {r['rank']}" for r in rep.degrees]
    lines.append(f"closure under products: {'ok' if rep.ok else 'FAIL'}")
    if args.compare:
        cmp = compare_integral_forms(p, args.form, args.compare, args.max_degree)
        results.append(_result("compare_forms", "info", {"rows": cmp}))
        for row in cmp:
            lines.append(f"{_fmt_deg(row['degree'])}: {args.form} == {args.compare}: {row['equal']}")
    return results, lines


COMMANDS = {
    "info": cmd_info,
    "dims": cmd_dims,
    "serre-check": cmd_serre_check,
    "ncsf": cmd_ncsf,
    "twist-check": cmd_twist_check,
    "coproduct-check": cmd_coproduct_check,
    "components": cmd_components,
    "qbinom": cmd_qbinom,
    "lattice": cmd_lattice,
}


def build_parser():
    ap = argparse.ArgumentParser(prog="quivergkm", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def with_quiver(name, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("quiver", help="quiver JSON file")
        sp.add_argument("--json", action="store_true")
        return sp

    with_quiver("info", "vertex classification and forms")
    sp = with_quiver("dims", "graded dimensions of U(n^+)")
    sp.add_argument("--max-degree", type=int, default=DEFAULT_BOUND)
    sp.add_argument("--quantum", action="store_true")
    sp = with_quiver("serre-check", "Serre, divided-power and tilde relation checks")
    sp.add_argument("--bound", type=int, default=DEFAULT_BOUND)
    sp.add_argument("--quantum", action="store_true")
    sp = with_quiver("twist-check", "Psi-twist compatibility and the q -> -q correspondence")
    sp.add_argument("--bound", type=int, default=DEFAULT_BOUND)
    sp.add_argument("--psi", default="default", help="'default' or a JSON file with a psi matrix")
    sp = with_quiver("coproduct-check", "coproduct descends to the quotient; tilde coproducts")
    sp.add_argument("--bound", type=int, default=DEFAULT_BOUND)
    sp.add_argument("--quantum", action="store_true")
    sp = with_quiver("components", "component counts versus graded ranks")
    sp.add_argument("--max-d", type=int, default=DEFAULT_BOUND)
    sp = with_quiver("lattice", "integral lattice closure")
    sp.add_argument("--form", choices=FORMS, default="divided")
    sp.add_argument("--compare", choices=FORMS)
    sp.add_argument("--max-degree", type=int, default=DEFAULT_BOUND)

    sp = sub.add_parser("ncsf", help="noncommutative symmetric functions")
    sp.add_argument("--json", action="store_true")
    nsub = sp.add_subparsers(dest="action", required=True)
    ex = nsub.add_parser("expand")
    ex.add_argument("kind", choices=["S", "Psi", "Lambda", "s", "psi", "lambda"])
    ex.add_argument("n", type=int)
    ex.add_argument("--basis", default="psi", choices=["S", "Psi", "Lambda", "s", "psi", "lambda"])
    ex.add_argument("--json", action="store_true")
    ck = nsub.add_parser("check")
    ck.add_argument("--max", type=int, default=8)
    ck.add_argument("--json", action="store_true")

    sp = sub.add_parser("qbinom", help="sign of q-binomials under q -> -q")
    sp.add_argument("--max-n", type=int, default=10)
    sp.add_argument("--json", action="store_true")
    return ap


def dispatch(argv):
    """Run one command; return (report dict, human-readable lines)."""
    args = build_parser().parse_args(argv)
    q = parse_quiver_file(args.quiver) if hasattr(args, "quiver") else None
    results, lines = COMMANDS[args.command](args, q)
    failed = any(r["status"] == "fail" for r in results)
    inp = {k: v for k, v in sorted(vars(args).items()) if k not in ("json", "command")}
    if q is not None:
        inp["quiver"] = q.to_json()
    report = {"command": args.command, "input": inp, "results": results, "exit_status": 1 if failed else 0}
    return report, lines, args.json


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    try:
        report, lines, as_json = dispatch(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    if as_json:
        print(json.dumps(report, indent=2, default=str))
    else:
        print("\n".join(lines))
    return report["exit_status"]


if __name__ == "__main__":
    sys.exit(main())
