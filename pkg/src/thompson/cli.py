"""Command line front end.

Exit codes: 0 success, 1 a verification suite failed, 2 unreadable input,
3 a requested size is above the hard ceiling.
"""

import argparse
import json
import sys

from . import coalg, groupf, ncdga, verify
from .dyadic import Dyadic, DyadicError, PLMapError

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_BOUND = 0, 1, 2, 3
CUP_CEILING = 16


class BoundExceeded(Exception):
    pass


class InputError(Exception):
    pass


def _dumps(data):
    return json.dumps(data, ensure_ascii=False, indent=2)


def cmd_elem(args):
    try:
        f = groupf.parse_element(args.expr)
    except groupf.GeneratorBoundError as exc:
        raise BoundExceeded(str(exc)) from exc
    except groupf.ExprError as exc:
        raise InputError(str(exc)) from exc
    ab = groupf.abelianize(f)
    value = None
    if args.eval is not None:
        try:
            t = Dyadic.parse(args.eval)
            value = groupf.evaluate(f, t)
        except (DyadicError, PLMapError) as exc:
            raise InputError(str(exc)) from exc
    if args.json:
        data = {} if args.abelianize else {"element": f.to_json()}
        data["abelianization"] = list(ab)
        if value is not None:
            data["eval"] = {"t": str(t), "value": str(value)}
        return EXIT_OK, _dumps(data)
    lines = []
    if not args.abelianize:
        lines.append(str(f))
    lines.append(f"abelianization: ({ab[0]}, {ab[1]})")
    if value is not None:
        lines.append(f"f({t}) = {value}")
    return EXIT_OK, "\n".join(lines)


def cmd_hom(args):
    if not 0 <= args.max_degree <= args.max_factors <= ncdga.MAX_FACTORS:
        raise BoundExceeded(
            f"need 0 <= max-degree <= max-factors <= {ncdga.MAX_FACTORS}")
    rows = ncdga.homology_table(args.max_degree, args.max_factors)
    if args.json:
        return EXIT_OK, _dumps({"max_degree": args.max_degree, "degrees": rows})
    lines = ["n  rank  torsion  basis"]
    for r in rows:
        torsion = ", ".join(map(str, r["torsion"])) or "none"
        lines.append(f"{r['degree']:<2} {r['rank']:<5} {torsion:<8} {', '.join(r['basis'])}")
    return EXIT_OK, "\n".join(lines)


def cmd_cup(args):
    if not 0 <= args.max_degree <= CUP_CEILING:
        raise BoundExceeded(f"need 0 <= max-degree <= {CUP_CEILING}")
    table = coalg.cohomology_table(args.max_degree)
    if args.json:
        return EXIT_OK, _dumps(table)
    check = table["presentation_check"]
    lines = [f"presentation check: {'ok' if check['ok'] else 'FAILED'}"]
    lines.append(f"generators: a = {check['generators']['a']}, b = {check['generators']['b']}, "
                 f"u = {check['generators']['u']}")
    bases = table["bases"]
    for entry in table["degree_pairs"]:
        p, q = entry["p"], entry["q"]
        for i, x in enumerate(bases[str(p)]):
            for j, y in enumerate(bases[str(q)]):
                coords = entry["matrix"][i][j]
                terms = [(k, c) for k, c in zip(bases[str(p + q)], coords) if c]
                lines.append(f"{x} ∪ {y} = " + (ncdga.format_terms(terms, fmt=str)))
    return EXIT_OK, "\n".join(lines)


def cmd_verify(args):
    results = verify.run_suite(args.suite, args.seed)
    failed = sum(not r.passed for r in results)
    lines = [str(r) for r in results]
    lines.append(f"{len(results) - failed}/{len(results)} checks passed")
    return (EXIT_FAIL if failed else EXIT_OK), "\n".join(lines)


def cmd_certify(args):
    try:
        c1, c2 = ncdga.NCPoly.parse(args.cycle1), ncdga.NCPoly.parse(args.cycle2)
        b = ncdga.certify_homologous(c1, c2)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    if b is None:
        return EXIT_OK, "not homologous"
    return EXIT_OK, f"b = {b}"


def build_parser():
    parser = argparse.ArgumentParser(prog="thompson", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("elem", help="evaluate an element expression of F")
    p.add_argument("expr")
    p.add_argument("--eval", metavar="T", help="evaluate the map at a dyadic point such as 3/2^2")
    p.add_argument("--abelianize", action="store_true", help="print only the abelianization")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_elem)

    p = sub.add_parser("hom", help="integral homology table")
    p.add_argument("--max-degree", type=int, default=6)
    p.add_argument("--max-factors", type=int, default=8)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_hom)

    p = sub.add_parser("cup", help="cup product table and presentation check")
    p.add_argument("--max-degree", type=int, default=8)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_cup)

    p = sub.add_parser("verify", help="run the invariant suites")
    p.add_argument("--suite", choices=[*verify.SUITES, "all"], default="all")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("certify", help="find b with d(b) = cycle1 - cycle2")
    p.add_argument("cycle1")
    p.add_argument("cycle2")
    p.set_defaults(func=cmd_certify)
    return parser


def run(argv):
    """Run one command; returns ``(exit code, output text)``."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (exc.code if isinstance(exc.code, int) else EXIT_PARSE), ""
    try:
        return args.func(args)
    except InputError as exc:
        return EXIT_PARSE, f"error: {exc}"
    except BoundExceeded as exc:
        return EXIT_BOUND, f"error: {exc}"


def main(argv=None):
    code, text = run(sys.argv[1:] if argv is None else argv)
    if text:
        print(text, file=sys.stderr if code in (EXIT_PARSE, EXIT_BOUND) else sys.stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())
