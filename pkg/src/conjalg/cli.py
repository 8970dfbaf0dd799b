"""Command-line front end.

Exit statuses: 0 success, 1 verification failure, 2 usage or parse error,
3 resource guard.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from . import __version__
from .algebra import AlgebraElement, basis_products, bracket_graded, bullet, degree, involution, star
from .conjugacy import canonicalize, class_sizes, classes_up_to, set_cap
from .diagnostics import ambient_scalars, span_index
from .errors import ConjAlgError, ResourceGuard
from .oracle import verify_stability
from .perm import FamilyDescriptor, parse_element
from .surfaces import PRODUCT2, surface_export, surface_from_element, surface_topology

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_GUARD = 0, 1, 2, 3


def parse_operand(family: FamilyDescriptor, text: str) -> AlgebraElement:
    """``"(1 2)"``, ``"e@0"`` or a sum such as ``"2*(1 2) + e@1"``."""
    total = AlgebraElement.zero(family)
    for chunk in text.split("+"):
        chunk = chunk.strip()
        coeff = 1
        if "*" in chunk:
            head, _, chunk = chunk.partition("*")
            coeff = int(head)
        total = total + coeff * AlgebraElement.of(parse_element(family, chunk))
    return total


def parse_range(text: str) -> range:
    lo, sep, hi = text.partition("..")
    if not sep:
        return range(int(text), int(text) + 1)
    return range(int(lo), int(hi) + 1)


def _emit(args, text: str, obj=None):
    if args.json and obj is not None:
        text = json.dumps(obj, sort_keys=True, indent=2)
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        print(text)


def _check_ambient(args, *elements: AlgebraElement, combine=sum):
    ambients = [max((c.n for c in u), default=0) for u in elements]
    if combine(ambients) > args.max_n:
        raise ResourceGuard(f"result ambient {combine(ambients)} exceeds --max-n {args.max_n}")


def cmd_binary(args) -> int:
    fam = args.family
    u, v = parse_operand(fam, args.left), parse_operand(fam, args.right)
    _check_ambient(args, u, v)
    if args.command == "mult":
        res = star(u, v, workers=args.parallel)
    elif args.command == "bullet":
        res = bullet(u, v)
    else:
        res = bracket_graded(u, v)
    _emit(args, _format_element(res), res.to_json())
    return EXIT_OK


def _format_element(u: AlgebraElement) -> str:
    if not u:
        return "0"
    width = max(len(str(a)) for _, a in u.items())
    return "\n".join(f"{a:>{width}} * B[{c.literal}]" for c, a in u.items())


def cmd_unary(args) -> int:
    u = parse_operand(args.family, args.operand)
    _check_ambient(args, u, combine=max)
    if args.command == "involution":
        res = involution(u)
        _emit(args, _format_element(res), res.to_json())
    else:
        d = degree(u)
        _emit(args, str(d), {"degree": d})
    return EXIT_OK


def cmd_classes(args) -> int:
    sizes = class_sizes(args.family, args.n)
    lines = [f"{c.key}\t{c.literal}\t{size}" for c, size in sizes.items()]
    obj = [dict(c.to_json(), size=size) for c, size in sizes.items()]
    _emit(args, "\n".join(lines), obj)
    return EXIT_OK


def table_rows(family: FamilyDescriptor, n_max: int, workers: int = 1) -> list[tuple]:
    basis = classes_up_to(family, n_max)
    pairs = [(g, h) for g in basis for h in basis]
    basis_products(pairs, workers)
    rows = []
    for g, h in pairs:
        prod = star(AlgebraElement.basis(g), AlgebraElement.basis(h))
        for r, a in prod.items():
            rows.append((family.literal, g.key, h.key, r.key, a))
    rows.sort()
    return rows


def render_table(rows: list[tuple], fmt: str) -> str:
    if fmt == "json":
        keys = ("family", "g", "h", "r", "coeff")
        return json.dumps([dict(zip(keys, r)) for r in rows], indent=1) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(("family", "g", "h", "r", "coeff"))
    writer.writerows(rows)
    return buf.getvalue()


def cmd_table(args) -> int:
    if not args.out:
        print("table requires --out", file=sys.stderr)
        return EXIT_USAGE
    if 2 * args.n_max > args.max_n:
        raise ResourceGuard(f"products reach ambient {2 * args.n_max} > --max-n {args.max_n}")
    out = Path(args.out)
    manifest_path = out.with_name(out.name + ".manifest.json")
    manifest = {
        "family": args.family.literal,
        "n_max": args.n_max,
        "format": args.format,
        "version": __version__,
    }
    if out.exists() and manifest_path.exists() and not args.force:
        if json.loads(manifest_path.read_text()) == manifest:
            print(f"reusing cached table {out}")
            return EXIT_OK
    rows = table_rows(args.family, args.n_max, args.parallel)
    out.write_text(render_table(rows, args.format))
    manifest_path.write_text(json.dumps(manifest, sort_keys=True, indent=2) + "\n")
    print(f"wrote {len(rows)} rows to {out}")
    return EXIT_OK


def cmd_verify(args) -> int:
    fam = args.family
    g = canonicalize(parse_element(fam, args.left))
    h = canonicalize(parse_element(fam, args.right))
    report = verify_stability(g, h, parse_range(args.range), override=args.force, workers=args.parallel)
    _emit(args, report.table(), report.to_json())
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_surface(args) -> int:
    if args.family != PRODUCT2:
        print(f"surfaces need --family s2, got {args.family}", file=sys.stderr)
        return EXIT_USAGE
    g = parse_element(PRODUCT2, args.pair)
    if "@" not in args.pair and g.n == 0:
        # a bare "e|e" means the two-triangle sphere
        g = g.embed(1)
    if args.canonical:
        g = canonicalize(g).rep
    s = surface_from_element(g)
    if args.action == "analyze":
        topo = surface_topology(s)
        _emit(args, topo.text(), topo.to_json())
    else:
        text = surface_export(s, args.format)
        if args.out:
            Path(args.out).write_text(text)
        else:
            sys.stdout.write(text)
    return EXIT_OK


def cmd_diagnose(args) -> int:
    if args.which == "remark1":
        rows = ambient_scalars(args.family, args.n)
        lines = ["element  n  n'  N  measured  falling_factorial"]
        for r in rows:
            lines.append(
                f"{r.literal:>7} {r.n_low:>2} {r.n_high:>3} {r.N:>2} {str(r.measured):>9} {r.falling_factorial:>18}"
            )
        obj = [vars(r) | {"matches": r.matches} for r in rows]
        _emit(args, "\n".join(lines), obj)
    else:
        rep = span_index(args.family, args.n)
        text = (
            f"N={rep.N}: {rep.generators} generators in a lattice of rank {rep.classes}; "
            f"span rank {rep.rank}, invariant factors {rep.invariants}, index {rep.index}"
        )
        _emit(args, text, vars(rep) | {"index": rep.index})
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--family", type=FamilyDescriptor.parse, default=None,
                        help="s1, s2, sm:<m> or full:<l1,l2,...> (default s1; s2 for surface)")
    common.add_argument("--json", action="store_true", help="emit JSON")
    common.add_argument("--out", help="write output to this file")
    common.add_argument("--force", action="store_true",
                        help="recompute cached tables; lift oracle guards")
    common.add_argument("--parallel", type=int, default=1, metavar="K",
                        help="worker processes for gluing sums")
    common.add_argument("--max-n", type=int, default=10, help="ambient cap (default 10)")

    parser = argparse.ArgumentParser(prog="conjalg", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    for name, helptext in (("mult", "stable product"), ("bullet", "graded product"),
                           ("bracket", "graded Lie bracket")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("left")
        p.add_argument("right")
        p.set_defaults(func=cmd_binary)

    for name, helptext in (("involution", "class-inverse involution"),
                           ("degree", "largest ambient in an element")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("operand")
        p.set_defaults(func=cmd_unary)

    p = sub.add_parser("classes", parents=[common], help="list classes of G_n")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_classes)

    p = sub.add_parser("table", parents=[common], help="tabulate structure constants")
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", parents=[common], help="check stability against the oracle")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--range", default="0..4", help="N range, e.g. 0..6")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("surface", parents=[common], help="checker surfaces (family s2)")
    p.add_argument("action", choices=("analyze", "export"))
    p.add_argument("pair", help='pair literal such as "(1 2)|e"')
    p.add_argument("--format", choices=("json", "dot"), default="json")
    p.add_argument("--canonical", action="store_true", help="use the class representative")
    p.set_defaults(func=cmd_surface)

    p = sub.add_parser("diagnose", parents=[common], help="ambient scalars and span index")
    p.add_argument("which", choices=("remark1", "remark2"))
    p.add_argument("--n", type=int, default=2, help="largest N (remark1) or N (remark2)")
    p.set_defaults(func=cmd_diagnose)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.family is None:
        args.family = PRODUCT2 if args.command == "surface" else FamilyDescriptor.product(1)
    set_cap(args.max_n)
    try:
        return args.func(args)
    except ResourceGuard as exc:
        print(f"resource guard: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (ConjAlgError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
