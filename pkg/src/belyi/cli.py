"""Command line front end.

Exit status: 0 success (or verified Belyi), 1 verified not Belyi, 2 input
error, 3 resource-limit refusal, 4 internal error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from belyi import census as cs
from belyi import report
from belyi.chain import DEFAULT_EXPAND_CAP, MapChain, expand
from belyi.errors import InputError, ResourceLimitError
from belyi.exact import (
    AlgebraicSet,
    format_ext,
    format_poly,
    format_rational,
    is_squarefree,
    squarefree_part,
)
from belyi.pipeline import construct
from belyi.powerprod import DEFAULT_MAX_DIGITS
from belyi.textio import chain_to_document, document_to_chain, parse_points, parse_poly
from belyi.verify import CritReport, is_belyi

EXIT_OK, EXIT_NOT_BELYI, EXIT_INPUT, EXIT_LIMIT, EXIT_INTERNAL = 0, 1, 2, 3, 4


class InternalError(RuntimeError):
    pass


def _emit(args, text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _crit_json(rep: CritReport) -> dict:
    return {
        "rational_values": [format_ext(x) for x in rep.rational_values],
        "irrational_defining": None
        if rep.irrational_defining is None
        else [format_rational(c) for c in rep.irrational_defining.coeffs],
        "per_step": [
            {
                "index": s.index,
                "kind": s.kind,
                "critical_values": [format_ext(x) for x in s.rationals],
                "irrational": None if s.irrational is None else format_poly(s.irrational),
                "pushed_values": [format_ext(x) for x in s.pushed_rationals],
                "pushed_irrational": None
                if s.pushed_irrational is None
                else format_poly(s.pushed_irrational),
            }
            for s in rep.per_step
        ],
    }


def _step_rows(chain: MapChain) -> str:
    rows = [("step", "kind", "degree", "map")]
    for i, s in enumerate(chain.steps):
        kind = type(s).__name__.replace("Step", "").lower()
        rows.append((i, kind, report.short_int(s.degree), _short(str(s))))
    return report.tsv(rows)


def _short(text: str, width: int = 160) -> str:
    return text if len(text) <= width else text[: width - 3] + "..."


def _crit_lines(rep: CritReport) -> list[str]:
    lines = []
    for s in rep.per_step:
        own = ", ".join(_short(format_ext(x), 60) for x in s.rationals) or "-"
        pushed = ", ".join(_short(format_ext(x), 60) for x in s.pushed_rationals) or "-"
        extra = f"; irrational: roots of {_short(format_poly(s.irrational), 80)}" if s.irrational else ""
        lines.append(f"stage {s.index} ({s.kind}): critical values {own}{extra} -> final {pushed}")
    return lines


# -- belyi ------------------------------------------------------------------


def cmd_belyi(args) -> int:
    if args.poly is None and args.points is None:
        raise InputError("give --poly and/or --points")
    extras = []
    S = None
    provenance = {}
    if args.poly is not None:
        f = parse_poly(args.poly)
        if f.degree < 1:
            raise InputError("--poly must be non-constant")
        if not is_squarefree(f):
            f = squarefree_part(f)
            print(f"warning: input is not squarefree; using {format_poly(f)}", file=sys.stderr)
        rats, S = AlgebraicSet.split(f)
        extras.extend(rats)
        provenance["poly"] = format_poly(f)
    if args.points is not None:
        pts = parse_points(args.points)
        extras.extend(pts)
        provenance["points"] = [format_ext(p) for p in pts]

    built = construct(S, extras, max_digits=args.max_digits)
    chain = built.chain
    ok, rep = is_belyi(chain, max_digits=args.max_digits)
    if not ok:
        raise InternalError("constructed chain failed verification")
    doc = chain_to_document(chain, provenance)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(_dump(doc))
    if args.figure:
        report.degree_figure([type(s).__name__[:-4].lower() for s in chain.steps], chain.degrees, args.figure)

    if args.json:
        _emit(
            args,
            _dump(
                {
                    "chain": doc,
                    "report": {
                        "verified": True,
                        "tracked_points": [format_ext(x) for x in built.tracked],
                        "rational_stage_degrees": built.rational_stage.degrees,
                        "collapse_stage_degrees": built.collapse_stage.degrees,
                        "critical_values": _crit_json(rep),
                    },
                }
            ),
        )
        return EXIT_OK
    lines = [
        "input: " + "; ".join(f"{k} {v if isinstance(v, str) else ','.join(v)}" for k, v in provenance.items()),
        "rational stage degrees: " + ", ".join(map(report.short_int, built.rational_stage.degrees)),
        "points after rational stage: " + ", ".join(_short(format_ext(x), 60) for x in built.tracked),
        "collapse stage degrees: " + ", ".join(map(report.short_int, built.collapse_stage.degrees)),
        f"total degree: {report.short_int(chain.total_degree)}",
        _step_rows(chain),
        "critical values: " + ", ".join(format_ext(x) for x in rep.rational_values),
        "verified: Belyi",
    ]
    _emit(args, "\n".join(lines))
    return EXIT_OK


# -- verify / expand --------------------------------------------------------


def _read_chain(path: str) -> MapChain:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON: {exc.msg} (line {exc.lineno}, column {exc.colno})") from None
    if isinstance(doc, dict) and "chain" in doc and "steps" not in doc:
        doc = doc["chain"]
    return document_to_chain(doc)


def cmd_verify(args) -> int:
    chain = _read_chain(args.chain_file)
    ok, rep = is_belyi(chain, max_digits=args.max_digits)
    if args.json:
        _emit(args, _dump({"belyi": ok, "total_degree": chain.total_degree, "critical_values": _crit_json(rep)}))
    else:
        lines = _crit_lines(rep)
        lines.append("critical values: " + (", ".join(format_ext(x) for x in rep.rational_values) or "none"))
        if rep.irrational_defining is not None:
            lines.append(f"irrational critical values: roots of {format_poly(rep.irrational_defining)}")
        if rep.offending:
            lines.append("outside {0, 1, oo}: " + ", ".join(format_ext(x) for x in rep.offending))
        lines.append(f"verdict: {'Belyi' if ok else 'not Belyi'}")
        _emit(args, "\n".join(lines))
    return EXIT_OK if ok else EXIT_NOT_BELYI


def cmd_expand(args) -> int:
    chain = _read_chain(args.chain_file)
    num, den = expand(chain, args.expand_cap)
    if args.json:
        _emit(
            args,
            _dump(
                {
                    "numerator": [format_rational(c) for c in num.coeffs],
                    "denominator": [format_rational(c) for c in den.coeffs],
                    "degree": max(num.degree, den.degree),
                }
            ),
        )
    else:
        _emit(args, f"numerator\t{format_poly(num)}\ndenominator\t{format_poly(den)}")
    return EXIT_OK


# -- census -----------------------------------------------------------------


def _class_json(c: cs.DessinClass) -> dict:
    s0, s1 = c.representative.images()
    return {
        "passport": [list(c.passport.zero), list(c.passport.one), list(c.passport.inf)],
        "genus": c.genus,
        "aut_order": c.aut_order,
        "representative": {"sigma0": s0, "sigma1": s1},
    }


def cmd_census(args) -> int:
    d = args.d
    if d < 1:
        raise InputError("degree must be at least 1")
    mode = args.mode
    if mode == "count":
        m_d = cs.hall_count(d)
        if args.figure:
            counts = {k: len(cs.enumerate_dessins(k, args.census_limit)) for k in range(1, min(d, args.census_limit, 6) + 1)}
            report.hall_figure(d, args.figure, counts)
        _emit(args, _dump({"d": d, "m_d": m_d}) if args.json else str(m_d))
        return EXIT_OK
    if mode == "bound":
        if args.arg is None:
            raise InputError("census bound needs the automorphism count a")
        try:
            a = int(args.arg)
        except ValueError:
            raise InputError(f"bad automorphism count {args.arg!r}") from None
        try:
            value = cs.degree_bound(d, a)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        _emit(args, _dump({"d": d, "a": a, "bound": value}) if args.json else str(value))
        return EXIT_OK
    if mode == "passport":
        if args.arg is None:
            raise InputError("census passport needs a passport such as 3/3/3")
        passport = cs.Passport.parse(args.arg)
        if passport.degree != d or not passport.is_valid():
            raise InputError(f"{args.arg} is not a valid degree-{d} passport")
        value = cs.passport_bound(d, passport, args.census_limit)
        _emit(args, _dump({"d": d, "passport": str(passport), "count": value}) if args.json else str(value))
        return EXIT_OK

    classes = cs.enumerate_dessins(d, args.census_limit)
    m_d = cs.hall_count(d)
    mass, pair_mass = cs.class_mass(classes)
    mass_ok = mass == m_d
    if args.figure:
        report.census_figure(classes, args.figure)
    if args.json:
        _emit(
            args,
            _dump(
                {
                    "d": d,
                    "classes": [_class_json(c) for c in classes],
                    "m_d": m_d,
                    "identities": {"class_mass_ok": mass_ok},
                }
            ),
        )
    else:
        lines = [
            report.census_table(classes),
            f"classes: {len(classes)}",
            f"class-mass identity: sum d/aut = {mass}, M_d = {m_d}: {'ok' if mass_ok else 'FAILED'}",
        ]
        _emit(args, "\n".join(lines))
    return EXIT_OK if mass_ok else EXIT_INTERNAL


# -- entry point ------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="belyi", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument(
        "--max-digits",
        type=int,
        default=DEFAULT_MAX_DIGITS,
        help="largest exact intermediate value, in decimal digits (default %(default)s)",
    )

    p = sub.add_parser("belyi", parents=[common], help="construct and verify a Belyi map")
    p.add_argument("--poly", help='polynomial whose roots must land in {0,1,oo}, e.g. "z^2 - 2"')
    p.add_argument("--points", help="comma separated rational points, oo for infinity")
    p.add_argument("--out", help="write the chain document to this file")
    p.add_argument("--figure", help="render a step-degree figure to this file")
    p.set_defaults(func=cmd_belyi)

    p = sub.add_parser("verify", parents=[common], help="check a chain document")
    p.add_argument("chain_file")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("expand", parents=[common], help="expand a chain into one rational function")
    p.add_argument("chain_file")
    p.add_argument("--expand-cap", type=int, default=DEFAULT_EXPAND_CAP)
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("census", parents=[common], help="count and enumerate coverings")
    p.add_argument("mode", choices=["count", "enumerate", "bound", "passport"])
    p.add_argument("d", type=int)
    p.add_argument("arg", nargs="?", help="a for 'bound', passport like 3/3/3 for 'passport'")
    p.add_argument("--census-limit", type=int, default=cs.DEFAULT_CENSUS_LIMIT)
    p.add_argument("--figure", help="render a figure to this file")
    p.set_defaults(func=cmd_census)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ResourceLimitError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except InternalError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
