"""Command-line front end.

Every subcommand writes one JSON report (stdout, or ``--report PATH``) and
exits with

    0  success / verified
    1  a mathematical check failed (the report is still written)
    2  input error (unreadable or malformed files, bad parameters)
    3  a size or work budget was exceeded

Log verbosity comes from ``MORAVAK_LOG`` (error, warning, info, debug);
logs go to stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from . import __version__
from .cp_modules import cohomology_dims, decompose, is_permutation_module, module_from_json
from .errors import (
    BudgetExceeded,
    InconsistentPresentation,
    InputError,
    NoStabilization,
    SizeLimit,
)
from .groups import commuting_tuple_class_count, conjugacy_classes, group_from_json, group_type
from .groups.core import TUPLE_BUDGET
from .groups.iso import find_isomorphism, fingerprint
from .dsl import instantiate
from .polys import (
    CoefficientSpec,
    Infinite,
    PolyRing,
    audit,
    buchberger,
    quotient_dimension,
    standard_monomials,
)
from .verifier import RingPresentation, classify_family, g36_presentation, verify_rank

log = logging.getLogger("moravak")

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3
STANDARD_MONOMIAL_LIMIT = 5000


def _setup_logging() -> None:
    level = os.environ.get("MORAVAK_LOG", "warning").upper()
    logging.basicConfig(stream=sys.stderr, level=getattr(logging, level, logging.WARNING),
                        format="%(levelname)s %(name)s: %(message)s")


def _load_json(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _height(text: str) -> int:
    value = int(text)
    if value < 2:
        raise argparse.ArgumentTypeError("s must be at least 2")
    return value


# -- subcommands -------------------------------------------------------------------

def cmd_group_info(args) -> tuple[dict, int]:
    g = group_from_json(_load_json(args.spec))
    classes = conjugacy_classes(g)
    return {
        "order": g.order,
        "generators": {name: g.element_label(i) for name, i in g.generator_indices.items()},
        "abelian": g.is_abelian,
        "type": list(group_type(g)),
        "class_count": len(classes),
        "fingerprint": fingerprint(g).as_dict(),
    }, EXIT_OK


def cmd_group_chi(args) -> tuple[dict, int]:
    g = group_from_json(_load_json(args.spec))
    chi = commuting_tuple_class_count(g, args.s, budget=args.budget, method=args.method)
    return {"order": g.order, "s": args.s, "chi": chi}, EXIT_OK


def cmd_group_iso(args) -> tuple[dict, int]:
    g1 = group_from_json(_load_json(args.spec1))
    g2 = group_from_json(_load_json(args.spec2))
    f = find_isomorphism(g1, g2)
    report = {"orders": [g1.order, g2.order], "isomorphic": f is not None}
    if f is not None:
        report["generator_images"] = {name: g2.element_label(f[i])
                                      for name, i in g1.generator_indices.items()}
    return report, EXIT_OK


def cmd_family_classify(args) -> tuple[dict, int]:
    result = classify_family(args.n, use_conjugacy=not args.no_conjugacy)
    return result.to_dict(), EXIT_OK


def _ideal_from_json(doc: dict, order: str):
    try:
        p = int(doc.get("p", 2))
        raw = doc["variables"]
        names = [v["name"] if isinstance(v, dict) else v for v in raw]
        degrees = [int(v.get("degree", 1)) if isinstance(v, dict) else 1 for v in raw]
        gens = doc["generators"]
        s = int(doc.get("s", 2))
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise InputError(f"malformed ideal document: {exc}") from exc
    ring = PolyRing(names, degrees, p, order)
    spec = CoefficientSpec(p, s)
    return ring, [instantiate(g, spec, ring) for g in gens]


def cmd_gb(args) -> tuple[dict, int]:
    ring, gens = _ideal_from_json(_load_json(args.ideal), args.order)
    gb = buchberger(gens, max_steps=args.max_steps, max_basis=args.max_basis)
    dim = quotient_dimension(gb)
    report = {
        "p": ring.p,
        "variables": list(ring.names),
        "order": args.order,
        "basis": [str(f) for f in gb],
        "size": len(gb),
        "audit_ok": not audit(gb),
        "quotient_dimension": "infinite" if dim == Infinite else dim,
    }
    if dim != Infinite and dim <= STANDARD_MONOMIAL_LIMIT:
        report["standard_monomials"] = [ring.monomial_str(m) for m in standard_monomials(gb)]
    return report, EXIT_OK


def cmd_verify(args) -> tuple[dict, int]:
    if args.target == "g36":
        pres = g36_presentation()
    else:
        pres = RingPresentation.from_json(_load_json(args.target))
    report = verify_rank(pres, args.s, order=args.order, tuple_budget=args.budget)
    doc = report.to_dict(with_timings=not args.no_timings)
    ok = report.match and all(e["zero"] for e in report.extra_relations) \
        and all(report.homogeneous.values())
    return doc, EXIT_OK if ok else EXIT_MISMATCH


def cmd_module_decompose(args) -> tuple[dict, int]:
    m = module_from_json(_load_json(args.matrix))
    d = decompose(m)
    return {
        "p": m.p,
        "dim": m.dim,
        "blocks": list(d.blocks),
        "free_rank": d.free_rank,
        "trivial_rank": d.trivial_rank,
        "intermediate": {str(k): v for k, v in d.intermediate.items()},
        "permutation_module": is_permutation_module(m),
        "cohomology_dims": cohomology_dims(m, args.degrees),
    }, EXIT_OK


# -- parser ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="moravak", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"moravak {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--report", help="write the JSON report here instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    group = sub.add_parser("group", help="finite group utilities")
    gsub = group.add_subparsers(dest="action", required=True)
    p = gsub.add_parser("info", parents=[common], help="structure summary of a group spec")
    p.add_argument("--spec", required=True)
    p.set_defaults(func=cmd_group_info)
    p = gsub.add_parser("chi", parents=[common], help="count classes of commuting s-tuples")
    p.add_argument("--spec", required=True)
    p.add_argument("--s", type=_positive, required=True)
    p.add_argument("--budget", type=_positive, default=TUPLE_BUDGET)
    p.add_argument("--method", choices=["auto", "naive", "chain"], default="auto")
    p.set_defaults(func=cmd_group_chi)
    p = gsub.add_parser("iso", parents=[common], help="test two group specs for isomorphism")
    p.add_argument("--spec1", required=True)
    p.add_argument("--spec2", required=True)
    p.set_defaults(func=cmd_group_iso)

    family = sub.add_parser("family", help="the (C_2^n x C_2^n) semidirect C_2 family")
    fsub = family.add_subparsers(dest="action", required=True)
    p = fsub.add_parser("classify", parents=[common],
                        help="count isomorphism classes over all valid actions")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--no-conjugacy", action="store_true",
                   help="skip the GL_2 conjugacy pre-merge (slow beyond n=2)")
    p.set_defaults(func=cmd_family_classify)

    p = sub.add_parser("gb", parents=[common],
                       help="Groebner basis and quotient dimension of an ideal")
    p.add_argument("--ideal", required=True)
    p.add_argument("--order", choices=["grevlex", "lex"], default="grevlex")
    p.add_argument("--max-steps", type=_positive, default=10 ** 6)
    p.add_argument("--max-basis", type=_positive, default=10 ** 4)
    p.set_defaults(func=cmd_gb)

    p = sub.add_parser("verify", parents=[common], help="rank check of a ring presentation")
    p.add_argument("target", help="'g36' or a presentation JSON file")
    p.add_argument("--s", type=_height, required=True)
    p.add_argument("--order", choices=["grevlex", "lex"], default="grevlex")
    p.add_argument("--budget", type=_positive, default=None, help="tuple budget for chi")
    p.add_argument("--no-timings", action="store_true", help="omit the timings field")
    p.set_defaults(func=cmd_verify)

    module = sub.add_parser("module", help="F_p[C_p]-module utilities")
    msub = module.add_subparsers(dest="action", required=True)
    p = msub.add_parser("decompose", parents=[common],
                        help="Jordan type and cohomology of a C_p action")
    p.add_argument("--matrix", required=True)
    p.add_argument("--degrees", type=int, default=4)
    p.set_defaults(func=cmd_module_decompose)

    return parser


def _emit(report: dict, path: str | None) -> None:
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def main(argv: list[str] | None = None) -> int:
    _setup_logging()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        report, code = args.func(args)
    except (InputError, InconsistentPresentation) as exc:
        log.error("%s", exc)
        return EXIT_INPUT
    except (BudgetExceeded, SizeLimit, NoStabilization) as exc:
        log.error("%s", exc)
        return EXIT_BUDGET
    report = {"command": _command_name(args), "version": __version__, **report}
    try:
        _emit(report, args.report)
    except OSError as exc:
        log.error("cannot write report: %s", exc)
        return EXIT_INPUT
    return code


def _command_name(args) -> str:
    action = getattr(args, "action", None)
    return f"{args.command} {action}" if action else args.command


if __name__ == "__main__":
    sys.exit(main())
