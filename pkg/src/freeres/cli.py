"""Command-line entry points.

Exit status: 0 success, 1 usage or input error, 2 certification failure,
3 randomized search exhausted.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Sequence

from .construct import (
    CertificationError,
    NotTorsionlessError,
    SearchConfig,
    SearchExhaustedError,
    brunsify,
    build_pd_module,
)
from .document import DocumentError, SessionDocument, emit_document, parse_document
from .free_linalg import DimensionError
from .groebner import prune, resolve
from .invariants import PresentedModule, check_exactness, check_torsionless, minimal_generator_count
from .koszul import koszul_complex, koszul_section
from .scalar_poly import DEFAULT_PRIME, RingSpec

EXIT_OK, EXIT_USAGE, EXIT_CERT, EXIT_EXHAUSTED = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8", newline="\n")


def _load(path: str) -> SessionDocument:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return parse_document(text)


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("BRUNS_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"BRUNS_SEED must be an integer, got {env!r}") from None


def _report_path(args) -> str | None:
    if args.report:
        return args.report
    if args.out and args.out != "-":
        return args.out + ".cert.json"
    return None


# subcommands ---------------------------------------------------------------------


def _cmd_koszul(args) -> int:
    names = tuple(v.strip() for v in args.vars.split(",") if v.strip())
    ring = RingSpec(args.p, names, args.order)
    xs = ring.gens()
    doc = SessionDocument(ring)
    if args.section:
        lo, sep, hi = args.section.partition("..")
        if not sep or not lo.isdigit() or not hi.isdigit():
            raise UsageError("--section expects A..B")
        doc.add_complex("section", koszul_section(xs, int(lo), int(hi)), "s")
    else:
        doc.add_complex("koszul", koszul_complex(xs), "d")
    _write(args.out, emit_document(doc))
    return EXIT_OK


def _cmd_resolve(args) -> int:
    doc = _load(args.infile)
    if args.matrix not in doc.matrices:
        raise UsageError(f"no matrix named {args.matrix!r}")
    res = resolve(doc.matrices[args.matrix], args.max_length)
    if res.graded:
        res = prune(res)
    out = SessionDocument(doc.ring)
    out.add_complex("resolution", res, f"{args.matrix}_")
    _write(args.out, emit_document(out))
    return EXIT_OK


def _cmd_check(args) -> int:
    doc = _load(args.infile)
    if args.complex not in doc.complexes:
        raise UsageError(f"no complex named {args.complex!r}")
    res = doc.complex(args.complex)
    exact = check_exactness(res)
    report = {
        "complex": args.complex,
        "ranks": list(res.ranks),
        "exactness": exact.to_json(),
    }
    ok = exact.passed
    if args.torsionless is not None:
        M = PresentedModule(res.differentials[0])
        # an exact complex is itself a resolution of its first cokernel
        cert = check_torsionless(M, args.torsionless, resolution=res if exact.passed else None)
        report["torsionless"] = cert.to_json()
        ok = ok and cert.passed
    report["verdict"] = "pass" if ok else "fail"
    text = _dumps(report)
    sys.stdout.write(text)
    if args.report:
        _write(args.report, text)
    return EXIT_OK if ok else EXIT_CERT


def _cmd_brunsify(args) -> int:
    doc = _load(args.infile)
    if args.complex not in doc.complexes:
        raise UsageError(f"no complex named {args.complex!r}")
    seed = _seed(args)
    cfg = SearchConfig(seed=seed, max_attempts=args.max_attempts)
    result = brunsify(doc.complex(args.complex), args.m, cfg)
    out = SessionDocument(doc.ring)
    out.add_complex("rewritten", result.complex, "b")
    report = {
        "command": "brunsify",
        "seed": seed,
        "m": args.m,
        "ranks": list(result.complex.ranks),
        "image_rank": result.image_rank,
        "padded": result.padded,
        "attempts_used": result.attempts_used,
        "exactness": result.exactness.to_json(),
        "torsionless": [c.to_json() for c in result.torsionless],
    }
    if result.ideal is not None:
        out.ideals["a"] = result.ideal
        report["ideal_generators"] = len(result.ideal.generators)
    _write(args.out, emit_document(out))
    path = _report_path(args)
    if path:
        _write(path, _dumps(report))
    return EXIT_OK


def _cmd_pdmod(args) -> int:
    seed = _seed(args)
    cfg = SearchConfig(seed=seed, max_attempts=args.max_attempts)
    built = build_pd_module(args.s, args.m, cfg, characteristic=args.p)
    out = SessionDocument(built.ring)
    out.add_complex("resolution", built.resolution, "f")
    report = {
        "command": "pdmod",
        "seed": seed,
        "s": args.s,
        "m": args.m,
        "rank": built.module.rank,
        "minimal_generators": minimal_generator_count(built.module),
        "projective_dimension": prune(built.resolution).length,
        "ranks": list(built.resolution.ranks),
        "torsionless": built.certificate.to_json() if built.certificate else None,
    }
    _write(args.out, emit_document(out))
    path = _report_path(args)
    if path:
        _write(path, _dumps(report))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="freeres", description="Rewrite and certify finite free resolutions.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    k = sub.add_parser("koszul", help="emit a Koszul complex or a section of its dual")
    k.add_argument("--p", type=int, default=DEFAULT_PRIME)
    k.add_argument("--vars", required=True, help="comma-separated variable names")
    k.add_argument("--order", default="grevlex")
    k.add_argument("--section", metavar="A..B")
    k.add_argument("--out")
    k.set_defaults(func=_cmd_koszul)

    r = sub.add_parser("resolve", help="free resolution of the cokernel of a matrix")
    r.add_argument("--in", dest="infile", required=True)
    r.add_argument("--matrix", required=True)
    r.add_argument("--max-length", type=int)
    r.add_argument("--out")
    r.set_defaults(func=_cmd_resolve)

    c = sub.add_parser("check", help="certify exactness (and optionally m-torsionlessness)")
    c.add_argument("--in", dest="infile", required=True)
    c.add_argument("--complex", required=True)
    c.add_argument("--torsionless", type=int, metavar="M")
    c.add_argument("--report")
    c.set_defaults(func=_cmd_check)

    b = sub.add_parser("brunsify", help="rewrite a resolution to end in R^3 -> R")
    b.add_argument("--in", dest="infile", required=True)
    b.add_argument("--complex", required=True)
    b.add_argument("--m", type=int, required=True)
    b.add_argument("--seed", type=int)
    b.add_argument("--max-attempts", type=int, default=8)
    b.add_argument("--out")
    b.add_argument("--report")
    b.set_defaults(func=_cmd_brunsify)

    p = sub.add_parser("pdmod", help="module of rank m and projective dimension s")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--p", type=int, default=DEFAULT_PRIME)
    p.add_argument("--seed", type=int)
    p.add_argument("--max-attempts", type=int, default=8)
    p.add_argument("--out")
    p.add_argument("--report")
    p.set_defaults(func=_cmd_pdmod)
    return parser


def run_command(argv: Sequence[str] | None = None) -> int:
    """Run one subcommand and return its exit status."""
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SearchExhaustedError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_EXHAUSTED
    except (CertificationError, NotTorsionlessError) as exc:
        print(f"certification failed: {exc}", file=sys.stderr)
        return EXIT_CERT
    except (DocumentError, DimensionError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run_command())
