"""Command line interface: ``gkf <subcommand> ...``."""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

from . import __version__
from .characters import (
    character_of,
    decompose_character,
    decomposition_dim,
    exterior_power_character,
    format_decomposition,
    format_label,
    parse_label,
    tensor_decompose_klimyk,
    weyl_dim,
)
from .cochains import ComplexSlice
from .driver import VALIDATED_WEIGHT, build_relative_complex, betti, emit_bases, slice_dims
from .invariants import CacheError, InvariantViolation, isotypic_report
from .littlewood import tensor_decompose_stable
from .partitions import CochainShape

log = logging.getLogger("gkf")


def _dec_json(dec) -> dict[str, int]:
    return {format_label(k): v for k, v in dec.items()}


def _emit(args, text: str, data) -> None:
    if args.format == "json":
        print(json.dumps(data, indent=2))
    else:
        print(text)


def _check_weight(args) -> None:
    if args.weight < 0:
        raise SystemExit("error: weight must be non-negative")
    if args.weight % 2 and args.strict:
        raise SystemExit(f"error: odd weight {args.weight} gives the zero complex (rejected under --strict)")
    if args.weight > VALIDATED_WEIGHT:
        print(f"*** unvalidated: weight {args.weight} is beyond the checked range (<= {VALIDATED_WEIGHT}) ***", file=sys.stderr)


def cmd_cohomology(args) -> int:
    _check_weight(args)
    rc = build_relative_complex(args.n, args.weight, args.min_gen, heavy=args.heavy, cache_dir=args.cache)
    report = betti(rc)
    if args.emit_bases:
        for path in emit_bases(rc, args.emit_bases):
            log.info("wrote %s", path)
    text = report.format_table()
    if rc.skipped:
        text += f"\n(degrees {', '.join(map(str, rc.skipped))} skipped: rerun with --heavy)"
    _emit(args, text, report.to_json())
    return 0


def cmd_slice_dims(args) -> int:
    _check_weight(args)
    rows = slice_dims(args.n, args.weight, args.min_gen)
    text = "\n".join(f"C^{m}|_{args.weight}  {dim:>8}  {desc}" for m, desc, dim in rows) or "all slices are zero"
    data = [{"degree": m, "shape": desc, "dim": dim} for m, desc, dim in rows]
    _emit(args, text, data)
    return 0


def _parse_shape(text: str, min_gen: int) -> CochainShape:
    return CochainShape(min_gen, tuple(int(x) for x in text.split(",")))


def cmd_decompose(args) -> int:
    _check_weight(args)
    shapes = [_parse_shape(t, args.min_gen) for t in args.shape] if args.shape else None
    s = ComplexSlice(args.n, args.weight, args.degree, args.min_gen, shapes)
    report = isotypic_report(s)
    text = f"C^{args.degree}|_{args.weight} ({s}, dim {s.dim}) = {format_decomposition(report.multiplicities)}"
    _emit(args, text, {"slice": str(s), "dim": s.dim, "decomposition": _dec_json(report.multiplicities)})
    return 0


def cmd_tensor(args) -> int:
    lam, mu = parse_label(args.lam, args.n), parse_label(args.mu, args.n)
    results = {}
    if args.method in ("klimyk", "both"):
        results["klimyk"] = tensor_decompose_klimyk(lam, mu, args.n)
    if args.method in ("lr", "both"):
        results["lr"] = tensor_decompose_stable(lam, mu, args.n)
    if args.method == "both" and results["klimyk"] != results["lr"]:
        print("error: Littlewood-Richardson and Klimyk results disagree", file=sys.stderr)
        for k, v in results.items():
            print(f"  {k}: {format_decomposition(v)}", file=sys.stderr)
        return 3
    dec = next(iter(results.values()))
    total = decomposition_dim(dec, args.n)
    text = f"{format_label(lam)} x {format_label(mu)} = {format_decomposition(dec)}\n({len(dec)} terms, dim {total})"
    _emit(args, text, {"lhs": [format_label(lam), format_label(mu)], "decomposition": _dec_json(dec), "dim": total})
    return 0


def cmd_dim(args) -> int:
    lam = parse_label(args.label, args.n)
    d = weyl_dim(lam, args.n)
    _emit(args, f"dim {format_label(lam)} = {d}", {"label": format_label(lam), "dim": d})
    return 0


def cmd_decompose_exterior(args) -> int:
    """Lambda^r S_k by characters (no linear algebra)."""
    char = exterior_power_character(character_of((args.k,), args.n), args.r)
    dec = decompose_character(char, args.n)
    text = f"L^{args.r} S{args.k} (dim {sum(char.values())}) = {format_decomposition(dec)}"
    _emit(args, text, {"r": args.r, "k": args.k, "dim": sum(char.values()), "decomposition": _dec_json(dec)})
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gkf", description="Relative Gel'fand-Kalinin-Fuks cohomology by weight.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, choices=(1, 2), default=2, help="half-dimension of R^(2n)")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    cx = argparse.ArgumentParser(add_help=False)
    cx.add_argument("--weight", type=int, required=True)
    cx.add_argument("--min-gen", type=int, choices=(2, 3), default=3, help="lowest generator degree (3: ham^1)")
    cx.add_argument("--strict", action="store_true", help="reject odd weights instead of reporting zero")

    sub = p.add_subparsers(dest="command", required=True)
    c = sub.add_parser("cohomology", parents=[common, cx], help="dims, ranks and Betti numbers of the relative complex")
    c.add_argument("--heavy", action="store_true", help="compute slices of dimension > 100000 (minutes)")
    c.add_argument("--cache", default=os.environ.get("GKF_CACHE"), help="invariant basis cache directory (env GKF_CACHE)")
    c.add_argument("--emit-bases", metavar="DIR", help="write invariant bases in Z-notation")
    c.set_defaults(func=cmd_cohomology)

    c = sub.add_parser("slice-dims", parents=[common, cx], help="dimensions of the cochain slices C^m|_w")
    c.set_defaults(func=cmd_slice_dims)

    c = sub.add_parser("decompose", parents=[common, cx], help="irreducible decomposition of a slice")
    c.add_argument("--degree", type=int, required=True)
    c.add_argument("--shape", action="append", metavar="K3,K4,...", help="restrict to a summand (repeatable)")
    c.set_defaults(func=cmd_decompose)

    c = sub.add_parser("tensor", parents=[common], help="decompose V_lam (x) V_mu")
    c.add_argument("lam", help="label, e.g. 3,1")
    c.add_argument("mu", help="label, e.g. 4,0")
    c.add_argument("--method", choices=("klimyk", "lr", "both"), default="both")
    c.set_defaults(func=cmd_tensor)

    c = sub.add_parser("dim", parents=[common], help="Weyl dimension of V_lam")
    c.add_argument("label")
    c.set_defaults(func=cmd_dim)

    c = sub.add_parser("decompose-exterior", parents=[common], help="decompose Lambda^r S_k by characters")
    c.add_argument("r", type=int)
    c.add_argument("k", type=int)
    c.set_defaults(func=cmd_decompose_exterior)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (InvariantViolation, CacheError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
