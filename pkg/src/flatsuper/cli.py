"""Command-line front end: ``flatsuper <command> ...``.

Exit codes: 0 success, 1 a verification failed, 2 bad usage or unreadable input.
Reports go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import catalog as cat
from .algebra import LieSuperalgebra, series, validate
from .extensions import VARIANTS, ExtensionSpec, check_admissible, decompose, double_extend, reduce
from .fileformat import (
    ParseError,
    format_algebra,
    format_matrix,
    format_product,
    load_algebra,
    parse_matrix,
    parse_vector,
    save_algebra,
)
from .linalg import LinearOperator, StructuralError, parity_name, zeros
from .products import (
    curvature,
    flat_perp_properties,
    is_flat,
    levi_civita,
    natural_symplectic,
    opposite,
    subspace_report,
)

MATRIX_HELP = ("matrix file: one row per line, whitespace-separated rationals; "
               "row i holds the coordinates of the image of basis vector i")
VECTOR_HELP = "vector: a combination such as '2*e1 - 1/3*e2', or comma-separated coordinates"


class UsageError(Exception):
    pass


def _out(line: str = "") -> None:
    sys.stdout.write(line + "\n")


def _describe(g: LieSuperalgebra) -> str:
    sp = g.space
    form = f"{g.form.kind} form" if g.form is not None else "no form"
    return f"algebra {g.name or '?'}: dim {sp.dim} ({sp.dim_even}|{sp.dim_odd}), {form}"


def _vectors(g: LieSuperalgebra, vs) -> str:
    return "span{" + ", ".join(g.space.format_vector(v) for v in vs) + "}" if vs else "0"


def _read_matrix(path: str, rows: int, cols: int) -> np.ndarray:
    m = parse_matrix(Path(path).read_text(), path)
    if m.shape != (rows, cols):
        raise UsageError(f"{path}: expected a {rows}x{cols} matrix, got {m.shape[0]}x"
                         f"{m.shape[1] if m.ndim == 2 else 0}")
    return m


def _require_form(g: LieSuperalgebra) -> None:
    if g.form is None:
        raise UsageError(f"{g.name or 'algebra'} has no form")


def _require_valid(g: LieSuperalgebra) -> None:
    bad = validate(g)
    if bad:
        raise StructuralError(f"{g.name or 'algebra'} is not quasi-Frobenius: {bad[0]}")


# -- commands ----------------------------------------------------------------

def cmd_validate(args) -> int:
    g = load_algebra(args.file)
    _out(_describe(g))
    bad = validate(g)
    for v in bad:
        _out(f"FAIL {v}")
    _out("OK" if not bad else f"{len(bad)} violation(s)")
    return 0 if not bad else 1


def cmd_product(args) -> int:
    g = load_algebra(args.file)
    _require_form(g)
    _require_valid(g)
    if args.kind == "natural":
        table = natural_symplectic(g)
    elif args.kind == "levi-civita":
        table = levi_civita(g)
    else:
        table = opposite(levi_civita(g))
    _out(f"# {args.kind} product on {g.name or '?'}")
    sys.stdout.write(format_product(table))
    return 0


def cmd_curvature(args) -> int:
    g = load_algebra(args.file)
    _require_form(g)
    _require_valid(g)
    curv = curvature(g, natural_symplectic(g))
    sp = g.space
    for i in range(g.dim):
        for j in range(g.dim):
            op = curv[i, j]
            head = f"R({sp.names[i]},{sp.names[j]})"
            if op.is_zero():
                _out(f"{head} = 0")
                continue
            images = [f"{sp.names[k]} -> {sp.format_vector(op.matrix[:, k])}"
                      for k in range(g.dim) if np.any(op.matrix[:, k] != 0)]
            _out(f"{head}: " + ", ".join(images))
    flat = curv.is_zero()
    _out("FLAT" if flat else "NOT FLAT")
    return 0 if flat else 1


def _yes(b: Optional[bool]) -> str:
    return "n/a" if b is None else "yes" if b else "no"


def cmd_analyze(args) -> int:
    g = load_algebra(args.file)
    _require_form(g)
    _require_valid(g)
    rep = series(g)
    flat = is_flat(g)
    _out(_describe(g))
    _out(f"center: {_vectors(g, rep.center_basis)}")
    _out(f"derived subalgebra: {_vectors(g, rep.derived_basis)}")
    _out("lower central series dims: " + " ".join(map(str, rep.lcs_dims)))
    _out("derived series dims: " + " ".join(map(str, rep.ds_dims)))
    _out(f"nilpotent: {_yes(rep.is_nilpotent)}")
    _out(f"solvable: {_yes(rep.is_solvable)}")
    _out(f"center degenerate: {_yes(rep.center_degenerate)}")
    _out(f"derived subalgebra degenerate: {_yes(rep.derived_degenerate)}")
    _out(f"flat: {_yes(flat)}")
    failed = 0
    for name, ok in subspace_report(g).items():
        _out(f"{'pass' if ok else 'FAIL'} {name}")
        failed += not ok
    perp = flat_perp_properties(g) if flat else {}
    for name in ("proportional", "ad_square_zero", "ideal"):
        label = {"proportional": "flat: L_u = -2 R_u = 2/3 ad_u on [g,g]^perp",
                 "ad_square_zero": "flat: ad_u ad_v = 0 on [g,g]^perp",
                 "ideal": "flat: [g,[g,g]^perp] in N_l"}[name]
        if not flat:
            _out(f"n/a  {label}")
            continue
        _out(f"{'pass' if perp[name] else 'FAIL'} {label}")
        failed += not perp[name]
    return 0 if not failed else 1


def _default_output(path: str, suffix: str) -> Path:
    p = Path(path)
    return p.with_name(f"{p.stem}.{suffix}.alg")


def cmd_extend(args) -> int:
    g = load_algebra(args.file)
    _require_form(g)
    n = g.dim
    pd = VARIANTS[args.variant][0]
    xi_m = _read_matrix(args.xi, n, n).T if args.xi else zeros(n, n)
    b0 = parse_vector(args.b0, g.space) if args.b0 else zeros(n)
    spec = ExtensionSpec(g, LinearOperator(g.space, pd, xi_m), b0, args.variant)
    bad = check_admissible(spec)
    _out(f"{args.variant} pair on {g.name or '?'}: " + ("admissible" if not bad else "NOT admissible"))
    for v in bad:
        _out(f"FAIL {v}")
    if bad:
        return 1
    if args.check_only:
        return 0
    ext, _ = double_extend(spec)
    out = Path(args.output) if args.output else _default_output(args.file, args.variant)
    save_algebra(ext, out)
    _out(f"wrote {out}")
    _out("FLAT" if is_flat(ext) else "NOT FLAT")
    return 0


def cmd_reduce(args) -> int:
    g = load_algebra(args.file)
    _require_form(g)
    _require_valid(g)
    a = parse_vector(args.element, g.space)
    b = reduce(g, a)
    out = Path(args.output) if args.output else _default_output(args.file, "reduced")
    save_algebra(b, out)
    sys.stdout.write(format_algebra(b))
    _out(f"wrote {out}")
    return 0


def cmd_decompose(args) -> int:
    g = load_algebra(args.file)
    _require_form(g)
    dec = decompose(g)
    spec = dec.spec
    seed = spec.seed
    _out(f"variant: {spec.variant}")
    _out(f"d = {g.space.format_vector(dec.adapted_basis[0])}")
    _out(f"e = {g.space.format_vector(dec.adapted_basis[-1])}")
    for name, v in zip(seed.space.names, dec.adapted_basis[1:-1]):
        _out(f"{name} = {g.space.format_vector(v)}")
    _out("seed:")
    sys.stdout.write(format_algebra(seed))
    _out("xi (rows are images):")
    sys.stdout.write(format_matrix(spec.xi.matrix.T) if seed.dim else "")
    _out(f"b0 = {seed.space.format_vector(spec.b0) if seed.dim else '0'}")
    out = Path(args.output) if args.output else _default_output(args.file, "seed")
    save_algebra(seed, out)
    _out(f"wrote {out}")
    return 0


def cmd_catalog(args) -> int:
    entries = cat.load_catalog()
    for e in entries:
        sp = e.algebra.space
        flags = " ".join(f"{k}={_yes(v)}" for k, v in e.computed.items() if k != "form_parity")
        _out(f"{e.name}: dim {sp.dim} ({sp.dim_even}|{sp.dim_odd}), "
             f"{parity_name(e.computed['form_parity'])} form, {flags}; {e.provenance}")
    if not args.verify:
        return 0
    ok = True
    for dim in (4, 5):
        report = cat.verify_classification(dim)
        _out(f"classification, dimension {dim}:")
        for line in report.format_lines():
            _out("  " + line)
        matched = sum(r.matched == r.claimed for r in report.rows)
        _out(f"dimension {dim}: {matched}/{len(report.rows)} instances matched")
        ok = ok and report.all_matched
    return 0 if ok else 1


def cmd_morphism(args) -> int:
    src, dst = load_algebra(args.src), load_algebra(args.dst)
    M = _read_matrix(args.map, src.dim, dst.dim).T
    kind = "symplectomorphism" if args.symplectic else "iso_only"
    if args.symplectic:
        _require_form(src)
        _require_form(dst)
    bad = cat.verify_morphism(cat.MorphismClaim(src, dst, M, kind))
    for v in bad:
        _out(f"FAIL {v}")
    label = "SYMPLECTOMORPHISM" if args.symplectic else "ISOMORPHISM"
    _out(label if not bad else f"NOT A {label}")
    return 0 if not bad else 1


# -- entry point -------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="flatsuper",
        description="Exact computations with flat quasi-Frobenius Lie superalgebras.",
        epilog=f"{MATRIX_HELP}. Exit codes: 0 success, 1 verification failure, 2 usage or parse error.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="check the axioms and the form")
    s.add_argument("file")
    s.set_defaults(run=cmd_validate)

    s = sub.add_parser("product", help="print a product table")
    s.add_argument("file")
    s.add_argument("--kind", choices=("natural", "levi-civita", "opposite"), default="natural")
    s.set_defaults(run=cmd_product)

    s = sub.add_parser("curvature", help="curvature of the natural product")
    s.add_argument("file")
    s.set_defaults(run=cmd_curvature)

    s = sub.add_parser("analyze", help="structure report and subspace identities")
    s.add_argument("file")
    s.set_defaults(run=cmd_analyze)

    s = sub.add_parser("extend", help="flat double extension by (xi, b0)",
                       epilog=f"--xi takes a {MATRIX_HELP}. --b0 takes a {VECTOR_HELP}.")
    s.add_argument("file")
    s.add_argument("--variant", required=True, choices=sorted(VARIANTS))
    s.add_argument("--xi", help="matrix file (default: zero)")
    s.add_argument("--b0", help="even vector (default: zero)")
    s.add_argument("--check-only", action="store_true")
    s.add_argument("--output", help="where to write the extension")
    s.set_defaults(run=cmd_extend)

    s = sub.add_parser("reduce", help="quotient by an isotropic central element",
                       epilog=f"--element takes a {VECTOR_HELP}.")
    s.add_argument("file")
    s.add_argument("--element", required=True)
    s.add_argument("--output")
    s.set_defaults(run=cmd_reduce)

    s = sub.add_parser("decompose", help="recover the double extension data")
    s.add_argument("file")
    s.add_argument("--output", help="where to write the seed")
    s.set_defaults(run=cmd_decompose)

    s = sub.add_parser("catalog", help="list built-in algebras")
    s.add_argument("--verify", action="store_true", help="run the dimension 4 and 5 classification")
    s.set_defaults(run=cmd_catalog)

    s = sub.add_parser("morphism", help="check an explicit map src -> dst",
                       epilog=f"--map takes a {MATRIX_HELP} (rows are images in the dst basis).")
    s.add_argument("src")
    s.add_argument("dst")
    s.add_argument("--map", required=True)
    s.add_argument("--symplectic", action="store_true")
    s.set_defaults(run=cmd_morphism)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.run(args)
    except (ParseError, UsageError, StructuralError, OSError, ValueError, KeyError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except AssertionError as exc:
        sys.stderr.write(f"verification failed: {exc}\n")
        return 1


cli_main = main


if __name__ == "__main__":
    sys.exit(main())
