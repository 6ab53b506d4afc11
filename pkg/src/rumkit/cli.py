"""Command-line front end.

Examples::

    rumkit info --generator strip
    rumkit polynomial --generator kagome
    rumkit spectrum --generator kagome --resolution 64 --output pgm --out kagome.pgm
    rumkit rooted --generator strip --remove-vertices 1 --remove-edges 4

Exit status: 0 on success, 1 on invalid input or a failed check, 2 on I/O
errors.  Vertex and edge indices on the command line are 1-based.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .checks import run_checks
from .framework import CrystalFramework, maxwell_equilibrium, supercell
from .generators import GENERATORS, generator
from .io import load_framework, serialize_framework
from .laurent import variable_names
from .polynomial import crystal_polynomial, determinant
from .rigidity import flex_to_csv, local_flex_search
from .semi_infinite import root_analysis, rooted_rigidity_verdict, rooted_symbol
from .spectrum import grid_phases, rum_dimension_estimate, rum_points, sigma_min_field
from .symbol import build_symbol

class CliError(Exception):
    def __init__(self, message: str, code: int = 1):
        super().__init__(message)
        self.code = code


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_mutually_exclusive_group(required=True)
    src.add_argument("--generator", "-g", choices=sorted(GENERATORS), help="built-in framework")
    src.add_argument("--input", "-i", help="framework JSON file")
    common.add_argument("--backend", choices=("exact", "float"), default="exact")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", "-o", help="write the result here instead of stdout")

    parser = argparse.ArgumentParser(prog="rumkit", description="Rigidity analysis of crystal frameworks.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("info", parents=[common], help="counts and Maxwell status")
    sub.add_parser("symbol", parents=[common], help="print the symbol matrix")
    sub.add_parser("polynomial", parents=[common], help="crystal polynomial")

    p = sub.add_parser("spectrum", parents=[common], help="sample the RUM spectrum")
    p.add_argument("--resolution", "-N", type=int, default=32)
    p.add_argument("--threshold", type=float, default=1e-8)
    p.add_argument("--mode", choices=("rows", "kernel"), default="kernel")
    p.add_argument("--output", choices=("csv", "pgm"), default="csv", help="output format")
    p.add_argument("--points-only", action="store_true", help="csv: only rows inside the spectrum")

    p = sub.add_parser("dimension", parents=[common], help="estimate the RUM dimension")
    p.add_argument("--resolutions", type=_int_list, default=[16, 32, 64])
    p.add_argument("--threshold", type=float, default=1e-8)
    p.add_argument("--mode", choices=("rows", "kernel"), default="kernel")

    p = sub.add_parser("localflex", parents=[common], help="search for a finitely supported flex")
    p.add_argument("--box", type=int, default=4, help="cells per side of the search box")

    p = sub.add_parser("supercell", parents=[common], help="write the supercell framework file")
    p.add_argument("--m", type=_int_list, required=True, help="multipliers, e.g. 2,2")

    p = sub.add_parser("rooted", parents=[common], help="rooted symbol root analysis")
    p.add_argument("--remove-vertices", type=_int_list, default=[])
    p.add_argument("--remove-edges", type=_int_list, default=[])
    p.add_argument("--tol", type=float, default=1e-9)

    sub.add_parser("check", parents=[common], help="run the consistency checks")
    return parser


def _load(args) -> CrystalFramework:
    if args.generator:
        return generator(args.generator)
    try:
        return load_framework(args.input)
    except OSError as exc:
        raise CliError(f"cannot read {args.input}: {exc}", 2) from None


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def cmd_info(fw, args) -> str:
    eq = "true" if maxwell_equilibrium(fw) else "false"
    return f"|Fv|={fw.n_vertices} |Fe|={fw.n_edges} d={fw.dim} maxwell={eq}\n"


def cmd_symbol(fw, args) -> str:
    return str(build_symbol(fw, args.backend)) + "\n"


def _coeff_json(c) -> str:
    return c.literal() if hasattr(c, "literal") else _fmt(float(c))


def cmd_polynomial(fw, args) -> str:
    phi = build_symbol(fw, args.backend)
    if not phi.is_square:
        raise CliError(f"symbol matrix is {phi.shape[0]}x{phi.shape[1]}, not square (no crystal polynomial)")
    det = determinant(phi)
    if args.backend == "float" and det:
        det = det.chop(1e-9 * max(abs(c) for c in det.terms.values()))
    names = variable_names(phi.nvars)
    head = f"p({','.join(names)})"
    if det.is_zero():
        return f"{head} = 0 (identically zero: the RUM spectrum is the whole torus)\n"
    cp = crystal_polynomial(det)
    terms = [{"exponents": list(e), "coeff": _coeff_json(c)} for e, c in cp.poly.sorted_terms()]
    return f"{head} = {cp.poly.to_str(names)}\n{json.dumps(terms)}\n"


def cmd_spectrum(fw, args) -> str:
    grid = sigma_min_field(fw, args.resolution, args.mode)
    r = grid.rank
    if args.output == "pgm":
        if r != 2:
            raise CliError("PGM output needs exactly two period directions")
        n = grid.n
        rows = []
        for j2 in range(n):
            vals = []
            for j1 in range(n):
                s = float(grid.values[j1, j2])
                v = round(255 * min(1.0, -math.log10(s + 1e-16) / 16))
                vals.append(str(min(255, max(0, v))))
            rows.append(" ".join(vals))
        return f"P2\n{n} {n}\n255\n" + "\n".join(rows) + "\n"
    keep = None
    if args.points_only:
        keep = set(rum_points(grid, args.threshold).points)
    idx, _ = grid_phases(grid.n, r)
    header = ",".join([f"j{i + 1}" for i in range(r)] + [f"k{i + 1}" for i in range(r)] + ["sigma_min"])
    lines = [header]
    for jj in idx:
        if keep is not None and jj not in keep:
            continue
        ks = [_fmt(j / grid.n) for j in jj]
        lines.append(",".join([*map(str, jj), *ks, _fmt(float(grid.values[jj]))]))
    return "\n".join(lines) + "\n"


def cmd_dimension(fw, args) -> str:
    est = rum_dimension_estimate(fw, args.resolutions, args.threshold, args.mode)
    lines = ["N,count"]
    lines += [f"{n},{c}" for n, c in zip(est.resolutions, est.counts)]
    lines.append(f"slope {est.slope:.6f}")
    lines.append(f"RUM dimension {est.dimension}")
    return "\n".join(lines) + "\n"


def cmd_localflex(fw, args) -> str:
    field = local_flex_search(fw, args.box)
    if field is None:
        return f"none up to box [0,{args.box})^{fw.rank}\n"
    return flex_to_csv(field)


def cmd_supercell(fw, args) -> str:
    return serialize_framework(supercell(fw, args.m))


def cmd_rooted(fw, args) -> str:
    rs = rooted_symbol(fw, [v - 1 for v in args.remove_vertices], [e - 1 for e in args.remove_edges])
    lines = ["rooted symbol:", str(rs.matrix)]
    if not rs.matrix.is_square:
        raise CliError(f"rooted symbol is {rs.shape[0]}x{rs.shape[1]}, not square")
    report = root_analysis(rs, args.tol)
    lines.append(f"determinant {report.determinant}")
    if report.identically_zero:
        lines.append(rooted_rigidity_verdict(report).summary())
        return "\n".join(lines) + "\n"
    lines.append(f"cleared polynomial {report.cleared} (shift z^{report.shift})")
    lines.append(f"normalized {report.normalized}")
    if report.zero_roots:
        lines.append(f"zero roots {report.zero_roots} (excluded)")
    for r in report.roots:
        vs = _fmt15(r.value)
        extra = "" if r.decay_ratio is None else f"  decay ratio {_fmt15(r.decay_ratio)}"
        lines.append(f"root {vs}  multiplicity {r.multiplicity}  {r.location}{extra}")
    lines.append(rooted_rigidity_verdict(report).summary())
    return "\n".join(lines) + "\n"


def _fmt15(v: complex) -> str:
    v = complex(v)
    if v.imag == 0:
        return f"{v.real:.15g}"
    return f"{v.real:.15g}{v.imag:+.15g}j"


def cmd_check(fw, args) -> tuple[str, bool]:
    results = run_checks(fw, args.seed)
    lines = [f"{'PASS' if r.ok else 'FAIL'} {r.name}: {r.detail}" for r in results]
    return "\n".join(lines) + "\n", all(r.ok for r in results)


COMMANDS = {
    "info": cmd_info,
    "symbol": cmd_symbol,
    "polynomial": cmd_polynomial,
    "spectrum": cmd_spectrum,
    "dimension": cmd_dimension,
    "localflex": cmd_localflex,
    "supercell": cmd_supercell,
    "rooted": cmd_rooted,
    "check": cmd_check,
}


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    np.random.seed(args.seed)
    ok = True
    try:
        fw = _load(args)
        out = COMMANDS[args.command](fw, args)
        if isinstance(out, tuple):
            out, ok = out
        if args.out:
            try:
                Path(args.out).write_text(out, encoding="utf-8")
            except OSError as exc:
                raise CliError(f"cannot write {args.out}: {exc}", 2) from None
        else:
            sys.stdout.write(out)
    except CliError as exc:
        print(f"rumkit: error: {exc}", file=sys.stderr)
        return exc.code
    except (ValueError, IndexError) as exc:
        print(f"rumkit: error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"rumkit: error: {exc}", file=sys.stderr)
        return 2
    return 0 if ok else 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
