"""Command line entry point: ``lattice-dirac {verify,spectrum,apply,bench}``.

Exit codes: 0 pass, 1 verification or tolerance failure, 2 usage or
configuration error.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import fileio
from .bench import run_bench
from .exact import to_complex
from .fileio import FormatError
from .lattice import LatticeError, TorusLattice
from .spectral import METHODS, compute_spectrum, symmetry_defect
from .staggered import BlockField, apply_scalar_ks, split, unsplit
from .verify import (
    DEFAULT_CAP,
    OPERATORS,
    verify_adjointness,
    verify_chiral,
    verify_d_squared,
    verify_equivalence,
    verify_square_is_laplacian,
)

THREADS_ENV = "LATTICE_DIRAC_THREADS"

VERIFY_TOL = 1e-13
SQUARE_TOL = 1e-12
SPECTRUM_TOL = 1e-10


class ConfigError(ValueError):
    pass


def _threads(args) -> int | None:
    if args.threads is not None:
        n = args.threads
    elif os.environ.get(THREADS_ENV):
        try:
            n = int(os.environ[THREADS_ENV])
        except ValueError:
            raise ConfigError(f"{THREADS_ENV} must be an integer") from None
    else:
        return None
    if n < 1:
        raise ConfigError("thread count must be >= 1")
    return n


def _coarse_lattice(args) -> TorusLattice:
    """Coarse torus from ``--M`` or from the fine ``--N``."""
    if args.d is None:
        raise ConfigError("--d is required")
    if args.M is None and args.N is None:
        raise ConfigError("one of --M or --N is required")
    if args.N is not None:
        fine = TorusLattice(args.d, args.N, args.h)
        coarse = fine.coarse()
        if args.M is not None and args.M != coarse.n_sites:
            raise ConfigError(f"--N {args.N} and --M {args.M} disagree (need N = 2M)")
        return coarse
    return TorusLattice(args.d, args.M, 2 * args.h)


def _parse_perm(text: str | None):
    if text is None:
        return None
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise ConfigError(f"--perm must be a comma separated list of integers, got {text!r}") from None


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_verify(args) -> int:
    lattice = _coarse_lattice(args)
    mode = args.mode or "exact"
    tol = VERIFY_TOL if args.tol is None else args.tol
    perm = _parse_perm(args.perm)
    if perm is not None and sorted(perm) != list(range(lattice.n_corners)):
        raise ConfigError(f"--perm must be a permutation of 0..{lattice.n_corners - 1}")
    dim = lattice.n_corners * lattice.size
    if dim > args.cap:
        raise ConfigError(f"dense dimension {dim} exceeds --cap {args.cap}")

    report = verify_equivalence(lattice, mode, perm, args.cap, _threads(args))
    exact = mode == "exact"
    checks = {
        "equivalence": (report.max_abs_residual, 0.0 if exact else tol),
        "square_is_laplacian": (verify_square_is_laplacian(lattice, mode, args.cap), 0.0 if exact else SQUARE_TOL),
        "d_squared": (verify_d_squared(lattice, mode, args.cap), 0.0 if exact else tol),
        "chiral": (verify_chiral(lattice, mode, args.cap), 0.0 if exact else tol),
        "adjointness": (verify_adjointness(lattice, n_pairs=args.pairs, seed=args.seed), tol),
    }
    out = report.to_json()
    out["checks"] = {
        name: {"value": value, "tol": limit, "passed": value <= limit} for name, (value, limit) in checks.items()
    }
    if exact:
        out["checks"]["equivalence"]["passed"] = bool(report.exact_equal)
    out["passed"] = all(c["passed"] for c in out["checks"].values())
    _emit(fileio.dump_json(out), args.out)
    return 0 if out["passed"] else 1


def cmd_spectrum(args) -> int:
    lattice = _coarse_lattice(args)
    if args.mode == "exact":
        raise ConfigError("spectra are computed in float mode")
    op = args.op or "block_ks"
    tol = SPECTRUM_TOL if args.tol is None else args.tol
    result = compute_spectrum(op, lattice, args.method, args.cap)
    meta = result.to_json()
    meta["tol"] = tol
    meta["symmetry_defect"] = symmetry_defect(result.eigenvalues)
    meta["passed"] = meta["max_deviation"] <= tol
    csv_text = fileio.spectrum_to_csv(result.eigenvalues, tol)
    if args.out:
        Path(args.out).write_text(csv_text)
        fileio.sidecar_path(args.out).write_text(fileio.dump_json(meta))
    else:
        sys.stdout.write(csv_text)
        sys.stderr.write(fileio.dump_json(meta))
    return 0 if meta["passed"] else 1


APPLY_OPS = ("scalar_ks", "split", "unsplit") + tuple(OPERATORS)


def _check_matches(args, lattice: TorusLattice, fine: bool) -> None:
    if args.d is not None and args.d != lattice.d:
        raise ConfigError(f"--d {args.d} does not match the input file (d={lattice.d})")
    if fine:
        n_fine, h = lattice.n_sites, lattice.mesh
    else:
        n_fine, h = 2 * lattice.n_sites, lattice.mesh / 2
    if args.N is not None and args.N != n_fine:
        raise ConfigError(f"--N {args.N} does not match the input file (N={n_fine})")
    if args.M is not None and 2 * args.M != n_fine:
        raise ConfigError(f"--M {args.M} does not match the input file (M={n_fine // 2})")
    if args.h_given and args.h != h:
        raise ConfigError(f"--h {args.h} does not match the input file (h={h})")


def cmd_apply(args) -> int:
    op = args.op
    if op not in APPLY_OPS:
        raise ConfigError(f"--op must be one of {', '.join(APPLY_OPS)}")
    if not args.input:
        raise ConfigError("--in is required")
    meta = fileio.read_descriptor(args.input)
    scalar_input = "N" in meta
    if op in ("scalar_ks", "split") and not scalar_input:
        raise ConfigError(f"--op {op} needs a scalar field file (descriptor with N)")
    if op not in ("scalar_ks", "split") and scalar_input:
        raise ConfigError(f"--op {op} needs a block field file (descriptor with M)")

    if scalar_input:
        u = fileio.read_field(args.input)
        _check_matches(args, u.lattice, fine=True)
        result = apply_scalar_ks(u) if op == "scalar_ks" else split(u)
    else:
        v = fileio.read_block(args.input)
        _check_matches(args, v.lattice, fine=False)
        if op == "unsplit":
            result = unsplit(v)
        else:
            vals = OPERATORS[op](v.values, v.d, v.lattice.mesh)
            result = BlockField(v.lattice, to_complex(vals))

    if args.out:
        if isinstance(result, BlockField):
            fileio.write_block(args.out, result)
        else:
            fileio.write_field(args.out, result)
    else:
        text = fileio.block_to_csv(result) if isinstance(result, BlockField) else fileio.field_to_csv(result)
        sys.stdout.write(text)
    return 0


def cmd_bench(args) -> int:
    lattice = _coarse_lattice(args)
    if args.mode == "exact":
        raise ConfigError("bench runs the floating point kernel only")
    if args.repeats < 1:
        raise ConfigError("--repeats must be >= 1")
    report = run_bench(
        lattice.d,
        lattice.n_sites,
        lattice.mesh / 2,
        repeats=args.repeats,
        threads=_threads(args),
        seed=args.seed,
        cap=args.cap,
    )
    report["passed"] = report["deterministic"] and report["oracle"]["match"]
    _emit(fileio.dump_json(report), args.out)
    return 0 if report["passed"] else 1


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--d", type=int, help="space dimension")
    p.add_argument("--N", type=int, help="fine sites per axis (even)")
    p.add_argument("--M", type=int, help="coarse sites per axis (M = N/2 >= 2)")
    p.add_argument("--h", type=float, default=None, help="fine mesh h (default 1)")
    p.add_argument("--out", help="output path (default stdout)")
    p.add_argument("--threads", type=int, default=None, help=f"worker threads (fallback ${THREADS_ENV})")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="dense dimension cap")
    p.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lattice-dirac", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="certify H_KS = U H_HD U* and related identities")
    _common(p)
    p.add_argument("--mode", choices=("exact", "float"), default="exact")
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--perm", help="component permutation overriding the basis map, e.g. 0,2,1,3")
    p.add_argument("--pairs", type=int, default=100, help="random pairs for the adjointness check")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("spectrum", help="eigenvalues and dispersion check")
    _common(p)
    p.add_argument("--mode", choices=("exact", "float"), default="float")
    p.add_argument("--method", choices=METHODS, default="dense")
    p.add_argument("--op", default="block_ks")
    p.add_argument("--tol", type=float, default=None)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("apply", help="apply an operator to a stored field")
    _common(p)
    p.add_argument("--op", required=True, choices=APPLY_OPS)
    p.add_argument("--in", dest="input", required=True)
    p.set_defaults(func=cmd_apply)

    p = sub.add_parser("bench", help="matrix-free throughput")
    _common(p)
    p.add_argument("--mode", choices=("exact", "float"), default="float")
    p.add_argument("--repeats", type=int, default=10)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.h_given = args.h is not None
    if args.h is None:
        args.h = 1.0
    try:
        return args.func(args)
    except (ConfigError, LatticeError, FormatError, KeyError, ValueError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"lattice-dirac: error: {msg}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
