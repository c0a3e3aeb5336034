"""Acceptance gate.  Run with ``pytest tests/test_acceptance.py -s`` to see one
PASS/FAIL line per criterion."""

import numpy as np

from conftest import SWEEP, coarse
from lattice_dirac import (
    BlockField,
    LatticeField,
    TorusLattice,
    apply_block_ks,
    apply_scalar_ks,
    codifferential,
    compute_spectrum,
    continuum_consistency,
    exterior_derivative,
    split,
    unsplit,
    verify_equivalence,
    verify_square_is_laplacian,
)
from lattice_dirac.bench import run_bench
from lattice_dirac.exact import exact_equal
from lattice_dirac.spectral import max_sorted_deviation, symmetry_defect
from lattice_dirac.verify import assemble_dense, verify_chiral

N_RANDOM = 100


def report(number, name, ok, detail):
    print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {name} ({detail})")
    assert ok, f"criterion {number} failed: {detail}"


def test_c01_equivalence_exact():
    failed = [case for case in SWEEP if not verify_equivalence(coarse(*case), "exact").exact_equal]
    report(1, "exact entrywise equivalence", not failed, f"{len(SWEEP)} cases, failures={failed}")


def test_c02_equivalence_float():
    worst = max(verify_equivalence(coarse(*case), "float").max_abs_residual for case in SWEEP)
    report(2, "floating equivalence residual <= 1e-13", worst <= 1e-13, f"max residual {worst:.3e}")


def test_c03_negative_control():
    lattice = coarse(2, 3)
    perms = [[0, 2, 1, 3], [1, 0, 2, 3], [3, 2, 1, 0]]
    residuals = [verify_equivalence(lattice, "float", perm).max_abs_residual for perm in perms]
    report(3, "wrong basis map is detected", max(residuals) > 1e-3, f"residuals {residuals}")


def test_c04_cochain_axioms():
    rng = np.random.default_rng(4)
    nonzero, worst = [], 0.0
    for case in SWEEP:
        lattice = coarse(*case)
        m = assemble_dense("exterior_derivative", lattice, "exact").matrix
        if not (m @ m).is_zero():
            nonzero.append(case)
        for _ in range(N_RANDOM):
            f = BlockField.random(lattice, rng)
            g = BlockField.random(lattice, rng)
            f = BlockField(lattice, f.values / f.norm())
            g = BlockField(lattice, g.values / g.norm())
            worst = max(worst, abs(exterior_derivative(f).inner(g) - f.inner(codifferential(g))))
    ok = not nonzero and worst <= 1e-13
    report(4, "d d = 0 exactly and <df,g> = <f,d*g>", ok, f"d^2 nonzero in {nonzero}, adjoint gap {worst:.3e}")


def test_c05_square_identity():
    residuals = {case: verify_square_is_laplacian(coarse(*case), "exact") for case in SWEEP}
    bad = [case for case, r in residuals.items() if r != 0.0]
    report(5, "H_KS^2 = Laplacian (x) I exactly", not bad, f"{len(SWEEP)} cases, failures={bad}")


def test_c06_split_unitary():
    rng = np.random.default_rng(6)
    worst, not_identity, count = 0.0, 0, 0
    for d in (1, 2, 3):
        for N in (4, 6, 8):
            lattice = TorusLattice(d, N, 0.5)
            for _ in range(N_RANDOM):
                u = LatticeField.random(lattice, rng)
                worst = max(worst, abs(split(u).norm() - u.norm()) / u.norm())
                w = LatticeField.random_exact(lattice, rng)
                if not exact_equal(unsplit(split(w)).values, w.values):
                    not_identity += 1
                count += 1
    ok = worst <= 1e-13 and not_identity == 0
    report(6, "split is unitary, unsplit o split = id exactly", ok,
           f"{count} fields, relative norm gap {worst:.3e}, round-trip mismatches {not_identity}")


def test_c07_conjugation_identity():
    rng = np.random.default_rng(7)
    worst = 0.0
    for d, M, h in SWEEP:
        lattice = coarse(d, M, h)
        for _ in range(N_RANDOM):
            v = BlockField.random(lattice, rng)
            lhs = apply_block_ks(v).values
            rhs = split(apply_scalar_ks(unsplit(v))).values
            worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    report(7, "block_ks = split o scalar_ks o unsplit", worst <= 1e-13, f"max deviation {worst:.3e}")


def test_c08_spectrum():
    dev = agree = sym = chiral = 0.0
    for d, M, h in SWEEP:
        lattice = coarse(d, M, h)
        dense = compute_spectrum("block_ks", lattice, "dense")
        mom = compute_spectrum("block_ks", lattice, "momentum")
        dev = max(dev, dense.max_deviation)
        agree = max(agree, max_sorted_deviation(dense.eigenvalues, mom.eigenvalues))
        sym = max(sym, symmetry_defect(dense.eigenvalues))
        chiral = max(chiral, verify_chiral(lattice, "exact"))
    ok = dev <= 1e-10 and agree <= 1e-10 and sym <= 1e-10 and chiral == 0.0
    report(8, "dispersion, dense vs momentum, +/- pairing", ok,
           f"analytic {dev:.3e}, methods {agree:.3e}, symmetry {sym:.3e}, chiral {chiral}")


def test_c09_spectral_equivalence():
    worst = 0.0
    for case in SWEEP:
        lattice = coarse(*case)
        a = compute_spectrum("standard_hodge_dirac", lattice).eigenvalues
        b = compute_spectrum("hodge_dirac", lattice).eigenvalues
        worst = max(worst, max_sorted_deviation(a, b))
    report(9, "spectrum(d + d*) = spectrum(-i(d - d*))", worst <= 1e-10, f"max deviation {worst:.3e}")


def test_c10_continuum_order():
    rows = continuum_consistency(1.0, [0.2, 0.1, 0.05])
    orders = [r["order"] for r in rows[1:]]
    ok = all(abs(p - 2.0) <= 0.3 for p in orders)
    report(10, "second-order continuum convergence", ok, f"orders {[round(p, 4) for p in orders]}")


def test_c11_bench_determinism():
    first = run_bench(3, 64, repeats=10)
    second = run_bench(3, 64, repeats=10)
    ok = (
        first["deterministic"]
        and second["deterministic"]
        and first["checksum"] == second["checksum"]
        and first["oracle"]["match"]
    )
    report(11, "bench d=3 M=64 deterministic and oracle-consistent", ok,
           f"checksum {first['checksum'][:12]}, {first['seconds_mean']:.3f}s/apply")
