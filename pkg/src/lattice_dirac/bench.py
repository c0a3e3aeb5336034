"""Throughput of the matrix-free block Hamiltonian."""

from __future__ import annotations

import hashlib
import time

import numpy as np

from .lattice import TorusLattice
from .staggered import BlockField, apply_block_ks
from .verify import DEFAULT_CAP, assemble_dense

BYTES_PER_VALUE = 16  # complex128


def checksum(values: np.ndarray) -> str:
    """SHA-256 of the raw output bytes; equal only for bit-identical results."""
    return hashlib.sha256(np.ascontiguousarray(values).tobytes()).hexdigest()


def weighted_sum(values: np.ndarray) -> complex:
    """Order-sensitive numeric checksum, comparable across evaluation routes."""
    flat = np.asarray(values).reshape(-1)
    weights = 1.0 + (np.arange(flat.size) % 7)
    return complex(np.dot(weights, flat))


def work_model(d: int, M: int) -> dict:
    """Operation count of one application.

    Each of the ``2^d`` output components gets exactly ``d`` one-sided
    difference terms, and each term touches a full coarse component.
    """
    sites = M**d
    terms = 2**d * d
    return {
        "values": 2**d * sites,
        "stencil_terms": terms,
        "value_updates": terms * sites,
        # per term: read neighbour component, read shifted copy, write accumulator
        "bytes_moved": 3 * BYTES_PER_VALUE * terms * sites,
        "work_ratio_on_doubling_M": 2**d,
    }


def oracle_check(d: int, h: float, M: int = 4, seed: int = 0, cap: int = DEFAULT_CAP) -> dict:
    """Compare one matrix-free application with the dense matrix at a small size."""
    lattice = TorusLattice(d, M, 2 * h)
    v = BlockField.random(lattice, np.random.default_rng(seed))
    free = apply_block_ks(v).ravel()
    dense = assemble_dense("block_ks", lattice, "float", cap).to_complex() @ v.ravel()
    a, b = weighted_sum(free), weighted_sum(dense)
    return {
        "M": M,
        "max_abs_diff": float(np.max(np.abs(free - dense))),
        "checksum_matrix_free": [a.real, a.imag],
        "checksum_dense": [b.real, b.imag],
        "match": bool(abs(a - b) <= 1e-12 * max(1.0, abs(b))),
    }


def run_bench(
    d: int,
    M: int,
    h: float = 1.0,
    repeats: int = 10,
    threads: int | None = None,
    seed: int = 0,
    oracle_M: int = 4,
    cap: int = DEFAULT_CAP,
) -> dict:
    lattice = TorusLattice(d, M, 2 * h)
    oracle = oracle_check(d, h, oracle_M, seed, cap)
    v = BlockField.random(lattice, np.random.default_rng(seed))
    times, sums = [], []
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = apply_block_ks(v, threads=threads)
        times.append(time.perf_counter() - t0)
        sums.append(checksum(out.values))
    model = work_model(d, M)
    mean = float(np.mean(times))
    return {
        "schema": 1,
        "d": d,
        "M": M,
        "h": h,
        "repeats": repeats,
        "threads": threads or 1,
        "oracle": oracle,
        "checksum": sums[0],
        "deterministic": len(set(sums)) == 1,
        "seconds_mean": mean,
        "seconds_min": float(np.min(times)),
        "sites_per_second": lattice.size / mean,
        "values_per_second": model["values"] / mean,
        "bytes_per_second_estimate": model["bytes_moved"] / mean,
        "model": model,
    }
