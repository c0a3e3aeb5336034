"""CSV/JSON exchange formats for fields, block fields and spectra.

Every CSV file ``x.csv`` has a JSON sidecar ``x.json`` describing the lattice:

* scalar field: header ``n1,...,nd,re,im``; sidecar ``{schema, d, N, h}``
* block field / cochain: header ``comp,n1,...,nd,re,im``; sidecar ``{schema, d, M, two_h}``
* spectrum: header ``lambda,multiplicity``; sidecar is the spectrum report

Rows are written in canonical order (component-major, axis 1 fastest) with
17 significant digits so a write/read round trip is lossless.
"""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path

import numpy as np

from .exact import to_complex
from .fields import LatticeField
from .lattice import TorusLattice
from .staggered import BlockField

SCHEMA = 1


class FormatError(ValueError):
    """Malformed or inconsistent data file."""


def sidecar_path(path) -> Path:
    return Path(path).with_suffix(".json")


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _site_rows(lattice: TorusLattice):
    # canonical order: axis 1 fastest
    for flat in range(lattice.size):
        yield [(flat // lattice.n_sites**k) % lattice.n_sites for k in range(lattice.d)]


def field_to_csv(u: LatticeField) -> str:
    d = u.lattice.d
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([f"n{j}" for j in range(1, d + 1)] + ["re", "im"])
    vals = u.ravel()
    for coords, z in zip(_site_rows(u.lattice), vals):
        w.writerow(coords + [_fmt(z.real), _fmt(z.imag)])
    return buf.getvalue()


def block_to_csv(v: BlockField) -> str:
    d = v.d
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["comp"] + [f"n{j}" for j in range(1, d + 1)] + ["re", "im"])
    vals = to_complex(v.values).reshape(v.lattice.n_corners, -1)
    for comp in range(v.lattice.n_corners):
        for coords, z in zip(_site_rows(v.lattice), vals[comp]):
            w.writerow([comp] + coords + [_fmt(z.real), _fmt(z.imag)])
    return buf.getvalue()


def write_field(path, u: LatticeField) -> None:
    path = Path(path)
    path.write_text(field_to_csv(u))
    meta = {"schema": SCHEMA, "d": u.lattice.d, "N": u.lattice.n_sites, "h": u.lattice.mesh}
    sidecar_path(path).write_text(json.dumps(meta, indent=2) + "\n")


def write_block(path, v: BlockField) -> None:
    path = Path(path)
    path.write_text(block_to_csv(v))
    meta = {"schema": SCHEMA, "d": v.d, "M": v.lattice.n_sites, "two_h": v.lattice.mesh}
    sidecar_path(path).write_text(json.dumps(meta, indent=2) + "\n")


def read_descriptor(path) -> dict:
    side = sidecar_path(path)
    if not side.exists():
        raise FormatError(f"missing sidecar descriptor {side}")
    try:
        meta = json.loads(side.read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"bad JSON in {side}: {exc}") from exc
    if meta.get("schema", SCHEMA) != SCHEMA:
        raise FormatError(f"unsupported schema {meta.get('schema')!r}")
    return meta


def _read_rows(path, n_index: int, expected_header: list[str], n_rows: int, shape):
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != expected_header:
            raise FormatError(f"expected header {','.join(expected_header)}, got {header}")
        values = np.full(n_rows, np.nan + 0j)
        seen = np.zeros(n_rows, dtype=bool)
        for lineno, row in enumerate(reader, start=2):
            if len(row) != n_index + 2:
                raise FormatError(f"line {lineno}: expected {n_index + 2} columns")
            try:
                idx = [int(x) for x in row[:n_index]]
                z = complex(float(row[-2]), float(row[-1]))
            except ValueError as exc:
                raise FormatError(f"line {lineno}: {exc}") from exc
            if not np.isfinite(z):
                raise FormatError(f"line {lineno}: non-finite value")
            flat = _flat_index(idx, shape, lineno)
            if seen[flat]:
                raise FormatError(f"line {lineno}: duplicate site {idx}")
            seen[flat] = True
            values[flat] = z
    if not seen.all():
        raise FormatError(f"{path}: {int((~seen).sum())} sites missing")
    return values


def _flat_index(idx, shape, lineno) -> int:
    # shape lists (extent of idx[0], extent of idx[1], ...); idx[0] is most significant
    flat = 0
    for i, n in zip(idx, shape):
        if not 0 <= i < n:
            raise FormatError(f"line {lineno}: index {idx} out of range")
        flat = flat * n + i
    return flat


def read_field(path) -> LatticeField:
    meta = read_descriptor(path)
    try:
        lattice = TorusLattice(int(meta["d"]), int(meta["N"]), float(meta["h"]))
    except KeyError as exc:
        raise FormatError(f"scalar field descriptor lacks {exc}") from exc
    d = lattice.d
    header = [f"n{j}" for j in range(1, d + 1)] + ["re", "im"]
    # rows carry (n1..nd); flat canonical index has n_d most significant
    raw = _read_rows_reordered(path, d, header, lattice, comp=False)
    return LatticeField(lattice, raw.reshape(lattice.shape))


def read_block(path) -> BlockField:
    meta = read_descriptor(path)
    try:
        lattice = TorusLattice(int(meta["d"]), int(meta["M"]), float(meta["two_h"]))
    except KeyError as exc:
        raise FormatError(f"block field descriptor lacks {exc}") from exc
    d = lattice.d
    header = ["comp"] + [f"n{j}" for j in range(1, d + 1)] + ["re", "im"]
    raw = _read_rows_reordered(path, d, header, lattice, comp=True)
    return BlockField(lattice, raw.reshape((lattice.n_corners,) + lattice.shape))


def _read_rows_reordered(path, d, header, lattice, comp: bool):
    n = lattice.n_sites
    shape = ([lattice.n_corners] if comp else []) + [n] * d
    n_rows = int(np.prod(shape))
    values = _read_rows(path, len(shape), header, n_rows, shape)
    # file index order is (comp, n1, ..., nd); canonical storage wants (comp, nd, ..., n1)
    arr = values.reshape(shape)
    lead = 1 if comp else 0
    perm = list(range(lead)) + list(range(lead + d - 1, lead - 1, -1))
    return np.ascontiguousarray(arr.transpose(perm))


def group_eigenvalues(eigs, tol: float = 1e-10) -> list[tuple[float, int]]:
    """Collapse a sorted eigenvalue list into ``(value, multiplicity)`` pairs.

    Consecutive values within ``tol`` of the running group's first member are
    merged; the group mean is reported, with values below ``tol`` in
    magnitude written as 0.
    """
    eigs = np.sort(np.asarray(eigs, dtype=float))
    groups: list[list[float]] = []
    for x in eigs:
        if groups and x - groups[-1][0] <= tol:
            groups[-1].append(x)
        else:
            groups.append([x])
    out = []
    for g in groups:
        mean = float(np.mean(g))
        out.append((0.0 if abs(mean) <= tol else mean, len(g)))
    return out


def spectrum_to_csv(eigs, tol: float = 1e-10) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["lambda", "multiplicity"])
    for value, mult in group_eigenvalues(eigs, tol):
        w.writerow([_fmt(value), mult])
    return buf.getvalue()


def read_spectrum_csv(text: str) -> list[tuple[float, int]]:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or rows[0] != ["lambda", "multiplicity"]:
        raise FormatError("expected header lambda,multiplicity")
    return [(float(a), int(b)) for a, b in rows[1:]]


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"
