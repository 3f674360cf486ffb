"""Field files, PGM snapshots and CSV tables.

Field file layout: an ASCII header ``EMAXF1 <nx> <ny> <hx> <hy>\\n`` with
shortest round-trip decimals, then nx*ny little-endian float64 values in
row-major order (x fastest). Masked-out nodes are stored as 0.0.
"""
from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

from .errors import FieldFormatError
from .grid import Field, GridDomain

MAGIC = "EMAXF1"


def fmt(x: float) -> str:
    return repr(float(x))


def field_header(domain: GridDomain) -> bytes:
    return f"{MAGIC} {domain.nx} {domain.ny} {fmt(domain.hx)} {fmt(domain.hy)}\n".encode("ascii")


def write_field(path, f: Field) -> None:
    data = f.to_lattice().astype("<f8").tobytes()
    Path(path).write_bytes(field_header(f.domain) + data)


def read_field(path, domain: GridDomain) -> Field:
    raw = Path(path).read_bytes()
    newline = raw.find(b"\n")
    if newline < 0:
        raise FieldFormatError(f"{path}: missing header line")
    try:
        magic, nx, ny, hx, hy = raw[:newline].decode("ascii").split()
        nx, ny, hx, hy = int(nx), int(ny), float(hx), float(hy)
    except ValueError as exc:
        raise FieldFormatError(f"{path}: malformed header") from exc
    if magic != MAGIC:
        raise FieldFormatError(f"{path}: bad magic {magic!r}")
    if (nx, ny, hx, hy) != (domain.nx, domain.ny, domain.hx, domain.hy):
        raise FieldFormatError(
            f"{path}: header ({nx}, {ny}, {hx}, {hy}) does not match domain "
            f"({domain.nx}, {domain.ny}, {domain.hx}, {domain.hy})"
        )
    body = raw[newline + 1 :]
    if len(body) != 8 * nx * ny:
        raise FieldFormatError(f"{path}: expected {8 * nx * ny} data bytes, found {len(body)}")
    lattice = np.frombuffer(body, dtype="<f8").reshape(ny, nx)
    if np.any(lattice[~domain.mask]):
        raise FieldFormatError(f"{path}: nonzero value at a masked-out node")
    try:
        return Field(domain, lattice[domain.mask].astype(np.float64))
    except ValueError as exc:
        raise FieldFormatError(f"{path}: {exc}") from exc


def write_pgm(path, f: Field) -> None:
    """8-bit binary PGM, values mapped linearly onto [0, 255], masked nodes black.

    The first image row is the top of the domain (largest y).
    """
    d = f.domain
    lo, hi = float(f.values.min()), float(f.values.max())
    span = hi - lo
    scaled = np.full(d.n_interior, 255.0) if span == 0 else (f.values - lo) / span * 255.0
    img = np.zeros((d.ny, d.nx), dtype=np.uint8)
    img[d.mask] = np.rint(scaled).astype(np.uint8)
    header = f"P5\n{d.nx} {d.ny}\n255\n".encode("ascii")
    Path(path).write_bytes(header + img[::-1].tobytes())


def write_csv(path, header, rows, summary) -> None:
    """Write ``rows`` under ``header`` and close with a ``summary,...`` row."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([fmt(v) if isinstance(v, float) else v for v in row])
        w.writerow(["summary", *(fmt(v) if isinstance(v, float) else v for v in summary)])
