"""
Field snapshots

Text format (normative):

    XPROP1 d N_0 ... N_{d-1} L_0 ... L_{d-1} s_current
    re im            one line per grid point, axis 0 slowest

Floats are written with repr(), which is locale independent and round-trips
bit-exactly. A compact .npz variant is provided for large fields.
"""

import logging
from pathlib import Path

import numpy as np

from xprop.core.errors import SnapshotFormatError, XPropError
from xprop.core.spacetime import SpacetimeGrid, WaveField

logger = logging.getLogger(__name__)

MAGIC = "XPROP1"


def _header(field):
    grid = field.grid
    parts = [MAGIC, str(grid.dimension)]
    parts += [str(n) for n in grid.points]
    parts += [repr(float(length)) for length in grid.extents]
    parts.append(repr(float(field.s_current)))
    return " ".join(parts)


def _grid(path, points, extents):
    try:
        return SpacetimeGrid(points, extents)
    except XPropError as e:
        raise SnapshotFormatError(f"{path}: invalid grid in header: {e}") from e


def write_snapshot(path, field):
    """Write `field` in the text snapshot format"""
    path = Path(path)
    flat = field.values.reshape(-1)
    with open(path, "w", encoding="ascii", newline="\n") as handle:
        handle.write(_header(field) + "\n")
        for value in flat:
            handle.write(f"{float(value.real)!r} {float(value.imag)!r}\n")
    logger.debug(f"Wrote snapshot {path} ({flat.size} values, s={field.s_current})")
    return path


def read_snapshot(path):
    """Read a text snapshot back into a WaveField"""
    path = Path(path)
    with open(path, "r", encoding="ascii") as handle:
        header = handle.readline().split()
        if not header or header[0] != MAGIC:
            raise SnapshotFormatError(f"{path}: missing {MAGIC} header")
        try:
            d = int(header[1])
            points = tuple(int(n) for n in header[2 : 2 + d])
            extents = tuple(float(x) for x in header[2 + d : 2 + 2 * d])
            s_current = float(header[2 + 2 * d])
        except (IndexError, ValueError) as e:
            raise SnapshotFormatError(f"{path}: malformed header: {e}") from e
        if len(header) != 3 + 2 * d:
            raise SnapshotFormatError(f"{path}: header has {len(header)} fields, expected {3 + 2 * d}")
        grid = _grid(path, points, extents)
        values = np.empty(grid.size, dtype=complex)
        count = 0
        for line in handle:
            if not line.strip():
                continue
            if count >= grid.size:
                raise SnapshotFormatError(f"{path}: more than {grid.size} values")
            parts = line.split()
            if len(parts) != 2:
                raise SnapshotFormatError(f"{path}: line {count + 2} is not a 're im' pair")
            try:
                values[count] = complex(float(parts[0]), float(parts[1]))
            except ValueError as e:
                raise SnapshotFormatError(f"{path}: line {count + 2}: {e}") from e
            count += 1
    if count != grid.size:
        raise SnapshotFormatError(f"{path}: expected {grid.size} values, found {count}")
    return WaveField(grid, values.reshape(grid.shape), s_current)


def write_snapshot_npz(path, field):
    path = Path(path)
    np.savez_compressed(
        path,
        magic=np.array(MAGIC),
        points=np.array(field.grid.points),
        extents=np.array(field.grid.extents),
        s_current=np.array(field.s_current),
        values=field.values,
    )
    return path


def read_snapshot_npz(path):
    with np.load(Path(path)) as data:
        if str(data["magic"]) != MAGIC:
            raise SnapshotFormatError(f"{path}: not an {MAGIC} archive")
        grid = _grid(path, tuple(data["points"]), tuple(data["extents"]))
        return WaveField(grid, data["values"], float(data["s_current"]))
