"""CSV exchange formats.

Half-line samples:  header ``s,re,im``, one row per node, plus a leading
comment carrying the grid recipe so the file round-trips:

    # scheme=gauss_laguerre n=512 scale=10 hbar=1
    s,re,im
    ...

Line samples: comment ``# y=<value> hbar=<value>`` then ``x,re,im``.
Eigenvalue lists: ``k,lambda``.  ASCII, decimal point, no locale.
"""
from __future__ import annotations

import io
from pathlib import Path

import numpy as np

from .grids import GAUSS_LAGUERRE, TRUNCATED_UNIFORM, QuadratureGrid, \
    gauss_laguerre_grid, uniform_grid
from .hft import HardyLineSample, InputError, SampledHalfLineFunction

__all__ = [
    "write_halfline_csv", "read_halfline_csv",
    "write_hardy_csv", "read_hardy_csv", "write_eigenvalues_csv",
]


def _fmt(v: float) -> str:
    return repr(float(v))


def write_halfline_csv(f: SampledHalfLineFunction, path) -> None:
    g = f.grid
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(f"# scheme={g.scheme_tag} n={g.size} "
                 f"scale={_fmt(g.scale)} hbar={_fmt(f.hbar)}\n")
        fh.write("s,re,im\n")
        for s, v in zip(g.nodes, f.values):
            fh.write(f"{_fmt(s)},{_fmt(v.real)},{_fmt(v.imag)}\n")


def read_halfline_csv(path) -> SampledHalfLineFunction:
    meta, rows = _read_rows(path, expect_header="s,re,im")
    s = rows[:, 0]
    values = rows[:, 1] + 1j * rows[:, 2]
    hbar = float(meta.get("hbar", 1.0))
    scheme = meta.get("scheme")
    if scheme == GAUSS_LAGUERRE:
        grid = gauss_laguerre_grid(int(meta["n"]), float(meta["scale"]))
    elif scheme == TRUNCATED_UNIFORM:
        n = int(meta["n"])
        h = float(meta["scale"])
        grid = uniform_grid(n, n * h)
    else:
        raise InputError(f"cannot rebuild grid: unknown scheme {scheme!r}")
    if not np.allclose(grid.nodes, s, rtol=1e-12, atol=1e-12):
        raise InputError("node column does not match the declared grid recipe")
    return SampledHalfLineFunction(grid, values, hbar)


def write_hardy_csv(phi: HardyLineSample, path) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(f"# y={_fmt(phi.y)} hbar={_fmt(phi.hbar)}\n")
        fh.write("x,re,im\n")
        for x, v in zip(phi.x_nodes, phi.values):
            fh.write(f"{_fmt(x)},{_fmt(v.real)},{_fmt(v.imag)}\n")


def read_hardy_csv(path) -> HardyLineSample:
    meta, rows = _read_rows(path, expect_header="x,re,im")
    if "y" not in meta:
        raise InputError("line CSV must carry the '# y=... hbar=...' comment")
    return HardyLineSample(y=float(meta["y"]),
                           x_nodes=rows[:, 0],
                           values=rows[:, 1] + 1j * rows[:, 2],
                           hbar=float(meta.get("hbar", 1.0)))


def write_eigenvalues_csv(eigenvalues, path) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write("k,lambda\n")
        for k, lam in enumerate(np.asarray(eigenvalues), start=1):
            fh.write(f"{k},{_fmt(lam)}\n")


def _read_rows(path, expect_header: str):
    meta = {}
    data_lines = []
    text = Path(path).read_text(encoding="ascii")
    header_seen = False
    for line in io.StringIO(text):
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            for tok in line[1:].split():
                if "=" in tok:
                    k, v = tok.split("=", 1)
                    meta[k.strip()] = v.strip()
            continue
        if not header_seen:
            if line != expect_header:
                raise InputError(
                    f"expected header {expect_header!r}, got {line!r}")
            header_seen = True
            continue
        data_lines.append(line)
    if not data_lines:
        raise InputError("CSV carries no data rows")
    rows = np.array([[float(tok) for tok in ln.split(",")]
                     for ln in data_lines])
    if rows.shape[1] != 3:
        raise InputError("expected exactly 3 columns")
    return meta, rows
