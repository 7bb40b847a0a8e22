"""Conjugate operator pair on the half line and its line representation.

In the s representation S multiplies by the coordinate and Z
differentiates:

    (S f)(s) = s f(s)            (Z f)(s) = i hbar f'(s)

Their transforms swap the roles on a horizontal line:

    (S phi)(z) = -i hbar phi'(z)     (Z phi)(z) = z phi(z)

S is symmetric on the second-moment domain; Z is symmetric only with
the boundary condition f(0) = 0, and dropping that condition gives the
(larger) adjoint domain.  The numerical surface here exposes the
operators, the commutator residual against i*hbar, the sesquilinear
symmetry defect with its boundary term i*hbar f(0) g*(0), and
quadrature proxies for the domain tests.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .grids import TRUNCATED_UNIFORM, QuadratureGrid
from .hft import (DomainError, HardyLineSample, InputError,
                  SampledHalfLineFunction)

__all__ = [
    "Representation", "DomainReport", "PreconditionError",
    "apply_S", "apply_Z", "commutator_residual", "symmetry_defect",
    "domain_membership", "differentiate", "boundary_value",
]

#: |f(0)| below this counts as satisfying the f(0) = 0 boundary condition
BOUNDARY_TOLERANCE = 1e-6

#: interior rows: this many nodes at each end use one-sided stencils
EDGE_ROWS = 2


class Representation(str, enum.Enum):
    S = "s_representation"
    Z = "z_representation"


class PreconditionError(ValueError):
    """Input outside the operator's joint domain; carries the report."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


def _as_rep(rep) -> Representation:
    if isinstance(rep, Representation):
        return rep
    try:
        return Representation(rep)
    except ValueError:
        pass
    try:
        return Representation[str(rep).upper()]
    except KeyError:
        raise InputError(f"unknown representation {rep!r}") from None


# ------------------------------------------------------------ differentiation

def _fd4_uniform(values: np.ndarray, h: float) -> np.ndarray:
    """4th-order first derivative on a uniform grid, one-sided at the edges."""
    v = np.asarray(values, dtype=complex)
    n = v.size
    if n < 5:
        raise InputError("derivative stencil needs at least 5 nodes")
    d = np.empty(n, dtype=complex)
    d[2:-2] = (v[:-4] - 8.0 * v[1:-3] + 8.0 * v[3:-1] - v[4:]) / (12.0 * h)
    c = np.array([-25.0, 48.0, -36.0, 16.0, -3.0]) / (12.0 * h)
    d[0] = c @ v[:5]
    d[1] = np.array([-3.0, -10.0, 18.0, -6.0, 1.0]) / (12.0 * h) @ v[:5]
    d[-2] = -(np.array([-3.0, -10.0, 18.0, -6.0, 1.0]) / (12.0 * h))[::-1] @ v[-5:]
    d[-1] = -c[::-1] @ v[-5:]
    return d


def _fornberg_row(x: np.ndarray, x0: float) -> np.ndarray:
    """First-derivative weights at x0 for arbitrary nodes (Fornberg)."""
    n = x.size
    c = np.zeros((n, 2))
    c[0, 0] = 1.0
    c1, c4 = 1.0, x[0] - x0
    for i in range(1, n):
        c2, c5, c4 = 1.0, c4, x[i] - x0
        for j in range(i):
            c3 = x[i] - x[j]
            c2 *= c3
            if j == i - 1:
                c[i, 1] = c1 * (c[i - 1, 0] - c5 * c[i - 1, 1]) / c2
                c[i, 0] = -c1 * c5 * c[i - 1, 0] / c2
            c[j, 1] = (c4 * c[j, 1] - c[j, 0]) / c3
            c[j, 0] = c4 * c[j, 0] / c3
        c1 = c2
    return c[:, 1]


def differentiate(values: np.ndarray, nodes: np.ndarray,
                  stencil: int = 7) -> np.ndarray:
    """First derivative of samples on arbitrary increasing nodes.

    Uniform grids get the 4th-order central stencil; otherwise sliding
    Fornberg stencils of the given width.
    """
    nodes = np.asarray(nodes, dtype=float)
    v = np.asarray(values, dtype=complex)
    dx = np.diff(nodes)
    if np.allclose(dx, dx[0], rtol=1e-9, atol=0.0):
        return _fd4_uniform(v, dx[0])
    n = nodes.size
    if n < stencil:
        raise InputError(f"derivative needs at least {stencil} nodes")
    half = stencil // 2
    d = np.empty(n, dtype=complex)
    for i in range(n):
        lo = min(max(i - half, 0), n - stencil)
        w = _fornberg_row(nodes[lo:lo + stencil], nodes[i])
        d[i] = w @ v[lo:lo + stencil]
    return d


def boundary_value(f: SampledHalfLineFunction, points: int = 4) -> complex:
    """f(0) by polynomial extrapolation from the smallest nodes.

    Grids exclude s = 0, so the boundary value is reached by a cubic
    (default) through the first nodes; cubic keeps the extrapolation
    error comfortably under BOUNDARY_TOLERANCE on the oracle suite.
    """
    k = min(points, f.grid.size)
    s = f.grid.nodes[:k]
    v = f.values[:k]
    # Lagrange evaluation at 0
    out = 0.0 + 0.0j
    for i in range(k):
        li = np.prod([s[j] / (s[j] - s[i]) for j in range(k) if j != i])
        out += v[i] * li
    return complex(out)


# ------------------------------------------------------------------ operators

def apply_S(f, rep=Representation.S):
    """Coordinate operator: s f(s) on the half line, -i hbar d/dz on a line."""
    rep = _as_rep(rep)
    if isinstance(f, SampledHalfLineFunction):
        if rep is not Representation.S:
            raise InputError("half-line samples live in the s representation")
        return f.with_values(f.grid.nodes * f.values)
    if isinstance(f, HardyLineSample):
        if rep is not Representation.Z:
            raise InputError("line samples live in the z representation")
        if f.x_nodes.size < 5:
            raise InputError("derivative needs at least 5 nodes")
        dphi = _fd4_uniform(f.values, f.spacing())
        return f.with_values(-1j * f.hbar * dphi)
    raise InputError(f"unsupported operand type {type(f).__name__}")


def apply_Z(f, rep=Representation.S):
    """Conjugate operator: i hbar d/ds on the half line, z phi(z) on a line."""
    rep = _as_rep(rep)
    if isinstance(f, SampledHalfLineFunction):
        if rep is not Representation.S:
            raise InputError("half-line samples live in the s representation")
        if f.grid.size < 5:
            raise InputError("derivative needs at least 5 nodes")
        df = differentiate(f.values, f.grid.nodes)
        return f.with_values(1j * f.hbar * df)
    if isinstance(f, HardyLineSample):
        if rep is not Representation.Z:
            raise InputError("line samples live in the z representation")
        return f.with_values(f.z_nodes * f.values)
    raise InputError(f"unsupported operand type {type(f).__name__}")


def commutator_residual(f: SampledHalfLineFunction, rep=Representation.S, *,
                        y: float = 1.0, check_domain: bool = True) -> float:
    """|| (ZS - SZ) f - i hbar f || / ||f|| on interior nodes.

    The identity [Z, S] = i hbar holds on the joint domain; only the
    discretisation error of the stencils survives.  Edge rows (one-sided
    stencils) are excluded.  In the z representation the residual is
    evaluated on the transformed sample along Im z = y.

    The domain gate requires D(S) and the adjoint derivative domain
    D(Z+): the interior product-rule identity needs second moments and a
    square-summable derivative but not the f(0) = 0 boundary value.
    """
    if not np.any(np.abs(f.values) > 0):
        return 0.0  # zero-vector convention
    if check_domain:
        report = domain_membership(f)
        if not ({"D(S)", "D(Z+)"} <= report.member_of):
            raise PreconditionError(
                "f must lie in D(S) and D(Z+) for the commutator identity",
                report)
    rep = _as_rep(rep)
    if rep is Representation.S:
        zs = apply_Z(apply_S(f, rep), rep)
        sz = apply_S(apply_Z(f, rep), rep)
        resid = zs.values - sz.values - 1j * f.hbar * f.values
        w = f.grid.weights
        inner = slice(EDGE_ROWS, -EDGE_ROWS)
        num = np.sqrt(float(w[inner] @ np.abs(resid[inner]) ** 2))
        return num / f.norm()
    # z representation: work on the line sample of f
    from .hft import forward_hft_line  # local import avoids cycle at module load
    span = 12.0 * f.hbar
    x = np.arange(-span, span + 1e-12, 0.01 * f.hbar)
    phi = forward_hft_line(f, x, y)
    zs = apply_Z(apply_S(phi, rep), rep)
    sz = apply_S(apply_Z(phi, rep), rep)
    resid = zs.values - sz.values - 1j * f.hbar * phi.values
    inner = slice(EDGE_ROWS, -EDGE_ROWS)
    dx = phi.spacing()
    num = np.sqrt(dx * np.abs(resid[inner]) ** 2 @ np.ones(resid[inner].size))
    den = np.sqrt(dx * np.abs(phi.values) ** 2 @ np.ones(phi.values.size))
    return float(num / den)


def symmetry_defect(op: str, f: SampledHalfLineFunction,
                    g: SampledHalfLineFunction) -> complex:
    """<f|A g>* - <g|A f> for A in {S, Z} on a shared grid.

    Vanishes for S; for Z integration by parts leaves the boundary term
    i hbar f(0) g*(0).
    """
    if f.grid is not g.grid and not (
            np.array_equal(f.grid.nodes, g.grid.nodes)
            and np.array_equal(f.grid.weights, g.grid.weights)):
        raise InputError("f and g must share one grid")
    if f.hbar != g.hbar:
        raise InputError("f and g must share hbar")
    op = op.upper()
    w = f.grid.weights
    if op == "S":
        af, ag = apply_S(f), apply_S(g)
    elif op == "Z":
        af, ag = apply_Z(f), apply_Z(g)
    else:
        raise InputError(f"operator must be 'S' or 'Z', got {op!r}")
    bra_f_ag = w @ (np.conj(f.values) * ag.values)
    bra_g_af = w @ (np.conj(g.values) * af.values)
    return complex(np.conj(bra_f_ag) - bra_g_af)


# ------------------------------------------------------------------- domains

@dataclass(frozen=True)
class DomainReport:
    """Quadrature evidence for membership in D(S), D(Z), D(Z+).

    ``abs_continuous_proxy`` only certifies that the discrete derivative
    has finite, stabilising L2 mass; absolute continuity itself is not
    decidable from samples.
    """

    in_L2: bool
    abs_continuous_proxy: bool
    boundary_value_at_zero: complex
    member_of: frozenset = field(default_factory=frozenset)
    moment_trace: tuple = ()      # windowed int s^2 |f|^2
    derivative_trace: tuple = ()  # windowed int |f'|^2

    def to_dict(self) -> dict:
        return {
            "in_L2": self.in_L2,
            "abs_cont": self.abs_continuous_proxy,
            "f0": [self.boundary_value_at_zero.real,
                   self.boundary_value_at_zero.imag],
            "domains": sorted(self.member_of),
        }


def _windowed_trace(nodes, weights, integrand, n_windows=3):
    """Integrals over nested windows (0, L/2^k]; stabilisation test."""
    lmax = nodes[-1]
    trace = []
    for k in range(n_windows - 1, -1, -1):
        mask = nodes <= lmax / 2 ** k
        trace.append(float(weights[mask] @ integrand[mask]))
    return tuple(trace)


def _stabilises(trace, atol=1e-12) -> bool:
    """Convergent vs divergent call on a nested-window integral trace.

    Convergent integrands have window-doubling increments that decay
    (geometrically for exponential tails, ~1/L for rational ones);
    divergent ones have growing increments.  Declared stable when the
    increments decay and the last one is a small fraction of the total.
    """
    if len(trace) < 3:
        return True
    inc = np.abs(np.diff(np.asarray(trace, dtype=float)))
    total = abs(trace[-1])
    if inc[-1] <= max(atol, 1e-6 * total):
        return True
    decaying = all(b <= 0.9 * a for a, b in zip(inc, inc[1:]))
    return decaying and inc[-1] <= 0.1 * total


def domain_membership(f: SampledHalfLineFunction) -> DomainReport:
    """Classify f against the three operator domains.

    D(S): finite second moment int s^2 |f|^2.  D(Z+): finite derivative
    mass int |f'|^2.  D(Z): additionally f(0) = 0 (within
    BOUNDARY_TOLERANCE).  Finiteness on a truncated grid is decided by a
    doubling-window stabilisation test, so slowly decaying functions are
    reported divergent rather than assigned the truncated value.
    """
    s, w = f.grid.nodes, f.grid.weights
    absf2 = np.abs(f.values) ** 2
    norm_trace = _windowed_trace(s, w, absf2)
    in_l2 = _stabilises(norm_trace)
    moment_trace = _windowed_trace(s, w, s ** 2 * absf2)
    in_dom_s = in_l2 and _stabilises(moment_trace)
    df = differentiate(f.values, s)
    deriv_trace = _windowed_trace(s, w, np.abs(df) ** 2)
    abs_cont = _stabilises(deriv_trace)
    f0 = boundary_value(f)
    member = set()
    if in_dom_s:
        member.add("D(S)")
    if in_l2 and abs_cont:
        member.add("D(Z+)")
        if abs(f0) < BOUNDARY_TOLERANCE:
            member.add("D(Z)")
    return DomainReport(in_L2=in_l2, abs_continuous_proxy=abs_cont,
                        boundary_value_at_zero=f0,
                        member_of=frozenset(member),
                        moment_trace=moment_trace,
                        derivative_trace=deriv_trace)
