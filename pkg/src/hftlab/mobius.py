"""Moebius action of SL(2, R) on the upper half-plane and on the transform pair.

A real unimodular matrix (a, b; c, d) acts by z -> (a z + b)/(c z + d)
and preserves the half-plane: Im z~ = Im z / |c z + d|^2.  Since (a, b,
c, d) and its negative act identically, transforms are canonicalised to
make the first nonzero entry positive.

On the boundary the named one-parameter families act as

    dilation(lam):    (0, inf) -> (0, inf)
    translation(k):   shifted conjugate operator Z + k, boundary (k, inf)
    inversion:        (0, inf) -> (-inf, 0), with inf <-> 0

``transform_hft_pair`` implements the canonical change of variables for
the subgroup that keeps the conjugate variable on a half line (upper
triangular: dilations and translations).  The inversion changes the
half line into its opposite and is exposed separately as the
negative-time construction in the free-particle demo rather than as a
general pull-back.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .grids import QuadratureGrid
from .hft import DomainError, HalfPlanePoint, InputError, SampledHalfLineFunction

__all__ = [
    "MobiusTransform", "UnsupportedTransformError", "ExtendedInterval",
    "identity", "dilation", "translation", "inversion",
    "mobius_apply", "mobius_compose", "mobius_inverse", "boundary_action",
    "transform_hft_pair", "TransformedPair",
]

DET_TOLERANCE = 1e-12


class UnsupportedTransformError(ValueError):
    """Transform outside the subgroup supported by the pull-back."""


@dataclass(frozen=True)
class MobiusTransform:
    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        entries = (self.a, self.b, self.c, self.d)
        if not all(np.isfinite(entries)):
            raise InputError("matrix entries must be finite reals")
        det = self.a * self.d - self.b * self.c
        if abs(det - 1.0) > 1e-9:
            raise InputError(f"determinant must be 1, got {det!r}")
        # renormalise exactly and canonicalise the overall sign
        scale = 1.0 / math.sqrt(det)
        a, b, c, d = (v * scale for v in entries)
        for v in (a, b, c, d):
            if v != 0.0:
                if v < 0.0:
                    a, b, c, d = -a, -b, -c, -d
                break
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "d", d)

    @property
    def determinant(self) -> float:
        return self.a * self.d - self.b * self.c

    def as_matrix(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]])

    def is_upper_triangular(self) -> bool:
        return self.c == 0.0

    def __call__(self, z):
        return mobius_apply(self, z)


def identity() -> MobiusTransform:
    return MobiusTransform(1.0, 0.0, 0.0, 1.0)


def dilation(lam: float) -> MobiusTransform:
    """z -> lam z for lam > 0."""
    if lam <= 0:
        raise DomainError("dilation factor must be positive")
    r = math.sqrt(lam)
    return MobiusTransform(r, 0.0, 0.0, 1.0 / r)


def translation(k: float) -> MobiusTransform:
    """Boundary shift moving (0, inf) to (k, inf); z -> z + k."""
    return MobiusTransform(1.0, float(k), 0.0, 1.0)


def inversion() -> MobiusTransform:
    """z -> -1/z, swapping 0 and the point at infinity."""
    return MobiusTransform(0.0, -1.0, 1.0, 0.0)


def mobius_apply(m: MobiusTransform, z) -> HalfPlanePoint:
    """Image of a half-plane point; the half-plane is preserved."""
    if isinstance(z, HalfPlanePoint):
        zc = z.z
    else:
        zc = complex(z)
        if zc.imag <= 0:
            raise DomainError("point must lie in the upper half-plane")
    den = m.c * zc + m.d
    # den = 0 would need c z = -d with real c, d and Im z > 0: impossible
    # unless c = d = 0, excluded by the determinant
    w = (m.a * zc + m.b) / den
    return HalfPlanePoint(x=w.real, y=w.imag)


def mobius_compose(m1: MobiusTransform, m2: MobiusTransform) -> MobiusTransform:
    """Matrix product: (m1 * m2) acts as m1 after m2."""
    a = m1.a * m2.a + m1.b * m2.c
    b = m1.a * m2.b + m1.b * m2.d
    c = m1.c * m2.a + m1.d * m2.c
    d = m1.c * m2.b + m1.d * m2.d
    return MobiusTransform(a, b, c, d)


def mobius_inverse(m: MobiusTransform) -> MobiusTransform:
    """Adjugate; exact inverse for determinant one."""
    return MobiusTransform(m.d, -m.b, -m.c, m.a)


# ------------------------------------------------------------- boundary

@dataclass(frozen=True)
class ExtendedInterval:
    """Oriented interval on the two-point compactified real line."""

    lo: float  # may be -inf / +inf
    hi: float

    def __str__(self):
        def fmt(v):
            if v == math.inf:
                return "inf"
            if v == -math.inf:
                return "-inf"
            return f"{v:g}"
        return f"({fmt(self.lo)},{fmt(self.hi)})"


def _boundary_limit(m: MobiusTransform, x: float, side: float) -> float:
    """One-sided limit of the boundary action at x (side=+1 from above).

    Uses the two-point compactification with the convention that the
    inversion exchanges the point at infinity with zero.
    """
    if math.isinf(x):
        if m.c == 0.0:
            # (a x + b)/d with a d = 1 > 0: sign of x preserved
            return math.copysign(math.inf, x)
        return m.a / m.c
    den = m.c * x + m.d
    if den == 0.0:
        # numerator at the pole is -det/c = -1/c != 0; the limit sign is
        # sign(num / (c * side * 0+)) = -side since num * c = -1
        return -side * math.inf
    return (m.a * x + m.b) / den


def boundary_action(m: MobiusTransform, interval) -> ExtendedInterval:
    """Image of a boundary interval, endpoints in R u {+-inf}.

    A determinant-one map is increasing away from its pole, so the
    image of (lo, hi) is the interval between the one-sided limits at
    the endpoints (lo approached from above, hi from below).  An
    interval containing the pole strictly wraps through infinity and is
    reported as the full line.
    """
    lo, hi = float(interval[0]), float(interval[1])
    if not lo < hi:
        raise InputError("interval must satisfy lo < hi")
    if m.c != 0.0:
        pole = -m.d / m.c
        if lo < pole < hi:
            return ExtendedInterval(-math.inf, math.inf)
    a = _boundary_limit(m, lo, +1.0)
    b = _boundary_limit(m, hi, -1.0)
    return ExtendedInterval(min(a, b), max(a, b))


# -------------------------------------------------------------- pull-back

@dataclass(frozen=True)
class TransformedPair:
    """Transform pair in tilde coordinates with operator bookkeeping.

    For z~ = lam z + k the conjugate variable is s~ = s / lam and the
    function transforms unitarily as

        f~(s~) = sqrt(lam) f(lam s~) exp(-i s~ k / hbar)

    so that the pair (f~, phi~) satisfies the same transform relations,
    with the operators carried along as

        S~ = S / lam        (same nonnegative spectrum)
        Z~ = lam Z + k      (commutator [Z~, S~] = i hbar unchanged)
    """

    transform: MobiusTransform
    function: SampledHalfLineFunction
    dilation_factor: float
    shift: float

    def spectrum_scale(self) -> float:
        """Multiplying tilde eigenvalues of S~ by this recovers those of S."""
        return self.dilation_factor


def transform_hft_pair(m: MobiusTransform,
                       f: SampledHalfLineFunction) -> TransformedPair:
    """Canonical change of variables for half-line-preserving transforms.

    Supported: the upper-triangular subgroup (dilations z -> lam z and
    translations z -> z + k, compositions thereof).  The inversion moves
    the boundary half line to its opposite and has no half-line-to-half-
    line pull-back of this form; it is flagged.
    """
    if not m.is_upper_triangular():
        raise UnsupportedTransformError(
            "only dilations/translations keep (0, inf) on a half line; "
            "the inversion path is covered by the negative-time demo")
    lam = m.a / m.d          # z~ = lam z + k
    k = m.b / m.d
    if lam <= 0:
        raise UnsupportedTransformError("orientation-reversing transform")
    grid = f.grid
    new_grid = QuadratureGrid(nodes=grid.nodes / lam, weights=grid.weights / lam,
                              scheme_tag=grid.scheme_tag, scale=grid.scale * lam)
    s_new = new_grid.nodes
    values = (math.sqrt(lam) * np.asarray(f.values)
              * np.exp(-1j * s_new * k / f.hbar))
    f_new = SampledHalfLineFunction(new_grid, values, f.hbar)
    return TransformedPair(transform=m, function=f_new,
                           dilation_factor=lam, shift=k)
