"""Closed-form oracles for the test suite, independent of the library path.

Each suite profile has an analytic transform (antiderivative in the
complex-exponential calculus, hbar = 1):

    exp    f(s) = e^{-s}            phi(z) = (2 pi)^{-1/2} / (1 - i z)
    sexp   f(s) = s e^{-s}          phi(z) = (2 pi)^{-1/2} / (1 - i z)^2
    gauss  f(s) = e^{-(s-3)^2}      phi(z) = (2 pi)^{-1/2} e^{3iz - z^2/4}
                                             * sqrt(pi)/2 * (1 + erf(3 + iz/2))
    sqexp  f(s) = s^2 e^{-s/2}      phi(z) = (2 pi)^{-1/2} * 2 / (1/2 - i z)^3

``validate_closed_forms`` cross-checks them against direct adaptive
quadrature of the defining integral, so the oracles themselves are
independently verified before anything else trusts them.
"""
import numpy as np
from scipy.integrate import quad
from scipy.special import erf

SQRT2PI = np.sqrt(2.0 * np.pi)


def phi_exp(z):
    z = np.asarray(z, dtype=complex)
    return 1.0 / (1.0 - 1j * z) / SQRT2PI


def phi_sexp(z):
    z = np.asarray(z, dtype=complex)
    return 1.0 / (1.0 - 1j * z) ** 2 / SQRT2PI


def phi_gauss(z):
    z = np.asarray(z, dtype=complex)
    return (np.exp(3j * z - z * z / 4.0) * np.sqrt(np.pi) / 2.0
            * (1.0 + erf(3.0 + 1j * z / 2.0))) / SQRT2PI


def phi_sqexp(z):
    z = np.asarray(z, dtype=complex)
    return 2.0 / (0.5 - 1j * z) ** 3 / SQRT2PI


CLOSED_FORMS = {"exp": phi_exp, "sexp": phi_sexp, "gauss": phi_gauss,
                "sqexp": phi_sqexp}

PROFILE_FUNCTIONS = {
    "exp": lambda s: np.exp(-s),
    "sexp": lambda s: s * np.exp(-s),
    "gauss": lambda s: np.exp(-((s - 3.0) ** 2)),
    "sqexp": lambda s: s ** 2 * np.exp(-s / 2.0),
}

#: analytic boundary values f(0)
BOUNDARY_VALUES = {"exp": 1.0, "sexp": 0.0, "gauss": float(np.exp(-9.0)),
                   "sqexp": 0.0}

#: analytic squared norms int_0^inf |f|^2 ds
NORM_SQ = {
    "exp": 0.5,                                   # int e^{-2s} = 1/2
    "sexp": 0.25,                                 # Gamma(3)/2^3
    "gauss": float(np.sqrt(np.pi / 2.0) / 2.0 * (1.0 + erf(3.0 * np.sqrt(2.0)))),
    "sqexp": 24.0,                                # Gamma(5)/1^5
}


def quad_transform(name, z, upper=80.0):
    """Direct adaptive quadrature of the defining integral (oracle check)."""
    f = PROFILE_FUNCTIONS[name]
    re = quad(lambda s: (f(s) * np.exp(1j * s * z)).real, 0.0, upper,
              limit=400)[0]
    im = quad(lambda s: (f(s) * np.exp(1j * s * z)).imag, 0.0, upper,
              limit=400)[0]
    return (re + 1j * im) / SQRT2PI


def validate_closed_forms(tol=1e-10):
    for name, phi in CLOSED_FORMS.items():
        for z in (1j, 1.0 + 1j, -2.0 + 0.5j, 5.0 + 2j):
            direct = quad_transform(name, z)
            if abs(direct - phi(z)) > tol:
                raise AssertionError(
                    f"closed form for {name} at z={z} disagrees with "
                    f"quadrature: {phi(z)} vs {direct}")
