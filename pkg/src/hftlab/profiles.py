"""Built-in half-line test profiles.

The default suite {exp, sexp, gauss, sqexp} consists of smooth decaying
functions whose transforms have closed forms, which makes them usable as
oracles throughout the test battery.  ``slow`` decays like 1/s and is
kept for domain-membership demonstrations (it fails the second-moment
test).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

__all__ = ["Profile", "PROFILES", "get_profile", "SUITE"]


@dataclass(frozen=True)
class Profile:
    name: str
    fn: Callable[[np.ndarray], np.ndarray]
    decay_rate: float          # asymptotic exponential rate (0 = subexponential)
    boundary_value: float      # f(0)
    span_hint: float = 40.0

    def __call__(self, s):
        return self.fn(np.asarray(s, dtype=float))


PROFILES = {
    "exp": Profile("exp", lambda s: np.exp(-s), 1.0, 1.0),
    "sexp": Profile("sexp", lambda s: s * np.exp(-s), 1.0, 0.0),
    "gauss": Profile("gauss", lambda s: np.exp(-((s - 3.0) ** 2)), 2.0,
                     float(np.exp(-9.0))),
    "sqexp": Profile("sqexp", lambda s: s ** 2 * np.exp(-s / 2.0), 0.5, 0.0),
    "slow": Profile("slow", lambda s: 1.0 / (1.0 + s), 0.0, 1.0),
}

#: the four-function oracle suite used by the invariant experiments
SUITE = ("exp", "sexp", "gauss", "sqexp")


def get_profile(name: str) -> Profile:
    try:
        return PROFILES[name]
    except KeyError:
        raise ValueError(f"unknown profile {name!r}; "
                         f"choices: {sorted(PROFILES)}") from None
