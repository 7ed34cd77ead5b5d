"""Model parameters for the three-component chemotaxis system.

Two cell densities u and v move up gradients of a shared signal w with
sensitivity chi / w**k (singular at w = 0 when k > 0), degrade
quadratically with rates mu1 and mu2, and interact through r*u*v; the
signal is produced by both populations and decays linearly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

DEFAULT_CHI = 0.5


@dataclass(frozen=True)
class Params:
    mu1: float
    mu2: float
    r: float
    k: float
    chi1: float = DEFAULT_CHI
    chi2: float = DEFAULT_CHI

    def __post_init__(self):
        if not (self.mu1 > 0.0 and self.mu2 > 0.0):
            raise ValueError(f"decay rates must be positive, got mu1={self.mu1}, mu2={self.mu2}")
        if self.r < 0.0:
            raise ValueError(f"interaction rate must be nonnegative, got r={self.r}")
        if not 0.0 < self.k <= 1.0:
            raise ValueError(f"sensitivity exponent must lie in (0, 1], got k={self.k}")
        if not (self.chi1 >= 0.0 and self.chi2 >= 0.0):
            raise ValueError(f"sensitivities must be nonnegative, got chi1={self.chi1}, chi2={self.chi2}")


def sensitivity(w, chi: float, k: float):
    """Evaluate chi / w**k.  Accepts scalars or arrays; rejects w <= 0."""
    w_arr = np.asarray(w, dtype=np.float64)
    if np.any(w_arr <= 0.0):
        raise ValueError("sensitivity needs strictly positive signal values")
    out = chi * w_arr ** (-k)
    return float(out) if np.isscalar(w) else out


@dataclass(frozen=True)
class Equilibrium:
    a: float
    u_star: float
    v_star: float
    w_star: float


def equilibrium(p: Params) -> Equilibrium:
    """Spatially uniform positive steady state of the reaction system.

    With a the positive root of mu2*a**2 - r*a - mu1 = 0, the steady state
    is u* = (1 + a)/mu1, v* = a*u*, w* = mu1*u***2.  When r = mu2 - mu1
    this reduces to a = 1, u* = v* = 2/mu1, w* = 4/mu1.
    """
    a = (p.r + math.sqrt(p.r * p.r + 4.0 * p.mu1 * p.mu2)) / (2.0 * p.mu2)
    u_star = (1.0 + a) / p.mu1
    v_star = a * u_star
    w_star = p.mu1 * u_star * u_star
    return Equilibrium(a=a, u_star=u_star, v_star=v_star, w_star=w_star)


def case1_params(chi1: float = DEFAULT_CHI, chi2: float = DEFAULT_CHI) -> Params:
    """Weakly singular sensitivity run: k = 0.8, equilibrium (2.5, 2.5, 5)."""
    return Params(mu1=0.8, mu2=0.9, r=0.1, k=0.8, chi1=chi1, chi2=chi2)


def case2_params(chi1: float = DEFAULT_CHI, chi2: float = DEFAULT_CHI) -> Params:
    """Classical sensitivity run: k = 1, same reaction rates as case 1."""
    return Params(mu1=0.8, mu2=0.9, r=0.1, k=1.0, chi1=chi1, chi2=chi2)
