"""Pair potentials with closed-form derivatives up to order 7, their shifted
forms under a macroscopic deformation gradient, and decay moments."""

import numpy as np

MAX_DERIVATIVE = 7

__all__ = [
    "PairPotential", "ShiftedPotential", "InteractionRange",
    "make_potential", "shifted", "decay_moment", "MAX_DERIVATIVE",
]


class PairPotential:
    """A pair interaction phi(r) with analytic derivatives.

    kind: 'harmonic'  phi(r) = (r/eps - 1)^2 / 2
          'lj'        phi(r) = (r/eps)^-12 - 2 (r/eps)^-6   (minimum -1 at r = eps)
          'morse'     phi(r) = (1 - exp(-a (r/eps - 1)))^2 - 1
    eps is the length scale of the scaled potentials; internally the library
    works in lattice units, i.e. eps = 1.
    """

    def __init__(self, kind, eps=1.0, morse_a=4.0):
        if kind not in ("harmonic", "lj", "morse"):
            raise ValueError(f"unknown potential kind {kind!r}")
        if eps <= 0:
            raise ValueError("scale eps must be positive")
        self.kind = kind
        self.eps = float(eps)
        self.morse_a = float(morse_a)

    def derivative(self, j, r):
        """phi^(j)(r) for 0 <= j <= 7, r > 0."""
        if not 0 <= j <= MAX_DERIVATIVE:
            raise ValueError(f"derivative order {j} unsupported (max {MAX_DERIVATIVE})")
        r = np.asarray(r, dtype=float)
        if np.any(r <= 0.0):
            raise ValueError("pair potential evaluated at nonpositive distance")
        s = r / self.eps
        scale = self.eps ** (-j)
        if self.kind == "harmonic":
            if j == 0:
                return 0.5 * (s - 1.0) ** 2
            if j == 1:
                return scale * (s - 1.0)
            if j == 2:
                return scale * np.ones_like(s)
            return np.zeros_like(s)
        if self.kind == "lj":
            # d^j/ds^j s^-p = (-1)^j p (p+1) ... (p+j-1) s^-(p+j)
            c12 = np.prod(np.arange(12, 12 + j), dtype=float) * (-1.0) ** j
            c6 = np.prod(np.arange(6, 6 + j), dtype=float) * (-1.0) ** j
            return scale * (c12 * s ** (-12.0 - j) - 2.0 * c6 * s ** (-6.0 - j))
        # morse: phi = E^2 - 2E with E = exp(-a (s - 1))
        a = self.morse_a
        E = np.exp(-a * (s - 1.0))
        if j == 0:
            return E * E - 2.0 * E - 0.0
        return scale * ((-2.0 * a) ** j * E * E - 2.0 * (-a) ** j * E)

    def __call__(self, r):
        return self.derivative(0, r)

    def __repr__(self):
        return f"PairPotential({self.kind!r}, eps={self.eps})"


def make_potential(name, eps=1.0, **params):
    """Potential from its config string: 'harmonic', 'lj' or 'morse'."""
    return PairPotential(name, eps=eps, morse_a=params.get("morse_a", 4.0))


class InteractionRange:
    """The finite bond set {1, ..., r_cut}."""

    def __init__(self, r_cut):
        if int(r_cut) < 1 or int(r_cut) != r_cut:
            raise ValueError("r_cut must be a positive integer")
        self.r_cut = int(r_cut)

    def __iter__(self):
        return iter(range(1, self.r_cut + 1))

    def __len__(self):
        return self.r_cut

    def __repr__(self):
        return f"InteractionRange({self.r_cut})"


class ShiftedPotential:
    """phi_rho(r) = phi(r + F rho): the bond-rho slice of the energy at
    macroscopic deformation gradient F, as a function of the strain r."""

    def __init__(self, base, F, rho):
        if F <= 0:
            raise ValueError("deformation gradient F must be positive")
        self.base = base
        self.F = float(F)
        self.rho = int(rho)
        self.shift = self.F * self.rho

    def derivative(self, j, s):
        try:
            return self.base.derivative(j, np.asarray(s, dtype=float) + self.shift)
        except ValueError as exc:
            raise ValueError(f"bond rho={self.rho}: {exc}") from None

    def __call__(self, s):
        return self.derivative(0, s)


def shifted(p, F, rho):
    """Shifted potential phi_rho for a bond of length rho at gradient F."""
    return ShiftedPotential(p, F, rho)


def decay_moment(potential, F, bonds, j, s, strain_interval, samples=4097):
    """M^(j,s) = sum_rho rho^(j+s) sup |phi_rho^(j)| over the given strain
    interval (the admissible set; the sup over all of (0, inf) diverges for
    Lennard-Jones and Morse). The sup is taken by dense sampling."""
    lo, hi = strain_interval
    if not lo < hi:
        raise ValueError("empty strain interval")
    g = np.linspace(lo, hi, samples)
    total = 0.0
    for rho in bonds:
        phi_rho = shifted(potential, F, rho)
        total += rho ** (j + s) * float(np.max(np.abs(phi_rho.derivative(j, g))))
    return total
