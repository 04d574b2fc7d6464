"""Continuum energy densities and stresses for the five model variants, the
Euler-Lagrange residual of the fourth-order model, the pointwise consistency
residual against the atomistic stress, and the external-work consistency gap.

Gradient-argument convention: g has shape (5, ...) and holds
(grad u, grad^2 u, ..., grad^5 u) at the evaluation points.
"""

import numpy as np

from .atomistic import atomistic_stress
from .lattice import PeriodicLatticeField
from .potentials import shifted
from .quadrature import composite_integral
from .splines import convolution_interpolant, nodal_interpolant

__all__ = [
    "SineField", "SumField", "continuum_model", "MODEL_KEYS",
    "CauchyBorn", "HigherOrder4", "HigherOrder6",
    "IllPosedSecondGradient", "LatticePointExpansion",
    "consistency_residual", "external_work_gap", "continuum_energy",
    "first_variation_pairing", "stress_pairing",
]


class SineField:
    """A sin(k x + phase); all derivatives in closed form."""

    max_derivative = 99

    def __init__(self, amplitude, wavenumber, phase=0.0):
        self.amplitude = float(amplitude)
        self.wavenumber = float(wavenumber)
        self.phase = float(phase)

    def eval(self, x, deriv=0):
        x = np.asarray(x, dtype=float)
        return (self.amplitude * self.wavenumber ** deriv
                * np.sin(self.wavenumber * x + self.phase + 0.5 * np.pi * deriv))

    def __call__(self, x, deriv=0):
        return self.eval(x, deriv)


class SumField:
    max_derivative = 99

    def __init__(self, *fields):
        self.fields = fields

    def eval(self, x, deriv=0):
        return sum(f.eval(x, deriv) for f in self.fields)

    def __call__(self, x, deriv=0):
        return self.eval(x, deriv)


def _gradients(u, x, upto):
    return np.stack([u.eval(x, j) for j in range(1, upto + 1)])


class _ComposedModel:
    """Variants whose density is sum_rho phi_rho(sum_m c_m(rho) grad^m u).

    Subclasses fix the per-bond argument coefficients c(rho); the shifted
    potentials phi_rho(r) = phi(r + F rho) carry the deformation gradient.
    """

    key = ""
    stress_order = 1          # highest derivative the stress formula reads
    density_orders = (1,)     # gradient slots the density depends on

    def __init__(self, potential, bonds=(1, 2), F=1.0):
        self.potential = potential
        self.bonds = tuple(int(r) for r in bonds)
        self.F = float(F)
        self.phi = {rho: shifted(potential, self.F, rho) for rho in self.bonds}

    def _arg_coeffs(self, rho):
        raise NotImplementedError

    def _args(self, g):
        g = np.asarray(g, dtype=float)
        return {rho: np.tensordot(self._arg_coeffs(rho), g, axes=(0, 0))
                for rho in self.bonds}

    def domain_margin(self, g):
        """min over bonds of the physical bond length arguments; <= 0 means a
        potential-domain violation somewhere."""
        args = self._args(g)
        return np.min(np.stack([args[rho] + self.F * rho
                                for rho in self.bonds]), axis=0)

    def density(self, g):
        args = self._args(g)
        return sum(self.phi[rho].derivative(0, args[rho]) for rho in self.bonds)

    def density0(self):
        """Density of the homogeneous state (all gradients zero)."""
        return float(sum(self.phi[rho].derivative(0, np.zeros(1))[0]
                         for rho in self.bonds))

    def density_grad(self, g):
        g = np.asarray(g, dtype=float)
        args = self._args(g)
        out = np.zeros((5,) + np.shape(g[0]))
        for rho in self.bonds:
            c = self._arg_coeffs(rho)
            d1 = self.phi[rho].derivative(1, args[rho])
            for m in range(5):
                if c[m] != 0.0:
                    out[m] += c[m] * d1
        return out

    def density_hess(self, g):
        g = np.asarray(g, dtype=float)
        args = self._args(g)
        out = np.zeros((5, 5) + np.shape(g[0]))
        for rho in self.bonds:
            c = self._arg_coeffs(rho)
            d2 = self.phi[rho].derivative(2, args[rho])
            for m in range(5):
                if c[m] == 0.0:
                    continue
                for n in range(5):
                    if c[n] != 0.0:
                        out[m, n] += c[m] * c[n] * d2
        return out


class CauchyBorn(_ComposedModel):
    """Density sum_rho phi_rho(rho grad u): second-order accurate."""

    key = "cb"
    stress_order = 1
    density_orders = (1,)

    def _arg_coeffs(self, rho):
        return np.array([rho, 0.0, 0.0, 0.0, 0.0])

    def stress(self, u, x):
        g1 = u.eval(x, 1)
        return sum(rho * self.phi[rho].derivative(1, rho * g1)
                   for rho in self.bonds)


class HigherOrder4(_ComposedModel):
    """Fourth-order model from the bond-midpoint expansion: density depends on
    grad u and grad^3 u through rho grad u + (rho^3/24) grad^3 u."""

    key = "hoc4"
    stress_order = 5
    density_orders = (1, 3)

    def _arg_coeffs(self, rho):
        return np.array([rho, 0.0, rho ** 3 / 24.0, 0.0, 0.0])

    def stress(self, u, x):
        g = _gradients(u, x, 5)
        out = np.zeros_like(g[0])
        for rho in self.bonds:
            a = rho * g[0] + rho ** 3 / 24.0 * g[2]
            ap = rho * g[1] + rho ** 3 / 24.0 * g[3]     # d a / dx
            p1 = self.phi[rho].derivative(1, a)
            p2 = self.phi[rho].derivative(2, a)
            p3 = self.phi[rho].derivative(3, a)
            out += (rho * p1
                    + rho ** 3 / 24.0 * p3 * ap ** 2
                    + rho ** 4 / 24.0 * p2 * g[2]
                    + rho ** 6 / 576.0 * p2 * g[4])
        return out

    def el_residual(self, u, x):
        """W(u) = d/dx of the stress along u; W(u) + f = 0 is the strong form
        of the forced minimization. Needs derivatives up to order 6."""
        g = np.stack([u.eval(x, j) for j in range(1, 7)])
        out = np.zeros_like(g[0])
        for rho in self.bonds:
            a = rho * g[0] + rho ** 3 / 24.0 * g[2]
            ap = rho * g[1] + rho ** 3 / 24.0 * g[3]
            app = rho * g[2] + rho ** 3 / 24.0 * g[4]
            p2 = self.phi[rho].derivative(2, a)
            p3 = self.phi[rho].derivative(3, a)
            p4 = self.phi[rho].derivative(4, a)
            out += (rho * p2 * ap
                    + rho ** 3 / 24.0 * p4 * ap ** 3
                    + rho ** 3 / 12.0 * p3 * ap * app
                    + rho ** 4 / 24.0 * p3 * ap * g[2]
                    + rho ** 4 / 24.0 * p2 * g[3]
                    + rho ** 6 / 576.0 * p3 * ap * g[4]
                    + rho ** 6 / 576.0 * p2 * g[5])
        return out


class HigherOrder6(_ComposedModel):
    """Sixth-order model: the midpoint expansion kept through grad^5 u."""

    key = "hoc6"
    stress_order = 5
    density_orders = (1, 3, 5)

    def _arg_coeffs(self, rho):
        return np.array([rho, 0.0, rho ** 3 / 24.0, 0.0, rho ** 5 / 1920.0])

    def stress(self, u, x):
        """Eight-term stress, consistent to sixth order; the exact variational
        stress of this density needs derivatives beyond order 6, so the
        expansion truncated at the model's order is used instead."""
        g = _gradients(u, x, 5)
        out = np.zeros_like(g[0])
        for rho in self.bonds:
            ar = rho * g[0]
            p1 = self.phi[rho].derivative(1, ar)
            p2 = self.phi[rho].derivative(2, ar)
            p3 = self.phi[rho].derivative(3, ar)
            p4 = self.phi[rho].derivative(4, ar)
            p5 = self.phi[rho].derivative(5, ar)
            out += (rho * p1
                    + rho ** 4 / 12.0 * p2 * g[2]
                    + rho ** 5 / 24.0 * p3 * g[1] ** 2
                    + rho ** 6 / 360.0 * p2 * g[4]
                    + rho ** 7 / 240.0 * p3 * g[2] ** 2
                    + rho ** 7 / 180.0 * p3 * g[1] * g[3]
                    + 7.0 * rho ** 8 / 1440.0 * p4 * g[2] * g[1] ** 2
                    + rho ** 9 / 1920.0 * p5 * g[1] ** 4)
        return out


class IllPosedSecondGradient(_ComposedModel):
    """The second-gradient model with density
    sum_rho [phi_rho(rho g1) - (rho^4/24) phi_rho''(rho g1) g2^2]:
    fourth-order consistent in stress but not positive definite."""

    key = "ill2"
    stress_order = 3
    density_orders = (1, 2)

    def _arg_coeffs(self, rho):  # not of composed form; overrides below
        raise NotImplementedError

    def domain_margin(self, g):
        g = np.asarray(g, dtype=float)
        return np.min(np.stack([rho * g[0] + self.F * rho
                                for rho in self.bonds]), axis=0)

    def density(self, g):
        g = np.asarray(g, dtype=float)
        out = np.zeros_like(g[0])
        for rho in self.bonds:
            a = rho * g[0]
            out += self.phi[rho].derivative(0, a) \
                - rho ** 4 / 24.0 * self.phi[rho].derivative(2, a) * g[1] ** 2
        return out

    def density0(self):
        return float(sum(self.phi[rho].derivative(0, np.zeros(1))[0]
                         for rho in self.bonds))

    def density_grad(self, g):
        g = np.asarray(g, dtype=float)
        out = np.zeros((5,) + np.shape(g[0]))
        for rho in self.bonds:
            a = rho * g[0]
            out[0] += rho * self.phi[rho].derivative(1, a) \
                - rho ** 5 / 24.0 * self.phi[rho].derivative(3, a) * g[1] ** 2
            out[1] += -rho ** 4 / 12.0 * self.phi[rho].derivative(2, a) * g[1]
        return out

    def density_hess(self, g):
        g = np.asarray(g, dtype=float)
        out = np.zeros((5, 5) + np.shape(g[0]))
        for rho in self.bonds:
            a = rho * g[0]
            out[0, 0] += rho ** 2 * self.phi[rho].derivative(2, a) \
                - rho ** 6 / 24.0 * self.phi[rho].derivative(4, a) * g[1] ** 2
            cross = -rho ** 5 / 12.0 * self.phi[rho].derivative(3, a) * g[1]
            out[0, 1] += cross
            out[1, 0] += cross
            out[1, 1] += -rho ** 4 / 12.0 * self.phi[rho].derivative(2, a) \
                * np.ones_like(g[0])
        return out

    def stress(self, u, x):
        """Variational stress of the density (one integration by parts on the
        second-gradient slot)."""
        g = _gradients(u, x, 3)
        out = np.zeros_like(g[0])
        for rho in self.bonds:
            a = rho * g[0]
            out += (rho * self.phi[rho].derivative(1, a)
                    + rho ** 4 / 12.0 * self.phi[rho].derivative(2, a) * g[2]
                    + rho ** 5 / 24.0 * self.phi[rho].derivative(3, a) * g[1] ** 2)
        return out


class LatticePointExpansion(_ComposedModel):
    """Negative control: the expansion taken at lattice points instead of bond
    midpoints, density sum_rho phi_rho(rho g1 + (rho^2/2) g2 + (rho^3/6) g3).

    `stress` is the stress this derivation produces before any of the
    cancellation structure is available: the plain density-argument stress.
    Its leading consistency defect is the uncancelled second-gradient term,
    which is what makes the model low-order. The full variational stress of
    the same density is kept separately for comparison."""

    key = "first"
    stress_order = 3
    density_orders = (1, 2, 3)

    def _arg_coeffs(self, rho):
        return np.array([rho, rho ** 2 / 2.0, rho ** 3 / 6.0, 0.0, 0.0])

    def stress(self, u, x):
        g = _gradients(u, x, 3)
        out = np.zeros_like(g[0])
        for rho in self.bonds:
            a = rho * g[0] + rho ** 2 / 2.0 * g[1] + rho ** 3 / 6.0 * g[2]
            out += rho * self.phi[rho].derivative(1, a)
        return out

    def variational_stress(self, u, x):
        """Exact stress of the density (integration by parts on g2 and g3)."""
        g = _gradients(u, x, 5)
        out = np.zeros_like(g[0])
        for rho in self.bonds:
            a = rho * g[0] + rho ** 2 / 2.0 * g[1] + rho ** 3 / 6.0 * g[2]
            ap = rho * g[1] + rho ** 2 / 2.0 * g[2] + rho ** 3 / 6.0 * g[3]
            app = rho * g[2] + rho ** 2 / 2.0 * g[3] + rho ** 3 / 6.0 * g[4]
            p1 = self.phi[rho].derivative(1, a)
            p2 = self.phi[rho].derivative(2, a)
            p3 = self.phi[rho].derivative(3, a)
            out += (rho * p1 - rho ** 2 / 2.0 * p2 * ap
                    + rho ** 3 / 6.0 * (p3 * ap ** 2 + p2 * app))
        return out


_MODELS = {m.key: m for m in (CauchyBorn, HigherOrder4, HigherOrder6,
                              IllPosedSecondGradient, LatticePointExpansion)}
MODEL_KEYS = tuple(_MODELS)


def continuum_model(kind, potential, bonds=(1, 2), F=1.0):
    """Model from its config key: cb | hoc4 | hoc6 | ill2 | first."""
    if kind not in _MODELS:
        raise ValueError(f"unknown continuum model {kind!r}; known: {MODEL_KEYS}")
    return _MODELS[kind](potential, bonds, F)


def continuum_energy(model, u, N, npoints=5, relative=True):
    """Integral of the density along the smooth field u over [-N, N].
    With relative=True the homogeneous offset is removed pointwise, which
    keeps the small energy differences well conditioned."""
    upto = max(model.density_orders)
    w0 = model.density0() if relative else 0.0

    def f(x):
        g = np.zeros((5,) + x.shape)
        for j in model.density_orders:
            g[j - 1] = u.eval(x, j)
        return model.density(g) - w0

    return composite_integral(f, N, npoints)


def first_variation_pairing(model, u, v, N, npoints=8):
    """<delta E(u), v> = int sum_m dW/dg_m grad^m v dx: the exact Gateaux
    derivative of the density energy."""
    upto = max(model.density_orders)

    def f(x):
        g = np.zeros((5,) + x.shape)
        for j in model.density_orders:
            g[j - 1] = u.eval(x, j)
        dw = model.density_grad(g)
        out = np.zeros_like(x)
        for j in model.density_orders:
            out += dw[j - 1] * v.eval(x, j)
        return out

    return composite_integral(f, N, npoints)


def stress_pairing(model, u, v, N, npoints=8):
    """int S(u; x) grad v dx."""
    return composite_integral(lambda x: model.stress(u, x) * v.eval(x, 1),
                              N, npoints)


def consistency_residual(system, model, u, kernel, x):
    """R(u; x) = S_a(u; x) - S_model(u; x), with the atomistic stress built
    from the lattice samples of u."""
    sites = np.arange(-system.N, system.N)
    v = PeriodicLatticeField(u.eval(sites.astype(float), 0), system.N)
    return atomistic_stress(system, v, kernel, x) - model.stress(u, x)


def external_work_gap(f, v, kernel, npoints=10):
    """|<f, v_tilde>_lattice - <f, v_hat>_continuum| for a mean-zero force:
    the discrete pairing samples the quasi-interpolant at the sites, the
    continuum pairing integrates against the nodal interpolant."""
    N = v.N
    sites = np.arange(-N, N).astype(float)
    vt = convolution_interpolant(v, kernel)
    vh = nodal_interpolant(v, kernel)
    discrete = float(np.dot(f(sites), vt.eval(sites)))
    integral = composite_integral(lambda x: f(x) * vh.eval(x), N, npoints)
    return abs(discrete - integral)
