"""The periodic atomistic chain: energy, first/second variations, solver, the
distributional atomistic stress, and circulant/DFT oracles."""

from dataclasses import dataclass

import numpy as np

from .lattice import PeriodicLatticeField, project_mean_zero, check_admissible
from .optimize import MinimizeProblem, bfgs_minimize, newton_minimize
from .potentials import shifted
from .splines import localization_weight

__all__ = ["AtomisticSystem", "AtomisticSolution", "external_work",
           "atomistic_stress", "hessian_dft_eigenvalues", "dft_solve"]


class AtomisticSystem:
    """2N-periodic chain with pair potential phi, bonds R = {1..r_cut},
    deformation gradient F (lattice units default 1) and a mean-zero dead
    load. Immutable; share freely."""

    def __init__(self, N, potential, bonds=(1, 2), F=1.0, force=None, kappa=None):
        self.N = int(N)
        self.potential = potential
        self.bonds = tuple(int(r) for r in bonds)
        if any(r < 1 for r in self.bonds):
            raise ValueError("bonds must be positive integers")
        self.F = float(F)
        self.phi = {rho: shifted(potential, self.F, rho) for rho in self.bonds}
        if force is None:
            force = np.zeros(2 * self.N)
        elif isinstance(force, PeriodicLatticeField):
            force = force.values
        self.force = np.asarray(force, dtype=float)
        if abs(self.force.sum()) > 1e-10 * max(1, 2 * self.N):
            raise ValueError("external force must be mean-zero")
        self.kappa = self.F / 4.0 if kappa is None else float(kappa)

    def r_cut(self):
        return max(self.bonds)

    def _strains(self, u):
        """D_rho u(xi) for every bond; raises if a bond is compressed past
        zero length (Lennard-Jones/Morse domain)."""
        out = {}
        for rho in self.bonds:
            d = np.roll(u, -rho) - u
            if np.any(d + self.F * rho <= 0.0):
                xi = int(np.argmax(d + self.F * rho <= 0.0)) - self.N
                raise ValueError(f"bond (xi={xi}, rho={rho}) collapsed to "
                                 "nonpositive length")
            out[rho] = d
        return out

    def energy(self, u):
        """sum_xi sum_rho phi_rho(D_rho u(xi))."""
        u = u.values if isinstance(u, PeriodicLatticeField) else np.asarray(u, float)
        strains = self._strains(u)
        return float(sum(self.phi[rho].derivative(0, strains[rho]).sum()
                         for rho in self.bonds))

    def energy_above_homogeneous(self, u):
        """energy(u) - energy(0), accumulated term by term to avoid the O(N)
        cancellation of the homogeneous offset."""
        u = u.values if isinstance(u, PeriodicLatticeField) else np.asarray(u, float)
        strains = self._strains(u)
        total = 0.0
        for rho in self.bonds:
            base = float(self.phi[rho].derivative(0, np.zeros(1))[0])
            total += float((self.phi[rho].derivative(0, strains[rho]) - base).sum())
        return total

    def gradient(self, u):
        u = u.values if isinstance(u, PeriodicLatticeField) else np.asarray(u, float)
        strains = self._strains(u)
        g = np.zeros_like(u)
        for rho in self.bonds:
            fb = self.phi[rho].derivative(1, strains[rho])
            g += np.roll(fb, rho) - fb
        return g

    def hessian(self, u):
        """Dense symmetric periodic-banded Hessian (circulant at homogeneous u)."""
        u = u.values if isinstance(u, PeriodicLatticeField) else np.asarray(u, float)
        n = u.size
        strains = self._strains(u)
        H = np.zeros((n, n))
        idx = np.arange(n)
        for rho in self.bonds:
            k = self.phi[rho].derivative(2, strains[rho])
            j = (idx + rho) % n
            np.add.at(H, (idx, idx), k)
            np.add.at(H, (j, j), k)
            np.add.at(H, (idx, j), -k)
            np.add.at(H, (j, idx), -k)
        return H

    def objective_problem(self, grad_tol=1e-10, max_iter=500):
        """E_a(u) - <f, u> as a MinimizeProblem over mean-zero vectors."""
        f = self.force

        def obj(u):
            return self.energy_above_homogeneous(u) - float(np.dot(f, u))

        def grad(u):
            return self.gradient(u) - f

        return MinimizeProblem(obj, grad, hessian=self.hessian,
                               projection=lambda x: x - x.mean(),
                               grad_inf_tol=grad_tol, max_iter=max_iter)

    def solve(self, method="newton", grad_tol=1e-10, max_iter=500, u0=None):
        prob = self.objective_problem(grad_tol, max_iter)
        x0 = np.zeros(2 * self.N) if u0 is None else np.asarray(u0, float)
        res = (newton_minimize if method == "newton" else bfgs_minimize)(prob, x0)
        u = project_mean_zero(PeriodicLatticeField(res.x, self.N))
        ok, site, rho, worst = check_admissible(u, self.bonds, self.kappa)
        return AtomisticSolution(u, float(res.fun), res.grad_norm, res.iterations,
                                 res.converged, res.method,
                                 admissible=ok, worst_bond=(site, rho, worst))


@dataclass
class AtomisticSolution:
    displacement: PeriodicLatticeField
    energy_above_homogeneous: float
    grad_norm: float
    iterations: int
    converged: bool
    method: str
    admissible: bool
    worst_bond: tuple


def external_work(f, u):
    """Dead-load pairing <f, u> = sum_xi f(xi) u(xi)."""
    fv = f.values if isinstance(f, PeriodicLatticeField) else np.asarray(f, float)
    uv = u.values if isinstance(u, PeriodicLatticeField) else np.asarray(u, float)
    return float(np.dot(fv, uv))


def atomistic_stress(system, u, kernel, x):
    """S_a(u; x) = sum_xi sum_rho rho phi_rho'(D_rho u(xi)) chi_{xi,rho}(x),
    periodic. Only the finitely many xi with chi != 0 near x contribute."""
    uf = u if isinstance(u, PeriodicLatticeField) else PeriodicLatticeField(u)
    x = np.asarray(x, dtype=float)
    n2 = 2 * uf.N
    xw = (x + uf.N) % n2 - uf.N
    base = np.floor(xw).astype(int)
    out = np.zeros_like(xw)
    for rho in system.bonds:
        d = uf.shifted_values(rho) - uf.values
        bond_force = rho * system.phi[rho].derivative(1, d)
        rad = int(np.ceil(kernel.support_radius)) + 1
        for off in range(-rad - rho, rad + 1):
            xi = base + off
            w = localization_weight(kernel, xi, rho, xw)
            out += bond_force[(xi + uf.N) % n2] * w
    return out


def hessian_dft_eigenvalues(system):
    """Eigenvalues of the homogeneous-state circulant Hessian, k = 0..2N-1:
    sum_rho 4 phi_rho''(0) sin^2(pi k rho / 2N)."""
    n = 2 * system.N
    k = np.arange(n)
    lam = np.zeros(n)
    for rho in system.bonds:
        phi2 = float(system.phi[rho].derivative(2, np.zeros(1))[0])
        lam += 4.0 * phi2 * np.sin(np.pi * k * rho / n) ** 2
    return lam


def dft_solve(system):
    """Exact mean-zero solution of the linearized (harmonic) problem
    H u = f via the circulant diagonalization."""
    lam = hessian_dft_eigenvalues(system)
    fhat = np.fft.fft(system.force)
    uhat = np.zeros_like(fhat)
    uhat[1:] = fhat[1:] / lam[1:]
    u = np.real(np.fft.ifft(uhat))
    return PeriodicLatticeField(u - u.mean(), system.N)
