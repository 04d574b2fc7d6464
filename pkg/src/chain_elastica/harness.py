"""Refinement studies: configuration, the modeling-error sweep, slope fits,
and the consistency / stability / solve reports with CSV + JSON output.

Internally everything runs in lattice units (spacing 1, domain [-N, N]);
reported errors are converted to the scaled axes: gradient errors carry a
factor eps^(1/2), energies a factor eps.
"""

import ast
import json
import os
from dataclasses import dataclass

import numpy as np

from .analysis import find_negative_mode, stability_constants, \
    atomistic_symbol, cb_symbol, hoc_taylor_symbol, direct_symbol
from .atomistic import AtomisticSystem
from .continuum import SineField, consistency_residual, continuum_model
from .fem import PeriodicSplineSpace, energy_gap, grad_l2_distance, \
    solve_continuum, IndefiniteHessianError
from .potentials import make_potential
from .splines import measurement_interpolant, reproducing_kernel

__all__ = ["StudyConfig", "ConvergenceRecord", "SlopeFit", "fit_slope",
           "run_sweep", "run_consistency", "run_stability", "run_solve",
           "load_config"]

_DEFAULT_EPS = tuple(2.0 ** -k for k in range(3, 11))


@dataclass
class StudyConfig:
    potential: str = "harmonic"
    eps_scale: float = 1.0            # potential length scale (lattice units)
    morse_a: float = 4.0
    r_cut: int = 2                    # bonds {1, ..., r_cut}
    F: float = 1.0
    models: tuple = ("cb", "hoc4")
    eps_list: tuple = _DEFAULT_EPS
    interp: str = "quartic"           # pi | cubic | quartic
    opt_method: str = "newton"        # newton | bfgs
    grad_tol: float = 1e-10
    max_iter: int = 500
    eps_min_fit: float = 2.0 ** -8    # exclude smaller eps from slope fits
    kappa: float = None
    out_dir: str = "out"

    def bonds(self):
        return tuple(range(1, self.r_cut + 1))

    def make_potential(self):
        return make_potential(self.potential, eps=self.eps_scale,
                              morse_a=self.morse_a)


@dataclass
class ConvergenceRecord:
    model: str
    eps: float
    N: int
    grad_error: float       # scaled units: eps^(1/2) * lattice value
    energy_gap: float       # scaled units: eps * lattice value
    converged: bool


@dataclass
class SlopeFit:
    model: str
    slope: float
    intercept: float
    r2: float
    points: int
    flagged: bool = False   # r2 below the acceptance bar


def fit_slope(pairs, eps_min=0.0):
    """Least squares on (log eps, log error); needs >= 3 positive points."""
    pts = [(e, v) for e, v in pairs if e >= eps_min]
    if len(pts) < 3:
        raise ValueError("slope fit needs at least 3 points")
    if any(v <= 0.0 for _, v in pts):
        raise ValueError("slope fit needs positive errors")
    le = np.log([e for e, _ in pts])
    lv = np.log([v for _, v in pts])
    slope, intercept = np.polyfit(le, lv, 1)
    resid = lv - (slope * le + intercept)
    ss_tot = float(np.sum((lv - lv.mean()) ** 2))
    r2 = 1.0 - float(np.sum(resid ** 2)) / ss_tot if ss_tot > 0 else 0.0
    return slope, intercept, r2, len(pts)


def _eps_to_N(eps):
    N = round(1.0 / eps)
    if abs(N * eps - 1.0) > 1e-12:
        raise ValueError(f"eps = {eps} is not the reciprocal of an integer")
    return int(N)


def _lattice_force(N):
    eps = 1.0 / N
    xi = np.arange(-N, N)
    return eps * np.cos(np.pi * eps * xi)


def solve_cell(cfg, eps, model_key):
    """One (eps, model) cell: atomistic + continuum solves, scaled errors."""
    N = _eps_to_N(eps)
    pot = cfg.make_potential()
    bonds = cfg.bonds()
    system = AtomisticSystem(N, pot, bonds=bonds, F=cfg.F,
                             force=_lattice_force(N), kappa=cfg.kappa)
    sol_a = system.solve(method=cfg.opt_method, grad_tol=cfg.grad_tol,
                         max_iter=cfg.max_iter)
    model = continuum_model(model_key, pot, bonds=bonds, F=cfg.F)
    space = PeriodicSplineSpace(N)
    f_cont = lambda x: eps * np.cos(np.pi * eps * x)
    u_c = solve_continuum(model, space, f_cont, method=cfg.opt_method,
                          grad_tol=cfg.grad_tol, max_iter=cfg.max_iter)
    iu = measurement_interpolant(sol_a.displacement, cfg.interp)
    g_err = grad_l2_distance(iu, u_c, N)
    e_gap = energy_gap(system, sol_a, model, u_c)
    converged = bool(sol_a.converged and u_c.result.converged)
    return ConvergenceRecord(model_key, eps, N,
                             float(np.sqrt(eps) * g_err), float(eps * e_gap),
                             converged)


def run_sweep(cfg):
    """The refinement protocol: for each eps solve both descriptions, measure
    the scaled gradient error and energy gap, then fit slopes per model.
    Output ordering is deterministic: models in config order, eps descending."""
    records = []
    for model_key in cfg.models:
        for eps in sorted(cfg.eps_list, reverse=True):
            try:
                records.append(solve_cell(cfg, eps, model_key))
            except IndefiniteHessianError:
                records.append(ConvergenceRecord(model_key, eps,
                                                 _eps_to_N(eps),
                                                 float("nan"), float("nan"),
                                                 False))
    fits = []
    for model_key in cfg.models:
        rows = [(r.eps, r.grad_error) for r in records
                if r.model == model_key and r.converged]
        slope, intercept, r2, npts = fit_slope(rows, eps_min=cfg.eps_min_fit)
        fits.append(SlopeFit(model_key, slope, intercept, r2, npts,
                             flagged=bool(r2 < 0.99)))
    return records, fits


def energy_fits(cfg, records):
    fits = []
    for model_key in cfg.models:
        rows = [(r.eps, r.energy_gap) for r in records
                if r.model == model_key and r.converged]
        slope, intercept, r2, npts = fit_slope(rows, eps_min=cfg.eps_min_fit)
        fits.append(SlopeFit(model_key, slope, intercept, r2, npts,
                             flagged=bool(r2 < 0.99)))
    return fits


def _fmt(v):
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return str(v)


def write_records_csv(path, records):
    lines = ["model,eps,N,grad_error,energy_gap,converged"]
    for r in records:
        lines.append(",".join([r.model, _fmt(r.eps), str(r.N),
                               _fmt(r.grad_error), _fmt(r.energy_gap),
                               str(r.converged).lower()]))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def write_fits_json(path, fits):
    data = [{"model": f.model, "slope": f.slope, "intercept": f.intercept,
             "r2": f.r2, "points": f.points, "flagged": f.flagged}
            for f in fits]
    with open(path, "w") as fh:
        json.dump(data, fh, indent=2, sort_keys=True)
        fh.write("\n")


def run_consistency(cfg, Ns=(8, 16, 32, 64, 128), amplitude=0.1,
                    models=("hoc4", "hoc6", "ill2", "first")):
    """Pointwise stress-consistency sweep on the fixed test field
    amplitude * sin(pi x / N). The sixth-order model is paired with the
    quintic kernel, everything else with the cubic one."""
    pot = cfg.make_potential()
    bonds = cfg.bonds()
    rows = []
    for model_key in models:
        model = continuum_model(model_key, pot, bonds=bonds, F=cfg.F)
        kernel = reproducing_kernel(5 if model_key == "hoc6" else 3)
        for N in Ns:
            system = AtomisticSystem(N, pot, bonds=bonds, F=cfg.F)
            u = SineField(amplitude, np.pi / N)
            x = np.linspace(-N, N, 16 * 2 * N, endpoint=False)
            r = consistency_residual(system, model, u, kernel, x)
            rows.append({"model": model_key, "N": N,
                         "max_R": float(np.max(np.abs(r))),
                         "l2_R": float(np.sqrt(np.mean(r ** 2) * 2 * N))})
    fits = {}
    for model_key in models:
        pairs = [(1.0 / row["N"], row["max_R"]) for row in rows
                 if row["model"] == model_key]
        slope, intercept, r2, npts = fit_slope(pairs)
        fits[model_key] = SlopeFit(model_key, slope, intercept, r2, npts,
                                   flagged=bool(r2 < 0.99))
    return rows, fits


def run_stability(cfg, band=(0.0, 1.0), ngrid=10_000, Ns=(8, 16, 32, 64)):
    pot = cfg.make_potential()
    bonds = cfg.bonds()
    system = AtomisticSystem(8, pot, bonds=bonds, F=cfg.F, kappa=cfg.kappa)
    report = stability_constants(system, band=band, ngrid=ngrid, Ns=Ns)
    ill = continuum_model("ill2", pot, bonds=bonds, F=cfg.F)
    modes = {N: find_negative_mode(ill, N) for N in Ns}
    x = np.linspace(band[0], band[1], 513)[1:]
    hoc4 = continuum_model("hoc4", pot, bonds=bonds, F=cfg.F)
    table = np.column_stack([x, atomistic_symbol(system, x),
                             np.full_like(x, cb_symbol(system)),
                             hoc_taylor_symbol(system, x),
                             direct_symbol(hoc4, x)])
    return report, modes, table


def run_solve(cfg, eps, models=("cb", "hoc4"), out_dir=None):
    """Solve the atomistic chain and the requested continuum models at one
    eps; returns solutions plus the gradient distances to the atomistic
    interpolant (the displacement-figure comparison)."""
    N = _eps_to_N(eps)
    pot = cfg.make_potential()
    bonds = cfg.bonds()
    system = AtomisticSystem(N, pot, bonds=bonds, F=cfg.F,
                             force=_lattice_force(N), kappa=cfg.kappa)
    sol_a = system.solve(method=cfg.opt_method, grad_tol=cfg.grad_tol)
    iu = measurement_interpolant(sol_a.displacement, cfg.interp)
    out = {"atomistic": sol_a}
    dists = {}
    for key in models:
        model = continuum_model(key, pot, bonds=bonds, F=cfg.F)
        space = PeriodicSplineSpace(N)
        u_c = solve_continuum(model, space,
                              lambda x: eps * np.cos(np.pi * eps * x),
                              method=cfg.opt_method, grad_tol=cfg.grad_tol)
        out[key] = u_c
        dists[key] = grad_l2_distance(iu, u_c, N)
    if out_dir is not None:
        os.makedirs(out_dir, exist_ok=True)
        _write_solution_csvs(out_dir, N, system, sol_a,
                             {k: out[k] for k in models})
    return out, dists


def _write_solution_csvs(out_dir, N, system, sol_a, continuum_fields):
    from .lattice import hermite_interpolant
    xi = np.arange(-N, N)
    du = hermite_interpolant(sol_a.displacement).eval(xi.astype(float), 1)
    lines = ["xi,u,grad_interp_u"]
    for i, s in enumerate(xi):
        lines.append(f"{s},{_fmt(sol_a.displacement.values[i])},{_fmt(du[i])}")
    with open(os.path.join(out_dir, f"solution_atomistic_{N}.csv"), "w") as fh:
        fh.write("\n".join(lines) + "\n")
    xs = np.sort(np.concatenate([xi.astype(float), xi + 0.5]))
    for key, fld in continuum_fields.items():
        lines = ["x,u,grad_u,grad3_u"]
        u0 = fld.eval(xs, 0)
        u1 = fld.eval(xs, 1)
        u3 = fld.eval(xs, 3)
        for j, x in enumerate(xs):
            lines.append(f"{_fmt(x)},{_fmt(u0[j])},{_fmt(u1[j])},{_fmt(u3[j])}")
        with open(os.path.join(out_dir, f"solution_{key}_{N}.csv"), "w") as fh:
            fh.write("\n".join(lines) + "\n")


# dotted spellings accepted in config files
_KEY_ALIASES = {"opt.grad_tol": "grad_tol", "opt.max_iter": "max_iter",
                "opt.method": "opt_method"}


def load_config(path=None, overrides=None):
    """Flat key = value config (strings, numbers, tuples via literal syntax);
    '#' starts a comment. CLI overrides win."""
    data = {}
    if path:
        with open(path) as fh:
            for raw in fh:
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise ValueError(f"bad config line: {raw.rstrip()}")
                key, val = (s.strip() for s in line.split("=", 1))
                key = _KEY_ALIASES.get(key, key)
                try:
                    data[key] = ast.literal_eval(val)
                except (SyntaxError, ValueError):
                    data[key] = val
    if overrides:
        data.update(overrides)
    cfg = StudyConfig()
    for key, val in data.items():
        if not hasattr(cfg, key):
            raise ValueError(f"unknown config key {key!r}")
        if key in ("models", "eps_list") and not isinstance(val, tuple):
            val = tuple(val) if isinstance(val, (list, set)) else (val,)
        setattr(cfg, key, val)
    return cfg
