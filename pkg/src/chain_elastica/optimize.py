"""Unconstrained minimizers over mean-zero coefficient vectors: BFGS with a
strong-Wolfe line search, and Newton with a direct linear solve (the fast
oracle for the stiff quintic-spline systems)."""

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
import scipy.linalg

__all__ = ["MinimizeProblem", "MinimizeResult", "bfgs_minimize",
           "newton_minimize", "gradient_check"]


def _identity(x):
    return x


@dataclass
class MinimizeProblem:
    objective: Callable
    gradient: Callable
    hessian: Optional[Callable] = None
    projection: Callable = _identity
    grad_inf_tol: float = 1e-10
    max_iter: int = 500


@dataclass
class MinimizeResult:
    x: np.ndarray
    fun: float
    grad_norm: float
    iterations: int
    converged: bool
    message: str = ""
    method: str = ""
    hessian_indefinite: bool = False


# Wolfe constants; the source material gives no line-search details
_C1 = 1e-4
_C2 = 0.9


def _wolfe_line_search(f, g, x, p, fx, gx, proj, max_steps=40):
    """Strong Wolfe line search by bracketing + bisection. Falls back to the
    best sufficient-decrease point when the curvature condition is out of
    reach (roundoff near a minimizer); returns None only if no admissible
    step exists. Returns (alpha, x_new, f_new, g_new)."""
    d0 = float(np.dot(gx, p))
    if d0 >= 0:
        return None

    def phi(a):
        xn = proj(x + a * p)
        return xn, f(xn)

    def accept(a, xn, fn):
        return a, xn, fn, proj(g(xn))

    alpha, alpha_prev = 1.0, 0.0
    f_prev = fx
    best = None          # best Armijo point seen: (a, x, f)
    lo = hi = flo = None
    for _ in range(max_steps):
        xn, fn = phi(alpha)
        if fn > fx + _C1 * alpha * d0 or (f_prev < fn and alpha_prev > 0):
            lo, hi, flo = alpha_prev, alpha, f_prev
            break
        best = (alpha, xn, fn)
        gn = proj(g(xn))
        dn = float(np.dot(gn, p))
        if abs(dn) <= -_C2 * d0:
            return alpha, xn, fn, gn
        if dn >= 0:
            lo, hi, flo = alpha, alpha_prev, fn
            break
        alpha_prev, f_prev = alpha, fn
        alpha *= 2.0
    if lo is None:
        return accept(*best) if best else None
    for _ in range(max_steps):
        a = 0.5 * (lo + hi)
        xn, fn = phi(a)
        if fn > fx + _C1 * a * d0 or fn >= flo:
            hi = a
            continue
        best = (a, xn, fn)
        gn = proj(g(xn))
        dn = float(np.dot(gn, p))
        if abs(dn) <= -_C2 * d0:
            return a, xn, fn, gn
        if dn * (hi - lo) >= 0:
            hi = lo
        lo, flo = a, fn
    if best is not None:
        return accept(*best)
    if lo and lo > 0:
        xn, fn = phi(lo)
        return accept(lo, xn, fn)
    return None


def bfgs_minimize(problem, x0):
    """BFGS with strong-Wolfe steps; every iterate passes through the
    problem's projection (mean-zero enforcement)."""
    proj = problem.projection
    x = proj(np.asarray(x0, dtype=float).copy())
    f, g = problem.objective, problem.gradient
    fx = f(x)
    gx = proj(g(x))
    n = x.size
    H = np.eye(n)
    it = 0
    while np.max(np.abs(gx)) > problem.grad_inf_tol and it < problem.max_iter:
        p = -H @ gx
        ls = _wolfe_line_search(f, g, x, p, fx, gx, proj)
        if ls is None:
            # objective differences at the roundoff floor: accept the full
            # quasi-Newton step if it still reduces the gradient
            xn = proj(x + p)
            fn, gn = f(xn), proj(g(xn))
            if not (fn <= fx + 1e-12 * (abs(fx) + 1.0)
                    and np.max(np.abs(gn)) < np.max(np.abs(gx))):
                return MinimizeResult(x, fx, float(np.max(np.abs(gx))), it,
                                      False, "line search failed", "bfgs")
            alpha = 1.0
        else:
            alpha, xn, fn, gn = ls
        s = xn - x
        y = gn - gx
        sy = float(np.dot(s, y))
        if sy > 1e-14 * float(np.linalg.norm(s) * np.linalg.norm(y) + 1e-300):
            rho = 1.0 / sy
            V = np.eye(n) - rho * np.outer(s, y)
            H = V @ H @ V.T + rho * np.outer(s, s)
        x, fx, gx = xn, fn, gn
        it += 1
    ok = np.max(np.abs(gx)) <= problem.grad_inf_tol
    return MinimizeResult(x, fx, float(np.max(np.abs(gx))), it, bool(ok),
                          "converged" if ok else "max iterations", "bfgs")


def newton_minimize(problem, x0):
    """Newton with a direct solve and energy backtracking.

    The translation-invariant energies here have the constant vector in the
    Hessian kernel; a rank-one shift restores invertibility on the mean-zero
    subspace. An indefinite projected Hessian is flagged (that failure mode is
    informative: it exhibits the unstable continuum variants)."""
    if problem.hessian is None:
        raise ValueError("newton_minimize needs a Hessian")
    proj = problem.projection
    x = proj(np.asarray(x0, dtype=float).copy())
    n = x.size
    # a mean-zero projection kills the constant direction, which then sits in
    # the Hessian kernel; shift it out before the solve
    kills_constants = bool(np.max(np.abs(proj(np.ones(n)))) < 1e-14)
    f, g = problem.objective, problem.gradient
    for it in range(problem.max_iter + 1):
        gx = proj(g(x))
        gnorm = float(np.max(np.abs(gx)))
        if gnorm <= problem.grad_inf_tol:
            return MinimizeResult(x, f(x), gnorm, it, True, "converged", "newton")
        H = problem.hessian(x)
        if kills_constants:
            # reduce to the mean-zero subspace: center H to P H P, then shift
            # the (now exactly null) constant direction out of the kernel
            rm = H.mean(axis=1, keepdims=True)
            cm = H.mean(axis=0, keepdims=True)
            Hp = H - rm - cm + H.mean()
            shift = (abs(np.trace(Hp)) / n) or 1.0
            Hreg = Hp + (shift / n) * np.ones((n, n))
        else:
            Hreg = H
        # Cholesky both solves and certifies positive definiteness (on the
        # mean-zero subspace when the constant direction is shifted out)
        try:
            chol = scipy.linalg.cho_factor(Hreg)
        except scipy.linalg.LinAlgError:
            return MinimizeResult(x, f(x), gnorm, it, False,
                                  "Hessian not positive definite",
                                  "newton", hessian_indefinite=True)
        p = proj(scipy.linalg.cho_solve(chol, -gx))
        fx = f(x)
        alpha = 1.0
        for _ in range(60):
            xn = proj(x + alpha * p)
            if f(xn) <= fx + 1e-4 * alpha * float(np.dot(gx, p)):
                break
            alpha *= 0.5
        else:
            return MinimizeResult(x, fx, gnorm, it, False,
                                  "backtracking failed", "newton")
        x = xn
    gx = proj(g(x))
    return MinimizeResult(x, f(x), float(np.max(np.abs(gx))),
                          problem.max_iter, False, "max iterations", "newton")


def gradient_check(problem, x, h=1e-6, directions=None, rng=None):
    """Max relative error between the analytic gradient and central
    differences of the objective along coordinate (or random) directions."""
    x = np.asarray(x, dtype=float)
    g = problem.gradient(x)
    scale = float(np.max(np.abs(g))) + 1e-30
    if directions is None:
        n = x.size
        if n <= 24:
            dirs = list(np.eye(n))
        else:
            rng = rng or np.random.default_rng(0)
            dirs = [d / np.linalg.norm(d) for d in rng.standard_normal((12, n))]
    else:
        dirs = directions
    worst = 0.0
    for d in dirs:
        fd = (problem.objective(x + h * d) - problem.objective(x - h * d)) / (2 * h)
        worst = max(worst, abs(fd - float(np.dot(g, d))) / scale)
    return worst
