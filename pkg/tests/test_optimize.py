import numpy as np
import pytest

from chain_elastica.optimize import (MinimizeProblem, bfgs_minimize,
                                     gradient_check, newton_minimize)

rng = np.random.default_rng(11)


def quadratic_problem(n=10, seed=0):
    r = np.random.default_rng(seed)
    A = r.standard_normal((n, n))
    A = A @ A.T + n * np.eye(n)
    b = r.standard_normal(n)
    return MinimizeProblem(
        objective=lambda x: 0.5 * x @ A @ x - b @ x,
        gradient=lambda x: A @ x - b,
        hessian=lambda x: A,
    ), np.linalg.solve(A, b)


def test_bfgs_on_convex_quadratic():
    prob, xstar = quadratic_problem()
    res = bfgs_minimize(prob, np.zeros(10))
    assert res.converged
    assert res.grad_norm <= 1e-10
    assert np.max(np.abs(res.x - xstar)) < 1e-8


def test_bfgs_on_rosenbrock():
    def f(x):
        return (1 - x[0]) ** 2 + 100 * (x[1] - x[0] ** 2) ** 2

    def g(x):
        return np.array([-2 * (1 - x[0]) - 400 * x[0] * (x[1] - x[0] ** 2),
                         200 * (x[1] - x[0] ** 2)])

    prob = MinimizeProblem(f, g, grad_inf_tol=1e-9, max_iter=2000)
    res = bfgs_minimize(prob, np.array([-1.2, 1.0]))
    assert res.converged
    assert np.max(np.abs(res.x - 1.0)) < 1e-6


def test_bfgs_at_optimum_stops_immediately():
    prob, xstar = quadratic_problem()
    res = bfgs_minimize(prob, xstar)
    assert res.converged and res.iterations <= 1


def test_newton_one_step_on_quadratic():
    prob, xstar = quadratic_problem()
    res = newton_minimize(prob, np.zeros(10))
    assert res.converged and res.iterations <= 2
    assert np.max(np.abs(res.x - xstar)) < 1e-10


def test_newton_flags_indefinite():
    A = np.diag([1.0, -1.0])
    prob = MinimizeProblem(lambda x: 0.5 * x @ A @ x - np.array([1.0, 1.0]) @ x,
                           lambda x: A @ x - np.array([1.0, 1.0]),
                           hessian=lambda x: A)
    res = newton_minimize(prob, np.zeros(2))
    assert not res.converged
    assert res.hessian_indefinite


def test_projection_keeps_iterates_mean_zero():
    n = 12
    A = np.diag(np.arange(1.0, n + 1))
    b = rng.standard_normal(n)
    b -= b.mean()
    proj = lambda x: x - x.mean()
    prob = MinimizeProblem(lambda x: 0.5 * x @ A @ x - b @ x,
                           lambda x: A @ x - b, hessian=lambda x: A,
                           projection=proj)
    for solver in (bfgs_minimize, newton_minimize):
        res = solver(prob, rng.standard_normal(n))
        assert res.converged
        assert abs(res.x.mean()) < 1e-12


def test_monotone_decrease_along_bfgs():
    prob, _ = quadratic_problem(n=6, seed=3)
    x = np.zeros(6)
    values = [prob.objective(x)]
    # run step by step via max_iter budget
    for k in range(1, 6):
        res = bfgs_minimize(MinimizeProblem(prob.objective, prob.gradient,
                                            max_iter=k), np.zeros(6))
        values.append(res.fun)
    assert all(b <= a + 1e-14 for a, b in zip(values, values[1:]))


def test_gradient_check_catches_wrong_gradient():
    prob, _ = quadratic_problem()
    assert gradient_check(prob, rng.standard_normal(10), h=1e-5) < 1e-9
    bad = MinimizeProblem(prob.objective, lambda x: 2.0 * prob.gradient(x))
    err = gradient_check(bad, rng.standard_normal(10), h=1e-5)
    assert 0.2 < err < 2.0
