import math

import numpy as np
import pytest

from fuzzcalc.core import AlphaGrid, fn_crisp, fn_from_triangular
from fuzzcalc.errors import DomainViolation, NonContraction
from fuzzcalc.hybrid import (HybridProblem, LevelSolution, envelope,
                             picard_solve_level, residual, solve)

GRID = AlphaGrid.uniform(10)
U0_NEG = fn_from_triangular(-3, -2, -1, GRID)


class TestEnvelope:
    def test_linear_hits_endpoints(self):
        assert envelope(lambda x: 2 * x + 1, (0.0, 1.0), 65) == (1.0, 3.0)

    def test_square_interior_minimum(self):
        lo, hi = envelope(lambda x: x * x, (-1.0, 2.0), 65)
        assert lo == pytest.approx(0.0, abs=1e-3)
        assert hi == pytest.approx(4.0)

    def test_sine_interior_maximum(self):
        lo, hi = envelope(math.sin, (0.0, math.pi), 65)
        assert lo == pytest.approx(0.0, abs=1e-12)
        assert hi == pytest.approx(1.0, abs=1e-12)


class TestClosedForms:
    def test_unit_f_constant_g(self):
        # d/dt u = -1 levelwise: u_i(t) = u0_i - t
        p = HybridProblem(f=lambda t, x: 1.0, g=lambda t, x: -1.0,
                          u0=U0_NEG, horizon=1.0, time_steps=100)
        s = picard_solve_level(p, 0.5)
        assert s.converged
        assert np.max(np.abs(s.u1 - (-2.5 - s.times))) < 1e-12
        assert np.max(np.abs(s.u2 - (-1.5 - s.times))) < 1e-12
        assert s.residual < 1e-8

    def test_constant_f_two(self):
        # d/dt (u/2) = -1: u_i(t) = u0_i - 2t
        p = HybridProblem(f=lambda t, x: 2.0, g=lambda t, x: -1.0,
                          u0=U0_NEG, horizon=1.0, time_steps=100)
        s = picard_solve_level(p, 0.0)
        assert np.max(np.abs(s.u1 - (-3.0 - 2 * s.times))) < 1e-12
        assert np.max(np.abs(s.u2 - (-1.0 - 2 * s.times))) < 1e-12

    def test_crisp_exponential(self):
        # u' = u with u(0) = -1: u(t) = -e^t
        p = HybridProblem(f=lambda t, x: 1.0, g=lambda t, x: x,
                          u0=fn_crisp(-1.0, GRID), horizon=1.0, time_steps=400)
        s = picard_solve_level(p, 1.0)
        assert s.converged
        assert np.max(np.abs(s.u1 + np.exp(s.times))) < 1e-5
        assert np.max(np.abs(s.u2 + np.exp(s.times))) < 1e-5


class TestResidual:
    def test_halves_with_step(self):
        # defect of the quadrature shrinks at second order in the step
        def run(m):
            p = HybridProblem(f=lambda t, x: 1.0, g=lambda t, x: x,
                              u0=fn_crisp(-1.0, GRID), horizon=1.0, time_steps=m)
            return picard_solve_level(p, 1.0).residual

        r100, r200 = run(100), run(200)
        assert r100 / r200 >= 3.0

    def test_detects_perturbation(self):
        p = HybridProblem(f=lambda t, x: 1.0, g=lambda t, x: -1.0,
                          u0=U0_NEG, horizon=1.0, time_steps=100)
        s = picard_solve_level(p, 0.5)
        bump = 0.1 * np.sin(np.pi * s.times)  # keeps the t = 0 value exact
        bad = LevelSolution(alpha=s.alpha, times=s.times,
                            u1=s.u1 - bump, u2=s.u2 + bump,
                            iterations=s.iterations, converged=s.converged,
                            residual=np.inf)
        assert residual(p, bad) >= 0.05


class TestGuards:
    def test_noncontraction(self):
        p = HybridProblem(f=lambda t, x: 1.0, g=lambda t, x: 10 * x,
                          u0=fn_crisp(1.0, GRID), horizon=1.0, time_steps=100)
        with pytest.raises(NonContraction):
            picard_solve_level(p, 1.0)

    def test_f_touching_zero(self):
        p = HybridProblem(f=lambda t, x: x, g=lambda t, x: 0.0,
                          u0=fn_from_triangular(-1, 0, 1, GRID), horizon=1.0)
        with pytest.raises(DomainViolation):
            picard_solve_level(p, 0.0)

    def test_bracket_sign_change(self):
        # u0/f(0) + G crosses 0 when G = t grows past |u0|
        p = HybridProblem(f=lambda t, x: 1.0, g=lambda t, x: 1.0,
                          u0=U0_NEG, horizon=4.0, time_steps=100)
        with pytest.raises(DomainViolation):
            picard_solve_level(p, 0.0)

    def test_alpha_attached_to_error(self):
        p = HybridProblem(f=lambda t, x: 1.0, g=lambda t, x: 10 * x,
                          u0=fn_crisp(1.0, GRID), horizon=1.0, time_steps=100)
        with pytest.raises(NonContraction) as exc:
            solve(p, GRID)
        assert exc.value.alpha is not None


class TestSolve:
    def test_stacks_into_fuzzy_number(self):
        p = HybridProblem(f=lambda t, x: 1.0, g=lambda t, x: -1.0,
                          u0=U0_NEG, horizon=1.0, time_steps=100)
        bundle = solve(p, GRID)
        assert bundle.stacking_valid
        assert len(bundle.levels) == len(GRID)
        # cuts shrink with alpha at every time
        u1 = np.stack([s.u1 for s in bundle.levels])
        u2 = np.stack([s.u2 for s in bundle.levels])
        assert np.all(np.diff(u1, axis=0) >= -1e-12)
        assert np.all(np.diff(u2, axis=0) <= 1e-12)
        # the stacked value at t = 1 is the initial number shifted by -1
        end = bundle.value(100, GRID)
        want = fn_from_triangular(-4, -3, -2, GRID)
        assert np.max(np.abs(end.lower - want.lower)) < 1e-10
        assert np.max(np.abs(end.upper - want.upper)) < 1e-10

    def test_levels_keep_diagnostics(self):
        p = HybridProblem(f=lambda t, x: 1.0, g=lambda t, x: -1.0,
                          u0=U0_NEG, horizon=1.0, time_steps=50)
        bundle = solve(p, GRID)
        assert len(bundle.diagnostics) == 51
        assert all(rep.is_valid for rep in bundle.diagnostics)
        assert all(s.residual < 1e-8 for s in bundle.levels)

    def test_stacking_failure_is_reported(self):
        # oscillatory f makes the sampled envelopes non-monotone in the cut,
        # which breaks the nesting of the stacked levels
        p = HybridProblem(f=lambda t, x: 2.0 + math.sin(3 * x),
                          g=lambda t, x: 0.3,
                          u0=fn_from_triangular(0, 1, 2, GRID),
                          horizon=0.5, time_steps=100)
        bundle = solve(p, GRID)
        assert not bundle.stacking_valid
        kinds = {k for rep in bundle.diagnostics
                 for _, k, _ in rep.violations}
        assert kinds <= {"lower_not_monotone", "upper_not_monotone", "crossing"}
        assert kinds
