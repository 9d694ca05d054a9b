"""Fuzzy-number arithmetic, fractional calculus, and a hybrid IVP solver."""

from .core import (AlphaGrid, Box, DiscreteFuzzySet, FuzzyNumber, Interval,
                   ValidityReport, fn_alpha_cut, fn_arith, fn_crisp,
                   fn_distance, fn_from_trapezoid, fn_from_triangular,
                   fn_membership, fn_validate, resample, zadeh_extend)
from .errors import FuzzcalcError
from .fractional import (beta_fn, caputo_derivative, gamma_fn, gl_derivative,
                         hilfer_derivative, power_rule_oracle, rl_derivative,
                         rl_integral)
from .fuzzyfun import (DerivativeForm, FuzzyFunction, fuzzy_frac_derivative,
                       fuzzy_riemann_integral, fuzzy_rl_integral,
                       gh_derivative_series)
from .gh import (GhCase, NotExists, approx_g_div, approx_gh_diff,
                 cps_compose, cps_decompose, g_div_fuzzy, g_div_interval,
                 gh_diff_box, gh_diff_cps, gh_diff_fuzzy, gh_diff_interval,
                 lsq_gh_diff)
from .hybrid import (HybridProblem, LevelSolution, SolutionBundle, envelope,
                     picard_solve_level, residual, solve)
from .sampling import SampledFunction

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
