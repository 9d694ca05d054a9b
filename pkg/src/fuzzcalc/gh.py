"""Generalized Hukuhara difference and generalized division.

Interval, box and fuzzy-number variants, existence detection, the
crisp/profile/symmetric (CPS) decomposition, and the two approximation
schemes for non-existing fuzzy differences: the nested backward iteration
and the chain-constrained weighted least squares.
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .core import (Box, FuzzyNumber, Interval, require_same_grid,
                   validity_tolerance)
from .errors import DimensionMismatch, DomainError, InvalidPair, NonpositiveWeight


class GhCase(Enum):
    CASE_I = "case_i"
    CASE_II = "case_ii"
    BOTH = "both"


@dataclass(frozen=True)
class NotExists:
    """Marker result: the exact difference/division is not a fuzzy number."""

    reason: str  # mixed_cases | crossing | lower_not_monotone | upper_not_monotone


# ---------------------------------------------------------------------------
# Intervals and boxes

def interval_mul(a, b):
    """Standard interval product (min/max of the four endpoint products)."""
    products = (a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi)
    return Interval(min(products), max(products))


def interval_inv(b):
    """Multiplicative 'inverse' [1/hi, 1/lo]; requires 0 outside b."""
    _check_divisor(b)
    return Interval(1.0 / b.hi, 1.0 / b.lo)


def gh_diff_interval(a, b):
    """gH-difference of intervals: always exists.

    Returns (Interval, GhCase); the case tag compares the widths
    (wider minuend -> case (i), narrower -> case (ii), equal -> both).
    """
    d_lo = a.lo - b.lo
    d_hi = a.hi - b.hi
    tol = validity_tolerance([a.lo, a.hi, b.lo, b.hi])
    dw = a.width - b.width  # equals d_hi - d_lo
    if abs(dw) <= tol:
        case = GhCase.BOTH
    elif dw > 0:
        case = GhCase.CASE_I
    else:
        case = GhCase.CASE_II
    return Interval(min(d_lo, d_hi), max(d_lo, d_hi)), case


def gh_diff_box(a, b):
    """Componentwise gH-difference of boxes.

    Exists iff every component agrees on case (i) or every component on
    case (ii); width ties are compatible with either.  Returns
    (Box, GhCase) or NotExists("mixed_cases").
    """
    if len(a) != len(b):
        raise DimensionMismatch(f"box dimensions differ: {len(a)} vs {len(b)}")
    parts = [gh_diff_interval(ai, bi) for ai, bi in zip(a, b)]
    cases = [c for _, c in parts]
    has_i = any(c is GhCase.CASE_I for c in cases)
    has_ii = any(c is GhCase.CASE_II for c in cases)
    if has_i and has_ii:
        return NotExists("mixed_cases")
    case = GhCase.CASE_I if has_i else (GhCase.CASE_II if has_ii else GhCase.BOTH)
    return Box(tuple(iv for iv, _ in parts)), case


# ---------------------------------------------------------------------------
# Fuzzy gH-difference

def _level_diffs(u, v):
    require_same_grid(u, v)
    d_lo = u.lower - v.lower
    d_hi = u.upper - v.upper
    return d_lo, d_hi, validity_tolerance(d_lo, d_hi)


def gh_diff_fuzzy(u, v):
    """Levelwise gH-difference of fuzzy numbers.

    Returns (FuzzyNumber, GhCase) when the chosen branch is monotone and
    crossing-free beyond tolerance, otherwise NotExists with the first
    violated condition (crossing, then lower, then upper monotonicity).
    """
    d_lo, d_hi, tol = _level_diffs(u, v)
    spread = d_hi - d_lo
    if np.all(np.abs(spread) <= tol):
        case = GhCase.BOTH
        w_lo, w_hi = d_lo, d_hi
    elif np.all(spread >= -tol):
        case = GhCase.CASE_I
        w_lo, w_hi = d_lo, d_hi
    elif np.all(spread <= tol):
        case = GhCase.CASE_II
        w_lo, w_hi = d_hi, d_lo
    else:
        return NotExists("crossing")
    if np.any(np.diff(w_lo) < -tol):
        return NotExists("lower_not_monotone")
    if np.any(np.diff(w_hi) > tol):
        return NotExists("upper_not_monotone")
    return FuzzyNumber(u.grid, np.minimum(w_lo, w_hi), np.maximum(w_lo, w_hi)), case


def approx_gh_diff(u, v):
    """Approximate gH-difference via the nested backward iteration.

    Equals gh_diff_fuzzy whenever the exact difference exists.  Otherwise
    the levelwise difference pairs are taken in their case-oriented
    (length-rule) order and swept from alpha = 1 downward with running
    min/max, which always yields a proper fuzzy number.
    """
    exact = gh_diff_fuzzy(u, v)
    if not isinstance(exact, NotExists):
        return exact[0]
    d_lo, d_hi, _ = _level_diffs(u, v)
    # Case-oriented pair per level: the lower slot gets the larger of the
    # two differences (length rule), the upper slot the smaller.
    w_lo = np.maximum(d_lo, d_hi)
    w_hi = np.minimum(d_lo, d_hi)
    z_lo = np.empty_like(w_lo)
    z_hi = np.empty_like(w_hi)
    z_lo[-1] = min(d_lo[-1], d_hi[-1])
    z_hi[-1] = max(d_lo[-1], d_hi[-1])
    for k in range(len(w_lo) - 2, -1, -1):
        z_lo[k] = min(z_lo[k + 1], w_lo[k])
        z_hi[k] = max(z_hi[k + 1], w_hi[k])
    return FuzzyNumber(u.grid, z_lo, z_hi)


def lsq_gh_diff(u, v, lower_weights=None, upper_weights=None):
    """Closest fuzzy number to the levelwise gH-differences (least squares).

    Minimizes the weighted squared deviation from the raw levelwise
    endpoints subject to the single chain
    z0- <= ... <= zN- <= zN+ <= ... <= z0+, solved exactly by weighted
    pool-adjacent-violators isotonic regression on the concatenation.
    """
    d_lo, d_hi, _ = _level_diffs(u, v)
    n = d_lo.size
    w_lo = np.minimum(d_lo, d_hi)
    w_hi = np.maximum(d_lo, d_hi)
    omega = np.ones(n) if lower_weights is None else np.asarray(lower_weights, dtype=float)
    gamma = np.ones(n) if upper_weights is None else np.asarray(upper_weights, dtype=float)
    if omega.shape != (n,) or gamma.shape != (n,):
        raise ValueError("weights must have one entry per alpha level")
    if np.any(omega <= 0) or np.any(gamma <= 0):
        raise NonpositiveWeight("weights must be strictly positive")
    chain_y = np.concatenate([w_lo, w_hi[::-1]])
    chain_w = np.concatenate([omega, gamma[::-1]])
    fit = _pav_nondecreasing(chain_y, chain_w)
    return FuzzyNumber(u.grid, fit[:n], fit[n:][::-1])


def _pav_nondecreasing(y, w):
    """Weighted isotonic (nondecreasing) regression by pool-adjacent-violators."""
    vals = []
    wts = []
    counts = []
    for yi, wi in zip(y, w):
        vals.append(float(yi))
        wts.append(float(wi))
        counts.append(1)
        while len(vals) > 1 and vals[-2] > vals[-1]:
            merged_w = wts[-2] + wts[-1]
            merged_v = (vals[-2] * wts[-2] + vals[-1] * wts[-1]) / merged_w
            merged_c = counts[-2] + counts[-1]
            vals.pop(); wts.pop(); counts.pop()
            vals[-1] = merged_v
            wts[-1] = merged_w
            counts[-1] = merged_c
    return np.repeat(vals, counts)


# ---------------------------------------------------------------------------
# CPS decomposition

@dataclass(frozen=True)
class CpsTriple:
    """Crisp core interval, symmetry profile and 0-symmetric half-widths."""

    crisp: Interval
    profile: np.ndarray  # per level, 0 at alpha = 1
    symmetric: np.ndarray  # per level, nonnegative, nonincreasing, 0 at alpha = 1


def cps_decompose(u):
    """Split u into (core interval, midpoint profile, symmetric half-width)."""
    mid = 0.5 * (u.lower + u.upper)
    half = 0.5 * (u.upper - u.lower)
    crisp = Interval(float(u.lower[-1]), float(u.upper[-1]))
    return CpsTriple(crisp=crisp, profile=mid - mid[-1], symmetric=half - half[-1])


def _check_valid_pair(profile, symmetric, tol):
    if abs(profile[-1]) > tol or abs(symmetric[-1]) > tol:
        raise InvalidPair("profile and symmetric part must vanish at alpha = 1")
    if np.any(symmetric < -tol):
        raise InvalidPair("symmetric part must be nonnegative")
    if np.any(np.diff(profile - symmetric) < -tol):
        raise InvalidPair("profile - symmetric must be nondecreasing")
    if np.any(np.diff(profile + symmetric) > tol):
        raise InvalidPair("profile + symmetric must be nonincreasing")


def cps_compose(triple, grid):
    """Rebuild the fuzzy number with cuts core + profile -+ symmetric."""
    profile = np.asarray(triple.profile, dtype=float)
    symmetric = np.asarray(triple.symmetric, dtype=float)
    if profile.shape != (len(grid),) or symmetric.shape != (len(grid),):
        raise ValueError("triple length must match the grid")
    tol = validity_tolerance(profile, symmetric,
                             [triple.crisp.lo, triple.crisp.hi])
    _check_valid_pair(profile, symmetric, tol)
    lower = triple.crisp.lo + profile - symmetric
    upper = triple.crisp.hi + profile + symmetric
    return FuzzyNumber(grid, lower, upper)


def gh_diff_cps(u, v):
    """gH-difference computed through the CPS decomposition.

    Cores subtract as intervals, profiles subtract pointwise, and the
    symmetric parts subtract in whichever order stays a 0-symmetric fuzzy
    component.  Returns (FuzzyNumber, GhCase) or NotExists.
    """
    require_same_grid(u, v)
    tu = cps_decompose(u)
    tv = cps_decompose(v)
    crisp, case = gh_diff_interval(tu.crisp, tv.crisp)
    profile = tu.profile - tv.profile
    diff = tu.symmetric - tv.symmetric
    tol = validity_tolerance(diff, profile)

    def in_s0(s):
        return np.all(s >= -tol) and np.all(np.diff(s) <= tol)

    candidates = []
    if in_s0(diff) and case in (GhCase.CASE_I, GhCase.BOTH):
        candidates.append((diff, GhCase.CASE_I))
    if in_s0(-diff) and case in (GhCase.CASE_II, GhCase.BOTH):
        candidates.append((-diff, GhCase.CASE_II))
    if not candidates:
        return NotExists("crossing")
    successes = []
    for symmetric, tag in candidates:
        try:
            w = cps_compose(CpsTriple(crisp, profile, np.maximum(symmetric, 0.0)), u.grid)
        except InvalidPair:
            continue
        successes.append((w, tag))
    if len(successes) == 2:
        return successes[0][0], GhCase.BOTH
    if successes:
        return successes[0]
    # The symmetric part subtracted cleanly but the pair is not valid.
    if np.any(np.diff(profile - np.abs(diff)) < -tol):
        return NotExists("lower_not_monotone")
    return NotExists("upper_not_monotone")


# ---------------------------------------------------------------------------
# Generalized division

DIV_MARGIN_SCALE = 1e-12


def _check_divisor(b):
    delta = DIV_MARGIN_SCALE * (1.0 + max(abs(b.lo), abs(b.hi)))
    if not (b.lo > delta or b.hi < -delta):
        raise DomainError(f"divisor [{b.lo}, {b.hi}] contains 0 (margin {delta:g})")
    return delta


def g_div_interval(a, b):
    """Generalized division of intervals by the six sign-pattern rules.

    Requires 0 safely outside b.  Returns (Interval, GhCase); the case tag
    records which inversion of interval multiplication the quotient
    satisfies (a tie means both, a singleton quotient).
    """
    _check_divisor(b)
    tol = validity_tolerance([a.lo, a.hi, b.lo, b.hi])
    if b.hi < 0:  # negative divisor
        if a.lo > 0:
            # case (i) iff a-*b- >= a+*b+
            case = _div_case(a.lo * b.lo, a.hi * b.hi, tol)
            pick = (a.hi / b.lo, a.lo / b.hi) if case is not GhCase.CASE_II \
                else (a.lo / b.hi, a.hi / b.lo)
        elif a.hi < 0:
            # case (i) iff a+*b- <= a-*b+
            case = _div_case(a.lo * b.hi, a.hi * b.lo, tol)
            pick = (a.hi / b.hi, a.lo / b.lo) if case is not GhCase.CASE_II \
                else (a.lo / b.lo, a.hi / b.hi)
        else:  # 0 in a: result does not depend on b.hi
            pick = (a.hi / b.lo, a.lo / b.lo)
            case = GhCase.CASE_I
    else:  # positive divisor
        if a.lo > 0:
            # case (i) iff a-*b+ <= a+*b-
            case = _div_case(a.hi * b.lo, a.lo * b.hi, tol)
            pick = (a.lo / b.lo, a.hi / b.hi) if case is not GhCase.CASE_II \
                else (a.hi / b.hi, a.lo / b.lo)
        elif a.hi < 0:
            # case (i) iff a-*b- <= a+*b+
            case = _div_case(a.hi * b.hi, a.lo * b.lo, tol)
            pick = (a.lo / b.hi, a.hi / b.lo) if case is not GhCase.CASE_II \
                else (a.hi / b.lo, a.lo / b.hi)
        else:  # 0 in a: result does not depend on b.lo
            pick = (a.lo / b.hi, a.hi / b.hi)
            case = GhCase.CASE_I
    # On width ties the two picks nearly coincide; order them so roundoff
    # cannot produce an inverted interval.
    return Interval(min(pick), max(pick)), case


def _div_case(i_side, ii_side, tol):
    """CASE_I when i_side dominates, CASE_II when ii_side does, BOTH on ties."""
    if abs(i_side - ii_side) <= tol:
        return GhCase.BOTH
    return GhCase.CASE_I if i_side > ii_side else GhCase.CASE_II


def g_div_fuzzy(u, v):
    """Levelwise generalized division of fuzzy numbers.

    Exists when the levelwise quotients stack into a fuzzy number and all
    levels agree on the case.  Returns (FuzzyNumber, GhCase) or NotExists.
    """
    require_same_grid(u, v)
    quotients = [g_div_interval(Interval(ul, uu), Interval(vl, vu))
                 for ul, uu, vl, vu in zip(u.lower, u.upper, v.lower, v.upper)]
    q_lo = np.array([q.lo for q, _ in quotients])
    q_hi = np.array([q.hi for q, _ in quotients])
    cases = [c for _, c in quotients]
    has_i = any(c is GhCase.CASE_I for c in cases)
    has_ii = any(c is GhCase.CASE_II for c in cases)
    if has_i and has_ii:
        return NotExists("mixed_cases")
    tol = validity_tolerance(q_lo, q_hi)
    if np.any(np.diff(q_lo) < -tol):
        return NotExists("lower_not_monotone")
    if np.any(np.diff(q_hi) > tol):
        return NotExists("upper_not_monotone")
    case = GhCase.CASE_I if has_i else (GhCase.CASE_II if has_ii else GhCase.BOTH)
    return FuzzyNumber(u.grid, q_lo, q_hi), case


def approx_g_div(u, v):
    """Approximate division: backward min/max sweep over levelwise quotients.

    Always yields a proper fuzzy number; identical to g_div_fuzzy whenever
    the exact division exists.
    """
    require_same_grid(u, v)
    q_lo = np.empty(len(u.grid))
    q_hi = np.empty(len(u.grid))
    for i, (ul, uu, vl, vu) in enumerate(zip(u.lower, u.upper, v.lower, v.upper)):
        q, _ = g_div_interval(Interval(ul, uu), Interval(vl, vu))
        q_lo[i] = q.lo
        q_hi[i] = q.hi
    z_lo = np.empty_like(q_lo)
    z_hi = np.empty_like(q_hi)
    z_lo[-1] = q_lo[-1]
    z_hi[-1] = q_hi[-1]
    for k in range(q_lo.size - 2, -1, -1):
        z_lo[k] = min(z_lo[k + 1], q_lo[k])
        z_hi[k] = max(z_hi[k + 1], q_hi[k])
    return FuzzyNumber(u.grid, z_lo, z_hi)
