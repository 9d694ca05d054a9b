"""Discrete fuzzy sets and fuzzy numbers represented by alpha-cut endpoints.

A fuzzy number is stored as two endpoint sequences (lower, upper) over a
shared grid of membership levels 0 = alpha_0 < ... < alpha_N = 1.  All
arithmetic is levelwise interval arithmetic; off-grid cuts and membership
grades are obtained by linear interpolation on the endpoint curves.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import GridMismatch, InvalidResult, OrderingError

# Relative scale of the validity tolerance: violations of nestedness or
# lower <= upper below tau are treated as float noise and clamped.
TOL_SCALE = 1e-9

# Largest endpoint movement the nesting repair in zadeh_extend may apply.
REPAIR_TOL_SCALE = 1e-6


def validity_tolerance(*arrays):
    """tau = 1e-9 * (1 + max absolute endpoint) over the given arrays."""
    m = 0.0
    for arr in arrays:
        arr = np.asarray(arr, dtype=float)
        if arr.size:
            m = max(m, float(np.max(np.abs(arr))))
    return TOL_SCALE * (1.0 + m)


class AlphaGrid:
    """Strictly increasing membership levels with alpha_0 = 0 and alpha_N = 1."""

    def __init__(self, levels):
        levels = np.asarray(levels, dtype=float)
        if levels.ndim != 1 or levels.size < 2:
            raise ValueError("an alpha grid needs at least 2 levels")
        if levels[0] != 0.0 or levels[-1] != 1.0:
            raise ValueError("alpha grid must start at 0 and end at 1")
        if np.any(np.diff(levels) <= 0):
            raise ValueError("alpha levels must be strictly increasing")
        self.levels = levels
        self.levels.flags.writeable = False

    @classmethod
    def uniform(cls, n=100):
        """Uniform grid with n subdivisions (n+1 levels)."""
        return cls(np.linspace(0.0, 1.0, n + 1))

    def __len__(self):
        return self.levels.size

    def __eq__(self, other):
        return isinstance(other, AlphaGrid) and np.array_equal(self.levels, other.levels)

    def __hash__(self):
        return hash(self.levels.tobytes())

    def __repr__(self):
        return f"AlphaGrid({self.levels.size} levels)"


DEFAULT_GRID = AlphaGrid.uniform(100)


@dataclass(frozen=True)
class Interval:
    """Compact real interval [lo, hi]."""

    lo: float
    hi: float

    def __post_init__(self):
        if not self.lo <= self.hi:
            raise OrderingError(f"interval endpoints out of order: [{self.lo}, {self.hi}]")

    @property
    def midpoint(self):
        return 0.5 * (self.lo + self.hi)

    @property
    def half_width(self):
        return 0.5 * (self.hi - self.lo)

    @property
    def width(self):
        return self.hi - self.lo

    def __iter__(self):
        return iter((self.lo, self.hi))


@dataclass(frozen=True)
class Box:
    """Cartesian product of intervals."""

    components: tuple

    def __post_init__(self):
        comps = tuple(self.components)
        if not comps:
            raise ValueError("a box needs at least one component")
        if not all(isinstance(c, Interval) for c in comps):
            raise TypeError("box components must be Interval instances")
        object.__setattr__(self, "components", comps)

    def __len__(self):
        return len(self.components)

    def __iter__(self):
        return iter(self.components)


@dataclass(frozen=True)
class ValidityReport:
    """Outcome of the stacking check on raw endpoint sequences.

    violations holds (index, kind, magnitude) triples with
    kind in {"crossing", "lower_not_monotone", "upper_not_monotone"}.
    """

    is_valid: bool
    violations: tuple = field(default_factory=tuple)


def fn_validate(lower, upper, tol=None):
    """Check that (lower, upper) endpoint sequences describe a fuzzy number.

    Reports every index where lower > upper (crossing), lower decreases or
    upper increases beyond the tolerance.  Returns a ValidityReport; never
    raises.
    """
    lower = np.asarray(lower, dtype=float)
    upper = np.asarray(upper, dtype=float)
    if lower.shape != upper.shape or lower.ndim != 1:
        raise ValueError("lower/upper must be 1-d sequences of equal length")
    if tol is None:
        tol = validity_tolerance(lower, upper)
    violations = []
    cross = lower - upper
    for i in np.nonzero(cross > tol)[0]:
        violations.append((int(i), "crossing", float(cross[i])))
    dl = -np.diff(lower)  # positive where lower decreases
    for i in np.nonzero(dl > tol)[0]:
        violations.append((int(i) + 1, "lower_not_monotone", float(dl[i])))
    du = np.diff(upper)  # positive where upper increases
    for i in np.nonzero(du > tol)[0]:
        violations.append((int(i) + 1, "upper_not_monotone", float(du[i])))
    return ValidityReport(is_valid=not violations, violations=tuple(violations))


class FuzzyNumber:
    """Discretized fuzzy number: nested alpha-cut endpoints over an AlphaGrid.

    Sub-tolerance monotonicity/crossing violations are clamped silently;
    anything larger raises InvalidResult.
    """

    __slots__ = ("grid", "lower", "upper")

    def __init__(self, grid, lower, upper):
        lower = np.array(lower, dtype=float)
        upper = np.array(upper, dtype=float)
        if lower.shape != (len(grid),) or upper.shape != (len(grid),):
            raise ValueError("endpoint sequences must match the grid length")
        tol = validity_tolerance(lower, upper)
        report = fn_validate(lower, upper, tol=tol)
        if not report.is_valid:
            raise InvalidResult(f"not a fuzzy number: {report.violations[:3]}")
        # Clamp float noise so downstream exact comparisons behave.
        lower = np.maximum.accumulate(lower)
        upper = np.minimum.accumulate(upper)
        np.minimum(lower, upper, out=lower)
        lower.flags.writeable = False
        upper.flags.writeable = False
        self.grid = grid
        self.lower = lower
        self.upper = upper

    def __repr__(self):
        return (f"FuzzyNumber(support=[{self.lower[0]:g}, {self.upper[0]:g}], "
                f"core=[{self.lower[-1]:g}, {self.upper[-1]:g}])")

    def __eq__(self, other):
        return (isinstance(other, FuzzyNumber) and self.grid == other.grid
                and np.array_equal(self.lower, other.lower)
                and np.array_equal(self.upper, other.upper))

    def __hash__(self):
        return hash((self.grid, self.lower.tobytes(), self.upper.tobytes()))

    @property
    def is_crisp(self):
        return bool(np.all(self.lower == self.upper))


def require_same_grid(u, v):
    if u.grid != v.grid:
        raise GridMismatch("operands live on different alpha grids")


def fn_from_trapezoid(a, b, c, d, grid=DEFAULT_GRID):
    """Trapezoidal fuzzy number <a, b, c, d>; b = c gives a triangle."""
    if not a <= b <= c <= d:
        raise OrderingError(f"need a <= b <= c <= d, got {(a, b, c, d)}")
    alphas = grid.levels
    lower = a + alphas * (b - a)
    upper = d + alphas * (c - d)
    return FuzzyNumber(grid, lower, upper)


def fn_from_triangular(a, b, c, grid=DEFAULT_GRID):
    """Triangular fuzzy number <a, b, c>."""
    return fn_from_trapezoid(a, b, b, c, grid)


def fn_crisp(x, grid=DEFAULT_GRID):
    """Width-zero fuzzy number representing the real x."""
    return fn_from_trapezoid(x, x, x, x, grid)


def fn_alpha_cut(u, alpha):
    """Cut [u]^alpha as an Interval; off-grid alpha interpolates linearly."""
    if not 0.0 <= alpha <= 1.0:
        raise ValueError("alpha must lie in [0, 1]")
    levels = u.grid.levels
    lo = float(np.interp(alpha, levels, u.lower))
    hi = float(np.interp(alpha, levels, u.upper))
    return Interval(lo, min(hi, lo) if hi < lo else hi)


def fn_membership(u, x):
    """Membership grade of x: the highest alpha whose cut contains x."""
    x = float(x)
    if x < u.lower[0] or x > u.upper[0]:
        return 0.0
    if u.lower[-1] <= x <= u.upper[-1]:
        return 1.0
    levels = u.grid.levels
    if x < u.lower[-1]:
        # Invert the nondecreasing lower endpoint curve: largest alpha
        # with lower(alpha) <= x.
        i = int(np.searchsorted(u.lower, x, side="right"))
        lo0, lo1 = u.lower[i - 1], u.lower[i]
        if lo1 == lo0:
            return float(levels[i - 1])
        return float(levels[i - 1] + (x - lo0) / (lo1 - lo0) * (levels[i] - levels[i - 1]))
    # Symmetric on the nonincreasing upper curve: largest alpha with
    # upper(alpha) >= x.  rev is nondecreasing in reversed-level order.
    rev = u.upper[::-1]
    rlev = levels[::-1]
    i = int(np.searchsorted(rev, x, side="left"))
    if rev[i] == x:
        return float(rlev[i])
    hi0, hi1 = rev[i - 1], rev[i]
    return float(rlev[i - 1] + (x - hi0) / (hi1 - hi0) * (rlev[i] - rlev[i - 1]))


def fn_arith(u, v, op, scalar=None):
    """Levelwise interval arithmetic.

    op is one of "add", "sub_minkowski", "mul", "scale"; "scale" uses the
    scalar keyword and ignores v.
    """
    if op == "scale":
        if scalar is None:
            raise ValueError("scale needs the scalar keyword")
        lam = float(scalar)
        if lam >= 0:
            return FuzzyNumber(u.grid, lam * u.lower, lam * u.upper)
        return FuzzyNumber(u.grid, lam * u.upper, lam * u.lower)
    require_same_grid(u, v)
    if op == "add":
        return FuzzyNumber(u.grid, u.lower + v.lower, u.upper + v.upper)
    if op == "sub_minkowski":
        return FuzzyNumber(u.grid, u.lower - v.upper, u.upper - v.lower)
    if op == "mul":
        products = np.stack([u.lower * v.lower, u.lower * v.upper,
                             u.upper * v.lower, u.upper * v.upper])
        return FuzzyNumber(u.grid, products.min(axis=0), products.max(axis=0))
    raise ValueError(f"unknown op {op!r}")


def fn_distance(u, v):
    """Supremum metric d(u, v) over the grid levels."""
    require_same_grid(u, v)
    return float(max(np.max(np.abs(u.lower - v.lower)),
                     np.max(np.abs(u.upper - v.upper))))


def resample(u, grid):
    """Re-express u on another grid by linear interpolation of the cuts."""
    old = u.grid.levels
    new = grid.levels
    return FuzzyNumber(grid, np.interp(new, old, u.lower), np.interp(new, old, u.upper))


def zadeh_extend(phi, u, samples_per_cut=65):
    """Image of u under phi by the extension principle (levelwise min/max).

    Each cut is sampled at samples_per_cut equispaced points including both
    endpoints; exact for monotone and unimodal phi, a documented
    approximation for oscillatory phi.
    """
    if samples_per_cut < 2:
        raise ValueError("need at least 2 samples per cut")
    n = len(u.grid)
    lower = np.empty(n)
    upper = np.empty(n)
    frac = np.linspace(0.0, 1.0, samples_per_cut)
    resolution = 0.0
    for i in range(n):
        xs = u.lower[i] + frac * (u.upper[i] - u.lower[i])
        try:
            ys = np.asarray(phi(xs), dtype=float)
            if ys.shape != xs.shape:
                raise TypeError
        except (TypeError, ValueError):
            ys = np.asarray([phi(x) for x in xs], dtype=float)
        lower[i] = ys.min()
        upper[i] = ys.max()
        if ys.size > 1:
            resolution = max(resolution, float(np.max(np.abs(np.diff(ys)))))
    # Enforce nestedness from the core outward.  Endpoints estimated by
    # sampling carry error up to one adjacent sample increment, so the
    # repair may move them by that much; anything larger means phi
    # oscillates too fast for the sample density.
    rep_lower = np.minimum.accumulate(lower[::-1])[::-1]
    rep_upper = np.maximum.accumulate(upper[::-1])[::-1]
    moved = max(np.max(np.abs(rep_lower - lower)), np.max(np.abs(rep_upper - upper)))
    tol_repair = (REPAIR_TOL_SCALE * (1.0 + float(np.max(np.abs([lower, upper]))))
                  + resolution)
    if moved > tol_repair:
        raise InvalidResult(f"nesting repair moved an endpoint by {moved:g}")
    return FuzzyNumber(u.grid, rep_lower, rep_upper)


def convexity_check(membership):
    """True iff sampled membership values are quasi-concave (unimodal).

    Equivalent to every super-level set of the sample sequence being a
    contiguous index range.
    """
    y = membership.values
    peak = int(np.argmax(y))
    rising = np.all(np.diff(y[:peak + 1]) >= 0)
    falling = np.all(np.diff(y[peak:]) <= 0)
    return bool(rising and falling)


# ---------------------------------------------------------------------------
# Discrete fuzzy sets (finite support)

class DiscreteFuzzySet:
    """Finite-support fuzzy set: mapping from labels to grades in [0, 1]."""

    def __init__(self, entries):
        entries = dict(entries)
        for k, g in entries.items():
            if not 0.0 <= g <= 1.0:
                raise ValueError(f"grade {g} for {k!r} outside [0, 1]")
        self.entries = entries

    def grade(self, key):
        return self.entries.get(key, 0.0)

    def __eq__(self, other):
        return isinstance(other, DiscreteFuzzySet) and self.entries == other.entries

    def __repr__(self):
        return f"DiscreteFuzzySet({self.entries!r})"


def ds_combine(a, b, op):
    """Pointwise combination over the union of supports.

    op in {"union", "intersection", "alg_sum", "alg_prod", "difference"};
    missing keys read as grade 0.
    """
    keys = set(a.entries) | set(b.entries)
    rules = {
        "union": lambda x, y: max(x, y),
        "intersection": lambda x, y: min(x, y),
        "alg_sum": lambda x, y: x + y - x * y,
        "alg_prod": lambda x, y: x * y,
        "difference": lambda x, y: min(x, 1.0 - y),
    }
    if op not in rules:
        raise ValueError(f"unknown op {op!r}")
    rule = rules[op]
    return DiscreteFuzzySet({k: rule(a.grade(k), b.grade(k)) for k in keys})


def ds_complement(a):
    """Pointwise 1 - grade."""
    return DiscreteFuzzySet({k: 1.0 - g for k, g in a.entries.items()})


def ds_alpha_cut(a, alpha, strict=False):
    """Labels with grade >= alpha (or > alpha when strict)."""
    if not 0.0 <= alpha <= 1.0:
        raise ValueError("alpha must lie in [0, 1]")
    if strict:
        return {k for k, g in a.entries.items() if g > alpha}
    return {k for k, g in a.entries.items() if g >= alpha}


def ds_cartesian(a, b):
    """Product set over label pairs, graded by the min of the factors."""
    return DiscreteFuzzySet({(x, y): min(gx, gy)
                             for x, gx in a.entries.items()
                             for y, gy in b.entries.items()})


def ds_cardinality(a):
    """Sum of grades."""
    return float(sum(a.entries.values()))
