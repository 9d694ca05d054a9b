"""Calculus of fuzzy-valued functions of one real variable.

A FuzzyFunction is a time series of FuzzyNumbers over one alpha grid.
Differentiation works per endpoint curve with form (i)/(ii) detection and
switching-point reporting; integration (classical and fractional) is
levelwise on the endpoint curves.
"""

from dataclasses import dataclass

import numpy as np

from .core import FuzzyNumber, fn_validate, validity_tolerance
from .errors import DegenerateGrid, RangeError, SwitchingPointError
from .fractional import rl_integral
from .sampling import SampledFunction

FORM_I = "form_i"
FORM_II = "form_ii"
UNDEFINED = "undefined"


class FuzzyFunction:
    """FuzzyNumber values sampled at t = a + k*h, k = 0..M, shared grid."""

    def __init__(self, a, h, values):
        values = list(values)
        if len(values) < 2:
            raise DegenerateGrid("need at least 2 time samples")
        if not h > 0:
            raise DegenerateGrid("step h must be positive")
        grid = values[0].grid
        for v in values[1:]:
            if v.grid != grid:
                raise DegenerateGrid("all values must share one alpha grid")
        self.a = float(a)
        self.h = float(h)
        self.grid = grid
        # Endpoint curves stacked as [time, level] for vectorized calculus.
        self.lower = np.stack([v.lower for v in values])
        self.upper = np.stack([v.upper for v in values])
        self.lower.flags.writeable = False
        self.upper.flags.writeable = False

    @classmethod
    def from_callable(cls, fn, a, b, m):
        """Sample a FuzzyNumber-valued fn at m+1 equispaced points of [a, b]."""
        ts = np.linspace(a, b, m + 1)
        return cls(a, (b - a) / m, [fn(t) for t in ts])

    def __len__(self):
        return self.lower.shape[0]

    @property
    def times(self):
        return self.a + self.h * np.arange(len(self))

    def value(self, k):
        return FuzzyNumber(self.grid, self.lower[k], self.upper[k])

    def check_index(self, k):
        if not 0 <= k < len(self):
            raise RangeError(f"index {k} outside 0..{len(self) - 1}")
        return int(k)


@dataclass(frozen=True)
class DerivativeForm:
    """Per-sample differentiability form and the detected switching points."""

    forms: tuple
    switching_points: tuple


def gh_derivative_series(F):
    """Differentiate a FuzzyFunction; returns (derivative, DerivativeForm).

    Endpoint curves are differentiated per level (central differences
    inside, second-order one-sided at the ends).  At each time the pairing
    (lower', upper') gives form (i) if it stacks into a fuzzy number, the
    swapped pairing gives form (ii); when both pairings are valid the
    neighboring form is inherited, and when neither is, the sample is
    marked undefined and a repaired value is stored.  Switching points are
    reported at midpoints of intervals where the form flips.
    """
    if len(F) < 3:
        raise DegenerateGrid("need at least 3 time samples to differentiate")
    d_lo = np.gradient(F.lower, F.h, axis=0, edge_order=2)
    d_hi = np.gradient(F.upper, F.h, axis=0, edge_order=2)
    tol = validity_tolerance(d_lo, d_hi)

    raw_forms = []
    for k in range(len(F)):
        ok_i = fn_validate(d_lo[k], d_hi[k], tol=tol).is_valid
        ok_ii = fn_validate(d_hi[k], d_lo[k], tol=tol).is_valid
        if ok_i and ok_ii:
            raw_forms.append("both")
        elif ok_i:
            raw_forms.append(FORM_I)
        elif ok_ii:
            raw_forms.append(FORM_II)
        else:
            raw_forms.append(UNDEFINED)

    forms = _resolve_ambiguous(raw_forms)

    values = []
    for k, form in enumerate(forms):
        if form == FORM_I:
            lo, hi = d_lo[k], d_hi[k]
        elif form == FORM_II:
            lo, hi = d_hi[k], d_lo[k]
        else:
            # Not gH-differentiable here; store a repaired stand-in so the
            # series stays representable.
            lo = np.minimum(d_lo[k], d_hi[k])
            hi = np.maximum(d_lo[k], d_hi[k])
            lo = np.maximum.accumulate(lo)
            hi = np.minimum.accumulate(hi)
            lo = np.minimum(lo, hi)
        values.append(FuzzyNumber(F.grid, lo, hi))

    switches = []
    times = F.times
    for k in range(len(forms) - 1):
        a, b = forms[k], forms[k + 1]
        if UNDEFINED in (a, b):
            continue
        if a != b:
            switches.append(0.5 * (times[k] + times[k + 1]))

    deriv = FuzzyFunction(F.a, F.h, values)
    return deriv, DerivativeForm(tuple(forms), tuple(switches))


def _resolve_ambiguous(raw_forms):
    """Replace 'both' tags by the nearest defined neighbor's form.

    Prefers the previous sample, then the next; an all-ambiguous series
    (crisp-width derivative) defaults to form (i).
    """
    forms = list(raw_forms)
    n = len(forms)
    for k in range(n):
        if forms[k] != "both":
            continue
        chosen = None
        for j in range(k - 1, -1, -1):
            if forms[j] in (FORM_I, FORM_II):
                chosen = forms[j]
                break
        if chosen is None:
            for j in range(k + 1, n):
                if raw_forms[j] in (FORM_I, FORM_II):
                    chosen = raw_forms[j]
                    break
        forms[k] = chosen if chosen is not None else FORM_I
    return forms


def fuzzy_riemann_integral(F, from_index, to_index):
    """Levelwise trapezoidal integral of F over [t_from, t_to]."""
    i = F.check_index(from_index)
    j = F.check_index(to_index)
    if i > j:
        raise RangeError("integration range reversed")
    if i == j:
        z = np.zeros(len(F.grid))
        return FuzzyNumber(F.grid, z, z.copy())
    lo = np.trapezoid(F.lower[i:j + 1], dx=F.h, axis=0)
    hi = np.trapezoid(F.upper[i:j + 1], dx=F.h, axis=0)
    return FuzzyNumber(F.grid, lo, hi)


def fuzzy_rl_integral(F, q, t_index):
    """Fractional integral of order q, levelwise per endpoint curve."""
    n = F.check_index(t_index)
    if not 0.0 < q <= 1.0:
        raise RangeError("order q must lie in (0, 1]")
    nlev = len(F.grid)
    lo = np.empty(nlev)
    hi = np.empty(nlev)
    for i in range(nlev):
        lo[i] = rl_integral(SampledFunction(F.a, F.h, F.lower[:, i]), q, n)
        hi[i] = rl_integral(SampledFunction(F.a, F.h, F.upper[:, i]), q, n)
    return FuzzyNumber(F.grid, lo, hi)


def fuzzy_frac_derivative(F, q, t_index):
    """Fractional gH-derivative of order q in (0,1) at t; returns (value, form).

    Fractional integral of order 1-q applied to the gH-derivative endpoint
    curves; requires F switching-free on [a, t].  The form is inherited
    from the pointwise gH-derivative.
    """
    n = F.check_index(t_index)
    if not 0.0 < q < 1.0:
        raise RangeError("order q must lie in (0, 1)")
    deriv, info = gh_derivative_series(F)
    t = F.a + n * F.h
    inside = [s for s in info.switching_points if s < t]
    if inside:
        raise SwitchingPointError(
            f"switching point at t={inside[0]:g} inside the integration range")
    if n == 0:
        z = np.zeros(len(F.grid))
        return FuzzyNumber(F.grid, z, z.copy()), info.forms[0]
    return fuzzy_rl_integral(deriv, 1.0 - q, n), info.forms[n]
