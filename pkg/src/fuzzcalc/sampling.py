"""Real functions sampled on a uniform abscissa grid."""

import numpy as np

from .errors import DegenerateGrid, RangeError


class SampledFunction:
    """Values f(a + k*h) for k = 0..M on a uniform grid with step h > 0."""

    def __init__(self, a, h, values):
        values = np.asarray(values, dtype=float)
        if values.ndim != 1 or values.size < 2:
            raise DegenerateGrid("need at least 2 samples")
        if not h > 0:
            raise DegenerateGrid("step h must be positive")
        self.a = float(a)
        self.h = float(h)
        self.values = values
        self.values.flags.writeable = False

    @classmethod
    def from_callable(cls, fn, a, b, m):
        """Sample fn at m+1 equispaced points on [a, b]."""
        ts = np.linspace(a, b, m + 1)
        vals = np.asarray([fn(t) for t in ts], dtype=float)
        return cls(a, (b - a) / m, vals)

    def __len__(self):
        return self.values.size

    @property
    def times(self):
        return self.a + self.h * np.arange(self.values.size)

    def index_of(self, t, tol=1e-9):
        """Grid index of abscissa t; RangeError if t is off-grid."""
        k = round((t - self.a) / self.h)
        if k < 0 or k >= self.values.size or abs(self.a + k * self.h - t) > tol * (1 + abs(t)):
            raise RangeError(f"abscissa {t} is not on the sample grid")
        return int(k)

    def check_index(self, k):
        if not 0 <= k < self.values.size:
            raise RangeError(f"index {k} outside 0..{self.values.size - 1}")
        return int(k)
