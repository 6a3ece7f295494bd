"""Truncated Laurent series, two-variable series, and sparse coefficient tensors.

The window convention for :class:`LaurentSeries` is one-sided: a series
knows its coefficients exactly for exponents in [lo, hi], every exponent
above hi is structurally zero (hi is the honest top degree), and exponents
below lo are unknown (lost to truncation).  Products therefore carry the
tightest sound window

    [max(a.lo + b.hi, a.hi + b.lo),  a.hi + b.hi],

which is exactly the range of coefficients determined by the two inputs.

Coefficients are duck-typed: anything with +, *, unary -, == and a falsy
zero works (Fraction, ParamPoly, and the rational functions used by the
quantum-curve module).  Absent coefficients are reported as the integer 0.
"""

from __future__ import annotations

from fractions import Fraction

from .poly import ParamPoly

__all__ = ["LaurentSeries", "BiSeries", "SparseTensor", "series_eq_on_overlap"]


class WindowError(ValueError):
    """A coefficient outside the sound window was requested."""


class LaurentSeries:
    __slots__ = ("var", "coeffs", "lo", "hi")

    def __init__(self, var, coeffs, lo, hi):
        assert lo <= hi + 1
        self.var = var
        self.coeffs = {e: c for e, c in coeffs.items() if c and lo <= e <= hi}
        self.lo = lo
        self.hi = hi

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, var, lo, hi=0):
        return cls(var, {}, lo, hi)

    @classmethod
    def monomial(cls, var, exponent, coeff, lo):
        return cls(var, {exponent: coeff}, lo, exponent)

    @classmethod
    def one(cls, var, lo):
        return cls.monomial(var, 0, Fraction(1), lo)

    # -- access ------------------------------------------------------------

    def coeff(self, e):
        if e < self.lo:
            raise WindowError(f"exponent {e} below window lo={self.lo} of series in {self.var}")
        return self.coeffs.get(e, 0)

    def support(self):
        return sorted(self.coeffs)

    def is_zero(self):
        return not self.coeffs

    def _check_var(self, other):
        if self.var != other.var:
            raise ValueError(f"variable mismatch: {self.var} vs {other.var}")

    # -- linear operations ---------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        self._check_var(other)
        lo = max(self.lo, other.lo)
        hi = max(self.hi, other.hi)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            r = out.get(e)
            out[e] = c if r is None else r + c
        return LaurentSeries(self.var, out, lo, hi)

    def __neg__(self):
        return LaurentSeries(self.var, {e: -c for e, c in self.coeffs.items()}, self.lo, self.hi)

    def __sub__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return self + (-other)

    def scale(self, factor):
        if not factor:
            return LaurentSeries.zero(self.var, self.lo, self.hi)
        return LaurentSeries(self.var, {e: factor * c for e, c in self.coeffs.items()}, self.lo, self.hi)

    def shift(self, k):
        """Multiply by var^k."""
        return LaurentSeries(self.var, {e + k: c for e, c in self.coeffs.items()}, self.lo + k, self.hi + k)

    def sub_neg(self):
        """Substitute var -> -var."""
        return LaurentSeries(
            self.var,
            {e: (c if e % 2 == 0 else -c) for e, c in self.coeffs.items()},
            self.lo,
            self.hi,
        )

    def rename(self, var):
        return LaurentSeries(var, dict(self.coeffs), self.lo, self.hi)

    def truncate(self, lo):
        if lo < self.lo:
            raise WindowError("cannot widen a window by truncation")
        return LaurentSeries(self.var, {e: c for e, c in self.coeffs.items() if e >= lo}, lo, self.hi)

    def derivative(self):
        out = {}
        for e, c in self.coeffs.items():
            if e:
                out[e - 1] = e * c
        return LaurentSeries(self.var, out, self.lo - 1, self.hi - 1)

    # -- multiplicative structure -------------------------------------------

    def __mul__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        self._check_var(other)
        lo = max(self.lo + other.hi, self.hi + other.lo)
        hi = self.hi + other.hi
        out = {}
        for i, a in self.coeffs.items():
            for j, b in other.coeffs.items():
                e = i + j
                if e < lo:
                    continue
                p = a * b
                r = out.get(e)
                out[e] = p if r is None else r + p
        return LaurentSeries(self.var, out, lo, hi)

    def inverse(self):
        """Multiplicative inverse of a series with rational-unit leading term.

        If self is known on [lo, hi] with top coefficient a nonzero rational
        constant, the inverse is exact on [lo - 2*hi, -hi].
        """
        top = self.coeffs.get(self.hi, 0)
        c = _as_fraction(top)
        if c is None or c == 0:
            raise ValueError("leading term is not an invertible rational constant")
        h = self.hi
        depth = h - self.lo
        inv_top = Fraction(1) / c
        out = {-h: inv_top}
        for d in range(1, depth + 1):
            # coefficient of var^(-h-d) from (self * out) = 1
            acc = 0
            for j in range(1, d + 1):
                a = self.coeffs.get(h - j)
                b = out.get(-h - (d - j))
                if a is None or b is None or not a or not b:
                    continue
                acc = acc + a * b
            if acc:
                out[-h - d] = -inv_top * acc
        return LaurentSeries(self.var, out, self.lo - 2 * h, -h)

    def sqrt(self):
        """Square root of a series with constant term 1, branch sqrt(1) = +1."""
        if self.hi != 0 or self.coeffs.get(0, 0) != 1:
            raise ValueError("sqrt requires constant term 1 (top exponent 0)")
        out = {0: Fraction(1)}
        half = Fraction(1, 2)
        for e in range(-1, self.lo - 1, -1):
            acc = self.coeffs.get(e, 0)
            for j in range(e + 1, 0):
                a = out.get(j)
                b = out.get(e - j)
                if a is None or b is None:
                    continue
                acc = acc - a * b
            acc = half * acc
            if acc:
                out[e] = acc
        return LaurentSeries(self.var, out, self.lo, 0)

    def residue(self):
        """Coefficient of var^(-1); errors if -1 lies outside the window."""
        if self.lo > -1:
            raise WindowError("residue exponent -1 is outside the window")
        if self.hi < -1:
            return 0
        return self.coeffs.get(-1, 0)

    def __repr__(self):
        if not self.coeffs:
            return f"<0 on [{self.lo},{self.hi}] in {self.var}>"
        bits = []
        for e in sorted(self.coeffs, reverse=True):
            bits.append(f"({self.coeffs[e]!r})*{self.var}^{e}")
        return " + ".join(bits) + f"  [window {self.lo}..{self.hi}]"


def _as_fraction(x):
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, ParamPoly):
        try:
            return x.const_value()
        except ValueError:
            return None
    return None


def series_eq_on_overlap(a, b):
    """Compare two series coefficientwise on the intersection of their windows."""
    a._check_var(b)
    lo = max(a.lo, b.lo)
    hi = max(a.hi, b.hi)
    for e in range(lo, hi + 1):
        if a.coeff(e) != b.coeff(e):
            return False
    return True


class BiSeries:
    """Truncated two-variable series with a rectangular window.

    Entries live at integer exponent pairs (i, j) for the two named
    variables.  When ``min_total`` is set, entries with i + j < min_total
    are additionally declared unknown (used by the anti-diagonal division
    of the closed-form generating series, whose sound region is a
    triangle).
    """

    __slots__ = ("vars", "coeffs", "window1", "window2", "min_total")

    def __init__(self, vars, coeffs, window1, window2, min_total=None):
        self.vars = vars
        self.window1 = window1
        self.window2 = window2
        self.min_total = min_total
        lo1, hi1 = window1
        lo2, hi2 = window2
        self.coeffs = {
            (i, j): c
            for (i, j), c in coeffs.items()
            if c and lo1 <= i <= hi1 and lo2 <= j <= hi2
            and (min_total is None or i + j >= min_total)
        }

    def known(self, i, j):
        lo1, hi1 = self.window1
        lo2, hi2 = self.window2
        if not (lo1 <= i <= hi1 and lo2 <= j <= hi2):
            return False
        return self.min_total is None or i + j >= self.min_total

    def coeff(self, i, j):
        if not self.known(i, j):
            raise WindowError(f"({i},{j}) outside window of BiSeries in {self.vars}")
        return self.coeffs.get((i, j), 0)

    def swap(self):
        return BiSeries(
            (self.vars[1], self.vars[0]),
            {(j, i): c for (i, j), c in self.coeffs.items()},
            self.window2,
            self.window1,
            self.min_total,
        )

    def __add__(self, other):
        assert self.vars == other.vars
        w1 = (max(self.window1[0], other.window1[0]), min(self.window1[1], other.window1[1]))
        w2 = (max(self.window2[0], other.window2[0]), min(self.window2[1], other.window2[1]))
        mt = self.min_total
        if other.min_total is not None:
            mt = other.min_total if mt is None else max(mt, other.min_total)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            r = out.get(k)
            out[k] = c if r is None else r + c
        return BiSeries(self.vars, out, w1, w2, mt)

    def __neg__(self):
        return BiSeries(self.vars, {k: -c for k, c in self.coeffs.items()},
                        self.window1, self.window2, self.min_total)

    def __sub__(self, other):
        return self + (-other)

    def is_antisymmetric_under_swap(self):
        """Check f(x, w) == -f(w, x) on the symmetric part of the window."""
        lo = max(self.window1[0], self.window2[0])
        hi = min(self.window1[1], self.window2[1])
        for i in range(lo, hi + 1):
            for j in range(lo, hi + 1):
                if self.min_total is not None and i + j < self.min_total:
                    continue
                if self.coeffs.get((i, j), 0) != -self.coeffs.get((j, i), 0):
                    return False
        return True


class SparseTensor:
    """Arity-n sparse array of exact coefficients keyed by exponent tuples."""

    __slots__ = ("arity", "coeffs")

    def __init__(self, arity, coeffs=None):
        self.arity = arity
        self.coeffs = {}
        if coeffs:
            for k, c in coeffs.items():
                if c:
                    assert len(k) == arity
                    self.coeffs[k] = c

    def get(self, key):
        return self.coeffs.get(tuple(key), 0)

    def add_to(self, key, value):
        key = tuple(key)
        r = self.coeffs.get(key)
        r = value if r is None else r + value
        if r:
            self.coeffs[key] = r
        else:
            self.coeffs.pop(key, None)

    def map_values(self, f):
        return SparseTensor(self.arity, {k: f(c) for k, c in self.coeffs.items()})

    def permuted(self, perm):
        """Relabel slots: new key[i] = old key[perm[i]]."""
        return SparseTensor(self.arity, {tuple(k[p] for p in perm): c for k, c in self.coeffs.items()})

    def is_symmetric(self):
        from itertools import permutations

        for perm in permutations(range(self.arity)):
            for k, c in self.coeffs.items():
                if self.coeffs.get(tuple(k[p] for p in perm), 0) != c:
                    return False
        return True

    def __eq__(self, other):
        if not isinstance(other, SparseTensor):
            return NotImplemented
        return self.arity == other.arity and self.coeffs == other.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def support(self):
        return sorted(self.coeffs)

    def __repr__(self):
        items = ", ".join(f"{k}: {c!r}" for k, c in sorted(self.coeffs.items()))
        return f"SparseTensor({self.arity}, {{{items}}})"
