"""Sparse exact-rational functionals on the index set Gamma.

A Func maps element ids to nonzero Fractions.  It plays the ell_1 side of
the duality: evaluation functionals e*_gamma, dual basis vectors d*_gamma,
BD-functionals c*_gamma and net payloads b* are all Funcs.  Zero
coefficients are never stored.
"""

from fractions import Fraction


def frac_str(q):
    """Canonical "p/q" rendering, q > 0 and gcd(p, q) = 1."""
    q = Fraction(q)
    return "%d/%d" % (q.numerator, q.denominator)


def parse_frac(s):
    if isinstance(s, str):
        if "/" in s:
            num, den = s.split("/")
            return Fraction(int(num), int(den))
        return Fraction(int(s))
    return Fraction(s)


class Func(dict):
    """Finitely supported map id -> nonzero Fraction."""

    __slots__ = ("role",)

    def __init__(self, entries=(), role="generic"):
        super().__init__()
        self.role = role
        if isinstance(entries, dict):
            entries = entries.items()
        for k, v in entries:
            self.iadd(k, v)

    def __missing__(self, key):
        return Fraction(0)

    def iadd(self, key, coef):
        """Add coef at key, stripping a resulting zero."""
        v = self.get(key, Fraction(0)) + coef
        if v == 0:
            self.pop(key, None)
        else:
            dict.__setitem__(self, key, Fraction(v))

    def __setitem__(self, key, value):
        value = Fraction(value)
        if value == 0:
            self.pop(key, None)
        else:
            dict.__setitem__(self, key, value)

    def copy(self, role=None):
        out = Func(role=role or self.role)
        for k, v in self.items():
            dict.__setitem__(out, k, v)
        return out

    def accumulate(self, other, scalar=Fraction(1)):
        """In-place self += scalar * other."""
        if scalar == 0:
            return self
        for k, v in other.items():
            self.iadd(k, scalar * v)
        return self

    def __add__(self, other):
        return self.copy().accumulate(other)

    def __sub__(self, other):
        return self.copy().accumulate(other, Fraction(-1))

    def scaled(self, scalar):
        scalar = Fraction(scalar)
        out = Func(role=self.role)
        if scalar != 0:
            for k, v in self.items():
                dict.__setitem__(out, k, scalar * v)
        return out

    def __neg__(self):
        return self.scaled(-1)

    def l1(self):
        return sum((abs(v) for v in self.values()), Fraction(0))

    def dot(self, values):
        """Pair against any mapping id -> rational (missing keys count 0)."""
        total = Fraction(0)
        for k, v in self.items():
            w = values.get(k)
            if w:
                total += v * w
        return total

    def restrict(self, keep):
        """New Func keeping only keys for which keep(id) is true."""
        out = Func(role=self.role)
        for k, v in self.items():
            if keep(k):
                dict.__setitem__(out, k, v)
        return out

    def support(self):
        return set(self.keys())

    def to_json(self):
        return [[k, frac_str(v)] for k, v in sorted(self.items())]

    @classmethod
    def from_json(cls, rows, role="generic"):
        return cls(((k, parse_frac(v)) for k, v in rows), role=role)

    @classmethod
    def unit(cls, gid, coef=Fraction(1), role="evaluation"):
        return cls([(gid, coef)], role=role)

    def __repr__(self):
        inner = ", ".join(
            "%d: %s" % (k, frac_str(v)) for k, v in sorted(self.items()))
        return "Func{%s}" % inner
