"""Integer Laurent polynomials in one variable t.

Coefficients are Python ints (or Fractions where a caller divides);
zero coefficients are never stored.
"""

from __future__ import annotations

from fractions import Fraction


class LaurentPoly:
    """Laurent polynomial sum_k c_k t^k, stored as {exponent: coeff}."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        data = {}
        if coeffs:
            for k, c in coeffs.items() if isinstance(coeffs, dict) else coeffs:
                if c:
                    data[k] = data.get(k, 0) + c
                    if not data[k]:
                        del data[k]
        self.coeffs = data

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def one(cls):
        return cls({0: 1})

    @classmethod
    def t(cls, k=1, coeff=1):
        """The monomial coeff * t^k."""
        return cls({k: coeff})

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly({0: other})
        return isinstance(other, LaurentPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPoly({0: other})
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, 0) + c
            if not out[k]:
                del out[k]
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentPoly({0: other})
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return LaurentPoly({k: c * other for k, c in self.coeffs.items() if c * other})
        out = {}
        for k1, c1 in self.coeffs.items():
            for k2, c2 in other.coeffs.items():
                k = k1 + k2
                out[k] = out.get(k, 0) + c1 * c2
                if not out[k]:
                    del out[k]
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        assert n >= 0
        out = LaurentPoly.one()
        for _ in range(n):
            out = out * self
        return out

    def bar(self):
        """The involution t -> t^{-1}."""
        return LaurentPoly({-k: c for k, c in self.coeffs.items()})

    def shift(self, k):
        """Multiply by t^k."""
        return LaurentPoly({e + k: c for e, c in self.coeffs.items()})

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in sorted(self.coeffs):
            c = self.coeffs[k]
            if k == 0:
                parts.append(f"{c}")
            elif k == 1:
                parts.append(f"{c}*t" if c != 1 else "t")
            else:
                parts.append(f"{c}*t^{k}" if c != 1 else f"t^{k}")
        return " + ".join(parts).replace("+ -", "- ")

    __repr__ = __str__


def quantum_integer(n):
    """[n] = t^{-n+1} + t^{-n+3} + ... + t^{n-1}; [0] = 0, [-n] = -[n]."""
    if n == 0:
        return LaurentPoly.zero()
    if n < 0:
        return -quantum_integer(-n)
    return LaurentPoly({k: 1 for k in range(-n + 1, n, 2)})
