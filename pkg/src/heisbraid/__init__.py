"""Exact computational algebra for zig-zag/wreath braid group actions.

Everything is computed over exact rationals (``fractions.Fraction``) or
integer Laurent polynomials; there is no floating point anywhere.
"""

__version__ = "0.1.0"
