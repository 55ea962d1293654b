"""Exact Laurent-polynomial arithmetic over the rationals.

A Laurent polynomial is stored sparsely as a mapping from integer
exponent to nonzero ``fractions.Fraction`` coefficient.  Every operation
is exact, so equality of two polynomials is a decidable zero-residual
test; this is the substrate every verification in the package computes
over.  Instances are immutable: arithmetic always returns new objects.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Union

from .errors import NotDivisible, ZeroArgument

# The scalar field of the whole package.  ``fractions.Fraction`` keeps
# every value reduced with a positive denominator, which is exactly the
# normal form the exact layer requires.
Rational = Fraction

Scalar = Union[int, str, Fraction]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _fraction(value: Scalar) -> Fraction:
    return value if isinstance(value, Fraction) else Fraction(value)


class LaurentPoly:
    """A Laurent polynomial sum(c_k * z^k) with rational coefficients.

    The zero polynomial has empty support; zero coefficients are never
    stored.  Coefficients are real rationals, so conjugation is the
    identity throughout the package.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Mapping[int, Scalar] | Iterable[tuple[int, Scalar]] = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        store: dict[int, Fraction] = {}
        for exp, val in items:
            c = _fraction(val)
            if not c:
                continue
            k = int(exp)
            acc = store.get(k, _ZERO) + c
            if acc:
                store[k] = acc
            else:
                del store[k]
        self._coeffs = store

    # ---------------------------------------------------------------- constructors

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls({0: 1})

    @classmethod
    def constant(cls, c: Scalar) -> "LaurentPoly":
        return cls({0: c})

    @classmethod
    def monomial(cls, exponent: int, coeff: Scalar = 1) -> "LaurentPoly":
        """c * z^exponent (the exponent may be negative)."""
        return cls({exponent: coeff})

    # ---------------------------------------------------------------- inspection

    @property
    def is_zero(self) -> bool:
        return not self._coeffs

    @property
    def support(self) -> tuple[int, ...]:
        """Exponents carrying a nonzero coefficient, ascending."""
        return tuple(sorted(self._coeffs))

    @property
    def min_exp(self) -> int:
        if not self._coeffs:
            raise ValueError("the zero polynomial has no support")
        return min(self._coeffs)

    @property
    def max_exp(self) -> int:
        if not self._coeffs:
            raise ValueError("the zero polynomial has no support")
        return max(self._coeffs)

    def coeff(self, exponent: int) -> Fraction:
        """Coefficient of z^exponent (0 if absent)."""
        return self._coeffs.get(exponent, _ZERO)

    def items(self) -> Iterator[tuple[int, Fraction]]:
        """(exponent, coefficient) pairs in ascending exponent order."""
        for k in sorted(self._coeffs):
            yield k, self._coeffs[k]

    def as_dict(self) -> dict[int, Fraction]:
        return dict(self._coeffs)

    def __len__(self) -> int:
        return len(self._coeffs)

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    # ---------------------------------------------------------------- equality

    def _coerce(self, other) -> "LaurentPoly | None":
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly.constant(other)
        return None

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._coeffs == o._coeffs

    def __hash__(self) -> int:
        return hash(frozenset(self._coeffs.items()))

    # ---------------------------------------------------------------- ring operations

    def __add__(self, other) -> "LaurentPoly":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self._coeffs)
        for k, c in o._coeffs.items():
            acc = out.get(k, _ZERO) + c
            if acc:
                out[k] = acc
            else:
                del out[k]
        res = LaurentPoly.__new__(LaurentPoly)
        res._coeffs = out
        return res

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        res = LaurentPoly.__new__(LaurentPoly)
        res._coeffs = {k: -c for k, c in self._coeffs.items()}
        return res

    def __sub__(self, other) -> "LaurentPoly":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> "LaurentPoly":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, (int, Fraction)):
            c = _fraction(other)
            if not c:
                return LaurentPoly.zero()
            res = LaurentPoly.__new__(LaurentPoly)
            res._coeffs = {k: v * c for k, v in self._coeffs.items()}
            return res
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        out: dict[int, Fraction] = {}
        for ka, ca in self._coeffs.items():
            for kb, cb in other._coeffs.items():
                k = ka + kb
                acc = out.get(k, _ZERO) + ca * cb
                if acc:
                    out[k] = acc
                else:
                    del out[k]
        res = LaurentPoly.__new__(LaurentPoly)
        res._coeffs = out
        return res

    __rmul__ = __mul__

    def __truediv__(self, other) -> "LaurentPoly":
        """Division by a nonzero scalar only; use div_exact for polynomials."""
        if isinstance(other, (int, Fraction)):
            return self * (_ONE / _fraction(other))
        return NotImplemented

    def __pow__(self, n: int) -> "LaurentPoly":
        if not isinstance(n, int) or n < 0:
            raise ValueError("only nonnegative integer powers are supported")
        out = LaurentPoly.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # ---------------------------------------------------------------- structure maps

    def reflect(self) -> "LaurentPoly":
        """f(z) -> f(1/z): negate every exponent."""
        res = LaurentPoly.__new__(LaurentPoly)
        res._coeffs = {-k: c for k, c in self._coeffs.items()}
        return res

    def shift(self, power: int = 1) -> "LaurentPoly":
        """Multiply by z^power (exponent shift)."""
        res = LaurentPoly.__new__(LaurentPoly)
        res._coeffs = {k + power: c for k, c in self._coeffs.items()}
        return res

    def theta(self) -> "LaurentPoly":
        """The Euler operator z d/dz: scales each coefficient by its exponent."""
        res = LaurentPoly.__new__(LaurentPoly)
        res._coeffs = {k: c * k for k, c in self._coeffs.items() if k}
        return res

    def deriv(self) -> "LaurentPoly":
        """d/dz, valid on Laurent polynomials: z^k -> k z^(k-1)."""
        res = LaurentPoly.__new__(LaurentPoly)
        res._coeffs = {k - 1: c * k for k, c in self._coeffs.items() if k}
        return res

    # ---------------------------------------------------------------- division

    def div_exact(self, divisor: "LaurentPoly") -> "LaurentPoly":
        """Return q with self == q * divisor, raising NotDivisible otherwise.

        Both operands are normalized by their minimal exponent (a unit in
        the Laurent ring), after which ordinary polynomial long division
        decides divisibility: the normalization forces nonzero constant
        terms, so the Laurent quotient exists exactly when the polynomial
        remainder vanishes.
        """
        if not isinstance(divisor, LaurentPoly):
            raise TypeError("divisor must be a LaurentPoly")
        if divisor.is_zero:
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero:
            return LaurentPoly.zero()
        f_shift = self.min_exp
        d_shift = divisor.min_exp
        rem = {k - f_shift: c for k, c in self._coeffs.items()}
        den = {k - d_shift: c for k, c in divisor._coeffs.items()}
        deg_d = max(den)
        lead = den[deg_d]
        quot: dict[int, Fraction] = {}
        while rem:
            deg_r = max(rem)
            if deg_r < deg_d:
                raise NotDivisible(
                    f"({divisor.text()}) does not divide ({self.text()}) exactly"
                )
            q = rem[deg_r] / lead
            k = deg_r - deg_d
            quot[k] = q
            for j, c in den.items():
                t = j + k
                acc = rem.get(t, _ZERO) - q * c
                if acc:
                    rem[t] = acc
                else:
                    rem.pop(t, None)
        res = LaurentPoly.__new__(LaurentPoly)
        res._coeffs = {k + f_shift - d_shift: c for k, c in quot.items()}
        return res

    # ---------------------------------------------------------------- evaluation

    def evaluate(self, z0: Scalar) -> Fraction:
        """Exact evaluation at a nonzero rational point."""
        x = _fraction(z0)
        if not x:
            raise ZeroArgument("Laurent polynomials cannot be evaluated at z = 0")
        total = _ZERO
        for k, c in self._coeffs.items():
            total += c * x**k
        return total

    __call__ = evaluate

    # ---------------------------------------------------------------- text form

    def text(self) -> str:
        """Canonical text form with ascending exponents, e.g.
        "1/3*z^-1 + 2/3 + 1/3*z"."""
        if not self._coeffs:
            return "0"
        parts: list[str] = []
        for k, c in self.items():
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                var = "z" if k == 1 else f"z^{k}"
                body = var if mag == 1 else f"{mag}*{var}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    def __str__(self) -> str:
        return self.text()

    def __repr__(self) -> str:
        return f"LaurentPoly({self.text()})"


#: The monomial z, for building expressions.
Z = LaurentPoly.monomial(1)

#: 1 - z^2, the exact divisor appearing in the Dunkl-type operator.
ONE_MINUS_Z2 = LaurentPoly({0: 1, 2: -1})

#: z - z^-1, the exact divisor appearing in the real-line map.
Z_MINUS_ZINV = LaurentPoly({1: 1, -1: -1})

#: z + z^-1, the symmetrized variable x(z) of the real-line map.
Z_PLUS_ZINV = LaurentPoly({1: 1, -1: 1})
