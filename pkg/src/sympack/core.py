"""Exact scalar arithmetic shared by every engine.

Every quantity that feeds a decision is either a rational number or the
square root of a nonnegative rational: obstruction ratios are rational,
volume bounds are square roots.  ``Rational`` is an alias for
:class:`fractions.Fraction` (arbitrary precision, canonical form), and
:class:`QuadraticValue` closes the two shapes under exact comparison.

No floating point appears anywhere on a decision path.  Floats exist only
in clearly labeled convenience columns emitted by the CLI.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import total_ordering
from typing import Union

Rational = Fraction

RationalLike = Union[Fraction, int, str]


class SympackError(Exception):
    """Base class for all engine errors."""


class InputError(SympackError):
    """Malformed or out-of-contract input."""


class DomainValidationError(InputError):
    """A moment-region document failed validation.

    ``code`` is a stable machine-readable diagnostic tag.
    """

    def __init__(self, code: str, message: str):
        super().__init__(f"{code}: {message}")
        self.code = code


class HypothesisError(SympackError):
    """A theorem hypothesis required by the operation does not hold."""


class ResourceBudgetError(SympackError):
    """An enumeration exceeded its declared search budget."""


class UndecidedError(SympackError):
    """A computation could not be certified within its budget.

    Carries the best bound found so far in ``best``.
    """

    def __init__(self, message: str, best=None):
        super().__init__(message)
        self.best = best


def as_rational(value: RationalLike) -> Fraction:
    """Coerce ints, Fractions, and "p/q" strings to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise InputError(f"not a rational value: {value!r}")


def parse_rational(text: str) -> Fraction:
    """Parse "p/q" or "p" (optionally signed) into a Fraction."""
    s = text.strip()
    try:
        if "/" in s:
            num, den = s.split("/", 1)
            d = int(den.strip())
            if d == 0:
                raise InputError(f"zero denominator in {text!r}")
            return Fraction(int(num.strip()), d)
        return Fraction(int(s))
    except ValueError:
        raise InputError(f"not a rational literal: {text!r}") from None


def format_rational(x: Fraction) -> str:
    """Render a Fraction as "p/q", or "p" when the denominator is 1."""
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def rational_sqrt(x: Fraction) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None if irrational."""
    if x < 0:
        raise InputError("square root of a negative rational")
    np_, dp = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if np_ * np_ == x.numerator and dp * dp == x.denominator:
        return Fraction(np_, dp)
    return None


@total_ordering
class QuadraticValue:
    """A value of the form q or sqrt(s) with q, s rational and s >= 0.

    Square roots of perfect squares normalize to the rational kind, so
    equality and ordering are canonical.  Instances are immutable.
    """

    __slots__ = ("kind", "payload")

    def __init__(self, kind: str, payload: Fraction):
        if kind not in ("rational", "sqrt"):
            raise InputError(f"unknown QuadraticValue kind {kind!r}")
        payload = as_rational(payload)
        if kind == "sqrt":
            if payload < 0:
                raise InputError("sqrt radicand must be nonnegative")
            root = rational_sqrt(payload)
            if root is not None:
                kind, payload = "rational", root
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "payload", payload)

    def __setattr__(self, *_):
        raise AttributeError("QuadraticValue is immutable")

    @classmethod
    def of(cls, value: RationalLike) -> "QuadraticValue":
        return cls("rational", as_rational(value))

    @classmethod
    def sqrt(cls, radicand: RationalLike) -> "QuadraticValue":
        return cls("sqrt", as_rational(radicand))

    @property
    def is_rational(self) -> bool:
        return self.kind == "rational"

    def as_rational(self) -> Fraction:
        if not self.is_rational:
            raise InputError(f"{self} is irrational")
        return self.payload

    def square(self) -> Fraction:
        """The square of the value; always rational."""
        if self.is_rational:
            return self.payload * self.payload
        return self.payload

    def scale(self, factor: RationalLike) -> "QuadraticValue":
        """Multiply by a nonnegative rational factor, staying in the class."""
        f = as_rational(factor)
        if f < 0:
            raise InputError("scale factor must be nonnegative")
        if self.is_rational:
            return QuadraticValue.of(self.payload * f)
        return QuadraticValue.sqrt(self.payload * f * f)

    def _cmp(self, other) -> int:
        """Exact three-way comparison by sign analysis and squaring."""
        if isinstance(other, (Fraction, int)):
            other = QuadraticValue.of(other)
        if not isinstance(other, QuadraticValue):
            return NotImplemented
        a, b = self, other
        if a.is_rational and b.is_rational:
            return (a.payload > b.payload) - (a.payload < b.payload)
        if a.is_rational:
            # rational vs sqrt(s): sqrt(s) > 0 here (perfect squares normalized)
            if a.payload <= 0:
                return -1
            sq = a.payload * a.payload
            return (sq > b.payload) - (sq < b.payload)
        if b.is_rational:
            return -b._cmp(a)
        return (a.payload > b.payload) - (a.payload < b.payload)

    def __eq__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is NotImplemented else c == 0

    def __lt__(self, other):
        c = self._cmp(other)
        if c is NotImplemented:
            return NotImplemented
        return c < 0

    def __hash__(self):
        return hash((self.kind, self.payload))

    def __float__(self) -> float:
        if self.is_rational:
            return float(self.payload)
        return math.sqrt(float(self.payload))

    def __repr__(self):
        if self.is_rational:
            return f"QuadraticValue({format_rational(self.payload)})"
        return f"QuadraticValue(sqrt({format_rational(self.payload)}))"


def compare(a: QuadraticValue | Fraction | int, b: QuadraticValue | Fraction | int) -> int:
    """Total-order comparison: -1, 0, or +1; exact for all inputs."""
    if not isinstance(a, QuadraticValue):
        a = QuadraticValue.of(a)
    c = a._cmp(b)
    if c is NotImplemented:
        raise InputError(f"cannot compare {a!r} with {b!r}")
    return c


def qv_max(a: QuadraticValue, b: QuadraticValue) -> QuadraticValue:
    return b if compare(a, b) < 0 else a


def qv_min(a: QuadraticValue, b: QuadraticValue) -> QuadraticValue:
    return b if compare(a, b) > 0 else a
