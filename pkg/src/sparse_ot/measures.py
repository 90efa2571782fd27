"""Finitely supported probability measures with exact rational weights."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Integral
from typing import Iterable, Sequence

import numpy as np

Rational = Fraction


class InvalidMeasure(ValueError):
    pass


@dataclass(frozen=True)
class Point:
    coords: tuple[float, ...]
    label: str | None = None

    def __post_init__(self):
        coords = tuple(float(c) for c in self.coords)
        if not coords:
            raise InvalidMeasure("point must have at least one coordinate")
        if not all(math.isfinite(c) for c in coords):
            raise InvalidMeasure(f"non-finite coordinate in {coords}")
        object.__setattr__(self, "coords", coords)

    @property
    def dim(self) -> int:
        return len(self.coords)


def as_point(p) -> Point:
    if isinstance(p, Point):
        return p
    if np.isscalar(p):
        return Point((p,))
    return Point(tuple(p))


def parse_weight(value) -> Fraction:
    """Parse an exact weight from an int, a Fraction, or a ``"p"``/``"p/q"`` string.

    Floats are rejected: rounding them would silently change the lcm structure
    the expansion depends on.
    """
    if isinstance(value, bool):
        raise InvalidMeasure(f"not a rational weight: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, Integral):
        return Fraction(int(value))
    if isinstance(value, str):
        text = value.strip()
        num, sep, den = text.partition("/")
        try:
            if sep:
                return Fraction(_parse_int(num), _parse_int(den))
            return Fraction(_parse_int(num))
        except (ValueError, ZeroDivisionError):
            raise InvalidMeasure(f"malformed rational weight {value!r}") from None
    raise InvalidMeasure(f"weights must be exact rationals, got {type(value).__name__} {value!r}")


def _parse_int(text: str) -> int:
    text = text.strip()
    if not text or not text.lstrip("+-").isdigit():
        raise ValueError(text)
    return int(text)


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class DiscreteMeasure:
    """Points with rational weights.

    Construction only normalizes types; use :func:`validate` (or
    :func:`check`) to enforce positivity and unit total mass.
    """

    points: tuple[Point, ...]
    weights: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(as_point(p) for p in self.points))
        object.__setattr__(self, "weights", tuple(parse_weight(w) for w in self.weights))

    def __len__(self) -> int:
        return len(self.points)

    @property
    def dim(self) -> int:
        return self.points[0].dim

    @property
    def is_uniform(self) -> bool:
        return len(set(self.weights)) == 1

    def coords(self) -> np.ndarray:
        return np.array([p.coords for p in self.points], dtype=float)


def measure(points: Iterable, weights: Iterable) -> DiscreteMeasure:
    """Build and validate a measure, raising :class:`InvalidMeasure` on failure."""
    mu = DiscreteMeasure(tuple(points), tuple(weights))
    check(mu)
    return mu


def uniform_measure(points: Sequence) -> DiscreteMeasure:
    pts = tuple(as_point(p) for p in points)
    if not pts:
        raise InvalidMeasure("empty point list")
    if len({p.dim for p in pts}) != 1:
        raise InvalidMeasure("points have inconsistent dimensions")
    w = Fraction(1, len(pts))
    return DiscreteMeasure(pts, (w,) * len(pts))


def validate(mu: DiscreteMeasure) -> str | None:
    """Return ``None`` if ``mu`` is a valid probability measure, else the first violation."""
    if len(mu.points) != len(mu.weights):
        return f"{len(mu.points)} points but {len(mu.weights)} weights"
    if not mu.points:
        return "empty measure"
    dims = [p.dim for p in mu.points]
    for i, d in enumerate(dims):
        if d != dims[0]:
            return f"point {i} has dimension {d}, expected {dims[0]}"
    for i, w in enumerate(mu.weights):
        if w <= 0:
            return f"non-positive weight at index {i}"
    total = sum(mu.weights, Fraction(0))
    if total != 1:
        return f"weights sum to {format_rational(total)} ≠ 1"
    return None


def check(mu: DiscreteMeasure) -> None:
    problem = validate(mu)
    if problem is not None:
        raise InvalidMeasure(problem)


@dataclass(frozen=True)
class CommonDenominatorForm:
    denominator: int
    multiplicities: tuple[int, ...]

    def weights(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(k, self.denominator) for k in self.multiplicities)


def common_denominator(mu: DiscreteMeasure) -> CommonDenominatorForm:
    """Write every weight as ``k_i / B`` with ``B`` the lcm of the reduced denominators."""
    check(mu)
    big_b = math.lcm(*(w.denominator for w in mu.weights))
    ks = tuple(w.numerator * (big_b // w.denominator) for w in mu.weights)
    return CommonDenominatorForm(big_b, ks)
