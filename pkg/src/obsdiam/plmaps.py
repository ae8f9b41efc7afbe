"""Continuous piecewise-linear maps of the line with exact rational data.

A map is stored as its slope-change knots (x, value) plus the two ray slopes
beyond the first and last knot.  Interior slopes are derived from consecutive
knots, so continuity holds by construction and never needs repair.  The
constructor canonicalizes: knots that do not change the slope are dropped,
and a map with no slope change at all (an affine map) is normalized to the
single anchor knot (0, f(0)).  Two equal functions therefore compare equal.

Composition is symbolic.  ``outer.after(inner)`` collects the knots of the
inner map together with every point where the inner map crosses a knot value
of the outer map; between consecutive collected points both maps are affine,
so the result is again an exact PiecewiseLinearMap.  No sampling is involved.
"""

from __future__ import annotations

from bisect import bisect_right
from fractions import Fraction
from typing import Iterable

from ._rational import format_fraction, to_fraction
from .errors import ValidationError

__all__ = ["PiecewiseLinearMap", "affine_map"]

_ZERO = Fraction(0)


class PiecewiseLinearMap:
    __slots__ = ("_xs", "_ys", "_left", "_right", "_mids")

    def __init__(self, knots: Iterable[tuple], slope_left, slope_right):
        pts = [
            (to_fraction(x, what="knot x"), to_fraction(y, what="knot value"))
            for x, y in knots
        ]
        if not pts:
            raise ValidationError("a piecewise-linear map needs at least one knot")
        left = to_fraction(slope_left, what="slope")
        right = to_fraction(slope_right, what="slope")
        for (x0, _), (x1, _) in zip(pts, pts[1:]):
            if x1 <= x0:
                raise ValidationError("knot x coordinates must strictly increase")
        xs, ys, mids = _canonicalize(pts, left, right)
        self._xs = xs
        self._ys = ys
        self._mids = mids
        self._left = left
        self._right = right

    # -- constructors ---------------------------------------------------------

    @classmethod
    def affine(cls, slope, intercept) -> "PiecewiseLinearMap":
        """x -> slope * x + intercept."""
        slope = to_fraction(slope, what="slope")
        intercept = to_fraction(intercept, what="intercept")
        return cls([(_ZERO, intercept)], slope, slope)

    @classmethod
    def constant(cls, value) -> "PiecewiseLinearMap":
        return cls.affine(0, value)

    @classmethod
    def identity(cls) -> "PiecewiseLinearMap":
        return cls.affine(1, 0)

    # -- basic queries ----------------------------------------------------------

    @property
    def knots(self) -> tuple:
        return tuple(zip(self._xs, self._ys))

    def slopes(self) -> tuple:
        """All slopes left to right: ray, interior segments, ray."""
        return (self._left, *self._mids, self._right)

    def __call__(self, x) -> Fraction:
        x = to_fraction(x, what="argument")
        xs, ys = self._xs, self._ys
        if x <= xs[0]:
            return ys[0] + self._left * (x - xs[0])
        if x >= xs[-1]:
            return ys[-1] + self._right * (x - xs[-1])
        i = bisect_right(xs, x) - 1
        return ys[i] + self._mids[i] * (x - xs[i])

    def is_one_lipschitz(self) -> bool:
        return all(abs(s) <= 1 for s in self.slopes())

    def bounds(self) -> tuple:
        """(inf, sup) of the range; an unbounded side is reported as None."""
        lo: Fraction | None = min(self._ys)
        hi: Fraction | None = max(self._ys)
        if self._left > 0 or self._right < 0:
            lo = None
        if self._left < 0 or self._right > 0:
            hi = None
        return (lo, hi)

    # -- composition --------------------------------------------------------------

    def after(self, inner: "PiecewiseLinearMap") -> "PiecewiseLinearMap":
        """The composite x -> self(inner(x)), computed symbolically."""
        if not isinstance(inner, PiecewiseLinearMap):
            raise ValidationError("after() composes two PiecewiseLinearMap values")
        candidates = set(inner._xs)
        for c in self._xs:
            for lo, hi, slope, x_ref, y_ref in inner._pieces():
                if slope == 0:
                    continue  # constant piece: no crossing interior to it
                x_star = x_ref + (c - y_ref) / slope
                if (lo is None or x_star >= lo) and (hi is None or x_star <= hi):
                    candidates.add(x_star)
        xs = sorted(candidates)
        knots = [(x, self(inner(x))) for x in xs]
        left = _ray_slope(self, inner._left, leftward=True)
        right = _ray_slope(self, inner._right, leftward=False)
        return PiecewiseLinearMap(knots, left, right)

    def _pieces(self):
        """Affine pieces as (lo, hi, slope, x_ref, y_ref); None = unbounded end."""
        xs, ys = self._xs, self._ys
        yield (None, xs[0], self._left, xs[0], ys[0])
        for i, slope in enumerate(self._mids):
            yield (xs[i], xs[i + 1], slope, xs[i], ys[i])
        yield (xs[-1], None, self._right, xs[-1], ys[-1])

    # -- serialization --------------------------------------------------------------

    def to_json_dict(self) -> dict:
        # Breakpoints are the slope-change points; the base point pins values.
        if len(self._xs) == 1 and self._left == self._right:
            breakpoints: list[str] = []
            slopes = [format_fraction(self._left)]
        else:
            breakpoints = [format_fraction(x) for x in self._xs]
            slopes = [format_fraction(s) for s in self.slopes()]
        return {
            "breakpoints": breakpoints,
            "slopes": slopes,
            "base_x": format_fraction(self._xs[0]),
            "base_y": format_fraction(self._ys[0]),
        }

    @classmethod
    def from_json_dict(cls, payload: dict) -> "PiecewiseLinearMap":
        try:
            raw_bps = payload["breakpoints"]
            raw_slopes = payload["slopes"]
            base_x = to_fraction(payload["base_x"], what="base_x")
            base_y = to_fraction(payload["base_y"], what="base_y")
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"malformed piecewise-linear map payload: {exc}") from exc
        bps = [to_fraction(b, what="breakpoint") for b in raw_bps]
        slopes = [to_fraction(s, what="slope") for s in raw_slopes]
        if len(slopes) != len(bps) + 1:
            raise ValidationError("need exactly one slope per piece (breakpoints + 1)")
        if not bps:
            return cls([(base_x, base_y)], slopes[0], slopes[0])
        # Integrate slopes away from the base point to recover knot values.
        if base_x != bps[0]:
            raise ValidationError("base point must sit on the first breakpoint")
        knots = [(bps[0], base_y)]
        y = base_y
        for i in range(1, len(bps)):
            y = y + slopes[i] * (bps[i] - bps[i - 1])
            knots.append((bps[i], y))
        return cls(knots, slopes[0], slopes[-1])

    # -- dunder ----------------------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, PiecewiseLinearMap):
            return NotImplemented
        return (
            self._xs == other._xs
            and self._ys == other._ys
            and self._left == other._left
            and self._right == other._right
        )

    def __hash__(self) -> int:
        return hash((self._xs, self._ys, self._left, self._right))

    def __repr__(self) -> str:
        pts = ", ".join(f"({x},{y})" for x, y in self.knots)
        return f"PiecewiseLinearMap([{pts}], left={self._left}, right={self._right})"


def _canonicalize(pts, left, right):
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    mids = [
        (ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i]) for i in range(len(pts) - 1)
    ]
    slopes = [left, *mids, right]
    keep = [i for i in range(len(pts)) if slopes[i] != slopes[i + 1]]
    if not keep:
        # Affine map: anchor it at x = 0 so equal functions compare equal.
        value_at_zero = ys[0] + left * (_ZERO - xs[0])
        return (_ZERO,), (value_at_zero,), ()
    xs2 = tuple(xs[i] for i in keep)
    ys2 = tuple(ys[i] for i in keep)
    mids2 = tuple(
        (ys2[i + 1] - ys2[i]) / (xs2[i + 1] - xs2[i]) for i in range(len(xs2) - 1)
    )
    return xs2, ys2, mids2


def _ray_slope(outer: PiecewiseLinearMap, inner_slope: Fraction, *, leftward: bool):
    """Slope of outer∘inner on the far left (or right) ray."""
    if inner_slope == 0:
        return _ZERO
    heads_down = (inner_slope > 0) == leftward
    # inner tends to -inf on this ray iff heads_down; pick outer's matching ray.
    outer_slope = outer._left if heads_down else outer._right
    return outer_slope * inner_slope


def affine_map(slope, intercept) -> PiecewiseLinearMap:
    """Convenience wrapper: the map x -> slope * x + intercept."""
    return PiecewiseLinearMap.affine(slope, intercept)
