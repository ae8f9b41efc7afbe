"""Finite metric measure spaces, screens, witnesses, and heavy subsets.

A screen is where 1-Lipschitz observables take values: the whole line or a
closed interval [a, b].  A heavy subset at level ``alpha`` is a set of points
whose mass reaches ``alpha``; the inclusion-minimal ones are exactly the sets
whose spread can pin down the partial diameter of an image measure, so they
are the combinatorial core of every observable-diameter computation here.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Union

from ._rational import format_fraction, to_fraction
from .errors import DomainError, ResourceCapError, ValidationError
from .measures import DiscreteMeasure

__all__ = [
    "FiniteMMSpace",
    "Interval",
    "FullLine",
    "FULL_LINE",
    "Screen",
    "parse_screen",
    "screen_to_str",
    "LipschitzWitness",
    "HeavyFamily",
    "heavy_minimal_subsets",
]

DEFAULT_HEAVY_CAP = 12


class FiniteMMSpace:
    """Points with a rational metric and a probability mass on each point."""

    __slots__ = ("_labels", "_dist", "_mass")

    def __init__(self, labels: Iterable[str], dist, mass):
        labels = tuple(str(x) for x in labels)
        n = len(labels)
        if n == 0:
            raise ValidationError("a space needs at least one point")
        if len(set(labels)) != n:
            raise ValidationError("point labels must be distinct")
        rows = [[to_fraction(v, what="distance") for v in row] for row in dist]
        if len(rows) != n or any(len(r) != n for r in rows):
            raise ValidationError(f"distance matrix must be {n}x{n}")
        masses = tuple(to_fraction(m, what="mass") for m in mass)
        if len(masses) != n:
            raise ValidationError("need exactly one mass per point")
        if any(m <= 0 for m in masses):
            raise ValidationError("all masses must be positive")
        if sum(masses) != 1:
            raise ValidationError(f"masses must sum to 1 exactly, got {sum(masses)}")
        for i in range(n):
            if rows[i][i] != 0:
                raise ValidationError(f"distance ({labels[i]}, {labels[i]}) must be 0")
            for j in range(i + 1, n):
                if rows[i][j] != rows[j][i]:
                    raise ValidationError(
                        f"distance matrix not symmetric at ({labels[i]}, {labels[j]})"
                    )
                if rows[i][j] <= 0:
                    raise ValidationError(
                        f"off-diagonal distance ({labels[i]}, {labels[j]}) must be positive"
                    )
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if rows[i][j] > rows[i][k] + rows[k][j]:
                        raise ValidationError(
                            "triangle inequality fails at triple "
                            f"({labels[i]}, {labels[j]}, {labels[k]}): "
                            f"{rows[i][j]} > {rows[i][k]} + {rows[k][j]}"
                        )
        self._labels = labels
        self._dist = tuple(tuple(r) for r in rows)
        self._mass = masses

    @classmethod
    def line_space(cls, positions, masses=None, labels=None) -> "FiniteMMSpace":
        """Points on the line with the absolute-difference metric."""
        pos = [to_fraction(p, what="position") for p in positions]
        if len(set(pos)) != len(pos):
            raise ValidationError("line positions must be distinct")
        n = len(pos)
        if masses is None:
            masses = [Fraction(1, n)] * n
        if labels is None:
            labels = [f"p{i}" for i in range(n)]
        dist = [[abs(a - b) for b in pos] for a in pos]
        return cls(labels, dist, masses)

    # -- queries ---------------------------------------------------------------

    @property
    def labels(self) -> tuple:
        return self._labels

    @property
    def masses(self) -> tuple:
        return self._mass

    def __len__(self) -> int:
        return len(self._labels)

    def dist(self, i: int, j: int) -> Fraction:
        return self._dist[i][j]

    @property
    def dist_matrix(self) -> tuple:
        return self._dist

    @property
    def diameter(self) -> Fraction:
        n = len(self._labels)
        return max(
            (self._dist[i][j] for i in range(n) for j in range(i + 1, n)),
            default=Fraction(0),
        )

    def mass_of(self, indices: Iterable[int]) -> Fraction:
        return sum((self._mass[i] for i in indices), Fraction(0))

    def __eq__(self, other) -> bool:
        if not isinstance(other, FiniteMMSpace):
            return NotImplemented
        return (
            self._labels == other._labels
            and self._dist == other._dist
            and self._mass == other._mass
        )

    def __hash__(self) -> int:
        return hash((self._labels, self._dist, self._mass))

    def __repr__(self) -> str:
        return f"FiniteMMSpace(n={len(self._labels)}, diam={self.diameter})"

    # -- serialization -------------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "labels": list(self._labels),
            "dist": [[format_fraction(v) for v in row] for row in self._dist],
            "mass": [format_fraction(m) for m in self._mass],
        }

    @classmethod
    def from_json_dict(cls, payload: dict) -> "FiniteMMSpace":
        if not isinstance(payload, dict):
            raise ValidationError("space JSON must be an object")
        try:
            return cls(payload["labels"], payload["dist"], payload["mass"])
        except KeyError as exc:
            raise ValidationError(f"space JSON missing field {exc}") from exc

    def dump(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_json_dict(), fh, indent=2, sort_keys=True)
            fh.write("\n")

    @classmethod
    def load(cls, path) -> "FiniteMMSpace":
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_json_dict(json.load(fh))


@dataclass(frozen=True)
class Interval:
    """Closed screen [a, b] with a < b."""

    a: Fraction
    b: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", to_fraction(self.a, what="screen endpoint"))
        object.__setattr__(self, "b", to_fraction(self.b, what="screen endpoint"))
        if self.a >= self.b:
            raise ValidationError(f"screen needs a < b, got [{self.a}, {self.b}]")

    @property
    def width(self) -> Fraction:
        return self.b - self.a

    def contains(self, x: Fraction) -> bool:
        return self.a <= x <= self.b


class FullLine:
    """The unbounded screen; a singleton."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def contains(self, x) -> bool:  # noqa: ARG002 - uniform interface
        return True

    def __repr__(self) -> str:
        return "FullLine"


FULL_LINE = FullLine()

Screen = Union[Interval, FullLine]


def parse_screen(text: str) -> Screen:
    """Parse 'fullline' or 'interval:a:b' with rational endpoints."""
    text = text.strip()
    if text.lower() == "fullline":
        return FULL_LINE
    parts = text.split(":")
    if len(parts) == 3 and parts[0].lower() == "interval":
        return Interval(to_fraction(parts[1], what="screen endpoint"),
                        to_fraction(parts[2], what="screen endpoint"))
    raise ValidationError(f"cannot parse screen {text!r}; use fullline or interval:a:b")


def screen_to_str(screen: Screen) -> str:
    if isinstance(screen, FullLine):
        return "fullline"
    return f"interval:{format_fraction(screen.a)}:{format_fraction(screen.b)}"


@dataclass(frozen=True)
class LipschitzWitness:
    """One value per point of a space; a candidate 1-Lipschitz observable."""

    values: tuple

    def __post_init__(self):
        object.__setattr__(
            self,
            "values",
            tuple(to_fraction(v, what="witness value") for v in self.values),
        )

    def validate(self, space: FiniteMMSpace, screen: Screen) -> None:
        n = len(space)
        if len(self.values) != n:
            raise ValidationError(
                f"witness has {len(self.values)} values for a {n}-point space"
            )
        for v in self.values:
            if not screen.contains(v):
                raise ValidationError(f"witness value {v} escapes the screen")
        for i in range(n):
            for j in range(i + 1, n):
                if abs(self.values[i] - self.values[j]) > space.dist(i, j):
                    raise ValidationError(
                        "witness is not 1-Lipschitz between "
                        f"{space.labels[i]} and {space.labels[j]}: "
                        f"|{self.values[i]} - {self.values[j]}| > {space.dist(i, j)}"
                    )

    def pushforward(self, space: FiniteMMSpace) -> DiscreteMeasure:
        return DiscreteMeasure(zip(self.values, space.masses))


@dataclass(frozen=True)
class HeavyFamily:
    """Inclusion-minimal subsets of points with mass at least ``alpha``."""

    alpha: Fraction
    minimal_subsets: tuple  # tuple of sorted index tuples


def heavy_minimal_subsets(
    space: FiniteMMSpace, alpha, *, cap: int = DEFAULT_HEAVY_CAP
) -> HeavyFamily:
    """Enumerate the minimal heavy subsets, smallest first.

    A heavy subset is minimal exactly when dropping any single point takes it
    below the level, since all masses are positive.
    """
    alpha = to_fraction(alpha, what="alpha")
    if not (0 < alpha <= 1):
        raise DomainError(f"alpha must lie in (0, 1], got {alpha}")
    n = len(space)
    if n > cap:
        raise ResourceCapError(
            f"{n} points exceed the subset-enumeration cap {cap}; raise cap= to proceed"
        )
    masses = space.masses
    out = []
    for size in range(1, n + 1):
        for combo in combinations(range(n), size):
            total = sum(masses[i] for i in combo)
            if total < alpha:
                continue
            if all(total - masses[i] < alpha for i in combo):
                out.append(combo)
    return HeavyFamily(alpha=alpha, minimal_subsets=tuple(out))
