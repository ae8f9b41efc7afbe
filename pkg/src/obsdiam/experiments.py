"""Reproduction harnesses for the evenly-spaced line family.

The family member with index N is the 2N-point space {R, 2R, ..., 2NR} with
uniform masses.  Inside the window kappa in [1 - 1/N, 1 - 1/(2N)) the heavy
subsets are exactly the pairs, which pins both observable diameters in closed
form: R on the full line and c*R with c = 2(N-1)/(2N-1) on the interval
[-(N-1)R, (N-1)R].  The harnesses below recompute these with the exact engine
and report the comparisons; the sharpness sweep additionally tracks how close
the family's screen comes to the screen of the corrected inequality.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from ._rational import format_fraction, render_decimal, to_fraction
from .errors import DomainError
from .mmspace import FULL_LINE, FiniteMMSpace, Interval, Screen, screen_to_str
from .observable import DEFAULT_EXACT_CAP, observable_diameter

__all__ = [
    "counterexample_space",
    "CounterexampleReport",
    "verify_counterexample",
    "SharpnessRow",
    "sharpness_sweep",
    "SemicontinuityRow",
    "SemicontinuityProfile",
    "semicontinuity_profile",
    "SHARPNESS_CSV_COLUMNS",
    "SEMICONTINUITY_CSV_COLUMNS",
]


def counterexample_space(n_family: int, radius) -> FiniteMMSpace:
    """The 2N evenly spaced points {R, 2R, ..., 2NR} with uniform masses."""
    if n_family < 2:
        raise DomainError(f"family index must be >= 2, got {n_family}")
    radius = to_fraction(radius, what="radius")
    if radius <= 0:
        raise DomainError(f"radius must be positive, got {radius}")
    return FiniteMMSpace.line_space([radius * k for k in range(1, 2 * n_family + 1)])


@dataclass(frozen=True)
class CounterexampleReport:
    """Exact-engine values for one family member, against the closed forms.

    ``matches`` compares od values with R and c*R; it is only expected to be
    True when kappa lies in the validity window.  ``original_refuted`` is the
    N = 2 check that the uncorrected bound min{2R, od_full} exceeds the od
    seen through [-R, R]; None for other N, where [-R, R] is not the family
    screen.
    """

    n_family: int
    radius: Fraction
    kappa: Fraction
    in_window: bool
    interval: Interval
    od_full_line: Fraction
    od_interval: Fraction
    expected_c: Fraction
    matches: bool
    original_refuted: Optional[bool]

    def to_json_dict(self) -> dict:
        return {
            "n_family": self.n_family,
            "radius": format_fraction(self.radius),
            "kappa": format_fraction(self.kappa),
            "in_window": self.in_window,
            "interval": screen_to_str(self.interval),
            "od_full_line": format_fraction(self.od_full_line),
            "od_full_line_decimal": render_decimal(self.od_full_line),
            "od_interval": format_fraction(self.od_interval),
            "od_interval_decimal": render_decimal(self.od_interval),
            "expected_c": format_fraction(self.expected_c),
            "expected_od_interval": format_fraction(self.expected_c * self.radius),
            "matches": self.matches,
            "original_refuted": self.original_refuted,
        }


def verify_counterexample(
    n_family: int,
    radius,
    kappa=None,
    *,
    cap_n: int = DEFAULT_EXACT_CAP,
) -> CounterexampleReport:
    """Recompute the family member's two observable diameters exactly.

    kappa defaults to 1 - 3/(4N), the midpoint-ish interior of the validity
    window; an out-of-window kappa is reported as such, values still computed.
    """
    space = counterexample_space(n_family, radius)
    radius = to_fraction(radius, what="radius")
    if kappa is None:
        kappa = 1 - Fraction(3, 4 * n_family)
    else:
        kappa = to_fraction(kappa, what="kappa")
    in_window = (1 - Fraction(1, n_family)) <= kappa < (1 - Fraction(1, 2 * n_family))
    half_width = (n_family - 1) * radius
    interval = Interval(-half_width, half_width)
    od_full = observable_diameter(space, FULL_LINE, kappa, cap_n=cap_n)
    od_int = observable_diameter(space, interval, kappa, cap_n=cap_n)
    expected_c = Fraction(2 * (n_family - 1), 2 * n_family - 1)
    matches = od_full.value == radius and od_int.value == expected_c * radius
    original_refuted = None
    if n_family == 2:
        # the family screen IS [-R, R] here, so this directly contradicts
        # the uncorrected bound
        original_refuted = min(2 * radius, od_full.value) > od_int.value
    return CounterexampleReport(
        n_family=n_family,
        radius=radius,
        kappa=kappa,
        in_window=in_window,
        interval=interval,
        od_full_line=od_full.value,
        od_interval=od_int.value,
        expected_c=expected_c,
        matches=matches,
        original_refuted=original_refuted,
    )


SHARPNESS_CSV_COLUMNS = (
    "n",
    "kappa",
    "radius",
    "interval_lo",
    "interval_hi",
    "od_full_line",
    "od_interval",
    "ratio",
    "revised_screen_width",
    "gap",
    "provenance",
)


@dataclass(frozen=True)
class SharpnessRow:
    """One sweep row at kappa_n = 1 - 1/n.

    ratio = od_full / od_interval = (2n-1)/(2n-2) stays above 1, while
    gap = (width of the corrected inequality's screen) - (family screen
    width) collapses to the constant 2R: the corrected screen cannot be
    shrunk by more than an additive 2R without losing the inequality.
    """

    n_family: int
    kappa: Fraction
    radius: Fraction
    interval: Interval
    od_full_line: Fraction
    od_interval: Fraction
    ratio: Fraction
    revised_screen_width: Fraction
    gap: Fraction
    provenance: str  # "exact" | "closed-form"

    def to_json_dict(self) -> dict:
        return {
            "n": self.n_family,
            "kappa": format_fraction(self.kappa),
            "radius": format_fraction(self.radius),
            "interval": screen_to_str(self.interval),
            "od_full_line": format_fraction(self.od_full_line),
            "od_interval": format_fraction(self.od_interval),
            "od_interval_decimal": render_decimal(self.od_interval),
            "ratio": format_fraction(self.ratio),
            "ratio_decimal": render_decimal(self.ratio),
            "revised_screen_width": format_fraction(self.revised_screen_width),
            "gap": format_fraction(self.gap),
            "provenance": self.provenance,
        }

    def to_csv_row(self) -> list:
        return [
            self.n_family,
            format_fraction(self.kappa),
            format_fraction(self.radius),
            format_fraction(self.interval.a),
            format_fraction(self.interval.b),
            format_fraction(self.od_full_line),
            format_fraction(self.od_interval),
            format_fraction(self.ratio),
            format_fraction(self.revised_screen_width),
            format_fraction(self.gap),
            self.provenance,
        ]


def sharpness_sweep(
    radius, n_max: int, *, cap_n: int = DEFAULT_EXACT_CAP
) -> tuple[SharpnessRow, ...]:
    """Rows for n = 2..n_max at kappa_n = 1 - 1/n.

    Family members with 2n <= cap_n are recomputed with the exact engine and
    cross-checked against the closed forms; larger ones carry the closed-form
    values with an explicit provenance flag, never silently mixed.
    """
    radius = to_fraction(radius, what="radius")
    if radius <= 0:
        raise DomainError(f"radius must be positive, got {radius}")
    if n_max < 2:
        raise DomainError(f"n_max must be >= 2, got {n_max}")
    rows = []
    for n in range(2, n_max + 1):
        kappa = 1 - Fraction(1, n)
        half_width = (n - 1) * radius
        interval = Interval(-half_width, half_width)
        c = Fraction(2 * (n - 1), 2 * n - 1)
        if 2 * n <= cap_n:
            od_full = observable_diameter(
                counterexample_space(n, radius), FULL_LINE, kappa, cap_n=cap_n
            ).value
            od_int = observable_diameter(
                counterexample_space(n, radius), interval, kappa, cap_n=cap_n
            ).value
            assert od_full == radius, (n, od_full)
            assert od_int == c * radius, (n, od_int)
            provenance = "exact"
        else:
            od_full = radius
            od_int = c * radius
            provenance = "closed-form"
        ratio = od_full / od_int
        revised_width = 2 * radius / (1 - kappa)
        gap = revised_width - 2 * half_width
        assert ratio > 1, (n, ratio)
        assert gap == 2 * radius, (n, gap)
        rows.append(
            SharpnessRow(
                n_family=n,
                kappa=kappa,
                radius=radius,
                interval=interval,
                od_full_line=od_full,
                od_interval=od_int,
                ratio=ratio,
                revised_screen_width=revised_width,
                gap=gap,
                provenance=provenance,
            )
        )
    return tuple(rows)


SEMICONTINUITY_CSV_COLUMNS = (
    "kappa",
    "alpha",
    "od",
    "constant_until",
    "probe_kappa",
    "probe_od",
    "right_continuous",
)


@dataclass(frozen=True)
class SemicontinuityRow:
    """od at one kappa plus a finite right-continuity certificate.

    Between consecutive achievable subset masses the heavy family cannot
    change, so od is constant on [kappa, constant_until); the probe re-runs
    the engine strictly inside that half-open stretch and must agree.
    """

    kappa: Fraction
    alpha: Fraction
    od_value: Fraction
    constant_until: Fraction
    probe_kappa: Fraction
    probe_od: Fraction

    @property
    def right_continuous(self) -> bool:
        return self.probe_od == self.od_value

    def to_json_dict(self) -> dict:
        return {
            "kappa": format_fraction(self.kappa),
            "alpha": format_fraction(self.alpha),
            "od": format_fraction(self.od_value),
            "od_decimal": render_decimal(self.od_value),
            "constant_until": format_fraction(self.constant_until),
            "probe_kappa": format_fraction(self.probe_kappa),
            "probe_od": format_fraction(self.probe_od),
            "right_continuous": self.right_continuous,
        }

    def to_csv_row(self) -> list:
        return [
            format_fraction(self.kappa),
            format_fraction(self.alpha),
            format_fraction(self.od_value),
            format_fraction(self.constant_until),
            format_fraction(self.probe_kappa),
            format_fraction(self.probe_od),
            str(self.right_continuous),
        ]


@dataclass(frozen=True)
class SemicontinuityProfile:
    screen: Screen
    rows: tuple
    monotone_nonincreasing: bool
    right_continuous: bool

    def to_json_dict(self) -> dict:
        return {
            "screen": screen_to_str(self.screen),
            "rows": [r.to_json_dict() for r in self.rows],
            "monotone_nonincreasing": self.monotone_nonincreasing,
            "right_continuous": self.right_continuous,
        }


def semicontinuity_profile(
    space: FiniteMMSpace,
    screen: Screen,
    kappa_grid: Sequence,
    *,
    cap_n: int = DEFAULT_EXACT_CAP,
) -> SemicontinuityProfile:
    """od over a kappa grid with monotonicity and right-continuity checks.

    The grid is sorted and deduplicated.  For each point, the largest subset
    mass strictly below alpha = 1 - kappa bounds the stretch on which the
    heavy family — hence od — must stay constant; od is re-evaluated at the
    midpoint of that stretch as the certificate.
    """
    if not kappa_grid:
        raise DomainError("kappa grid must be nonempty")
    grid = sorted({to_fraction(k, what="kappa") for k in kappa_grid})
    for k in grid:
        if not 0 < k < 1:
            raise DomainError(f"kappa must lie strictly between 0 and 1, got {k}")
    subset_sums = {Fraction(0)}
    for m in space.masses:
        subset_sums |= {s + m for s in subset_sums}
    rows = []
    for kappa in grid:
        alpha = 1 - kappa
        od = observable_diameter(space, screen, kappa, cap_n=cap_n).value
        below = max((s for s in subset_sums if s < alpha), default=Fraction(0))
        constant_until = 1 - below  # od constant on [kappa, constant_until)
        probe_alpha = (alpha + below) / 2
        probe_kappa = 1 - probe_alpha
        probe_od = observable_diameter(space, screen, probe_kappa, cap_n=cap_n).value
        rows.append(
            SemicontinuityRow(
                kappa=kappa,
                alpha=alpha,
                od_value=od,
                constant_until=constant_until,
                probe_kappa=probe_kappa,
                probe_od=probe_od,
            )
        )
    monotone = all(rows[i].od_value >= rows[i + 1].od_value for i in range(len(rows) - 1))
    right_cont = all(r.right_continuous for r in rows)
    return SemicontinuityProfile(
        screen=screen,
        rows=tuple(rows),
        monotone_nonincreasing=monotone,
        right_continuous=right_cont,
    )
