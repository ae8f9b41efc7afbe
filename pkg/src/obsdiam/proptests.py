"""Randomized property suites, runnable from the CLI or from tests.

Each suite is a pure function of (seed, count): it draws instances from
randgen and checks one exact inequality or identity per case.  A violated
property is recorded as a failure with enough detail to replay; an exception
escaping a case would mean a library bug and is allowed to propagate.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .compression import anchor_sequence, clamp_construct
from .errors import DomainError
from .measures import partial_diameter, pd_profile, push_forward
from .mmspace import FULL_LINE, Interval
from .observable import (
    observable_diameter,
    od_grid_oracle,
    verify_revised_inequality,
)
from .plmaps import PiecewiseLinearMap
from .prokhorov import check_pd_transfer, measurement_cloud
from .randgen import (
    jittered_pair,
    random_affine,
    random_alpha,
    random_lipschitz_pl,
    random_measure,
    random_space,
)

__all__ = ["SUITE_NAMES", "CaseFailure", "SuiteReport", "run_suite"]


@dataclass(frozen=True)
class CaseFailure:
    index: int
    detail: str

    def to_json_dict(self) -> dict:
        return {"index": self.index, "detail": self.detail}


@dataclass(frozen=True)
class SuiteReport:
    suite: str
    seed: int
    count: int
    failures: tuple

    @property
    def passed(self) -> int:
        return self.count - len(self.failures)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json_dict(self) -> dict:
        return {
            "suite": self.suite,
            "seed": self.seed,
            "count": self.count,
            "passed": self.passed,
            "ok": self.ok,
            "failures": [f.to_json_dict() for f in self.failures],
        }


def _case_lipschitz_reduction(rng: random.Random):
    mu = random_measure(rng)
    f = random_lipschitz_pl(rng)
    alpha = random_alpha(rng)
    lhs = partial_diameter(push_forward(mu, f), alpha).value
    rhs = partial_diameter(mu, alpha).value
    if lhs > rhs:
        return f"image pd {lhs} exceeds source pd {rhs} at alpha={alpha}"
    return None


def _case_affine_scaling(rng: random.Random):
    mu = random_measure(rng)
    f = random_affine(rng)
    alpha = random_alpha(rng)
    slope = f.slopes()[0]
    lhs = partial_diameter(push_forward(mu, f), alpha).value
    rhs = abs(slope) * partial_diameter(mu, alpha).value
    if lhs != rhs:
        return f"affine slope {slope}: image pd {lhs} != |s|*pd {rhs} at alpha={alpha}"
    return None


def _case_prokhorov_transfer(rng: random.Random):
    epsilon = rng.choice([Fraction(1, 20), Fraction(1, 10), Fraction(1, 4), Fraction(1, 2)])
    alpha = random_alpha(rng)
    mu, nu = jittered_pair(rng, epsilon)
    report = check_pd_transfer(mu, nu, alpha, epsilon)
    if not report.applicable:
        return f"jittered pair not within epsilon={epsilon}: distance {report.distance}"
    if report.holds is not True:
        return (
            f"transfer bound failed: pd {report.lhs} > {report.bound} "
            f"(alpha={alpha}, epsilon={epsilon})"
        )
    return None


def _case_clamp_equality(rng: random.Random):
    mu = random_measure(rng)
    alpha = random_alpha(rng)
    radius = rng.choice([Fraction(1, 2), Fraction(1), Fraction(10)])
    f = clamp_construct(mu, alpha, radius)
    if not f.is_one_lipschitz():
        return f"clamp output not 1-Lipschitz: slopes {f.slopes()}"
    lo, hi = f.bounds()
    limit = radius / alpha
    if lo is None or hi is None or lo < -limit or hi > limit:
        return f"clamp range [{lo}, {hi}] escapes [-{limit}, {limit}]"
    got = partial_diameter(push_forward(mu, f), alpha).value
    want = min(radius, partial_diameter(mu, alpha).value)
    if got != want:
        return f"clamped pd {got} != min(R, pd) {want} (alpha={alpha}, R={radius})"
    return None


def _case_anchor_internals(rng: random.Random):
    alpha = random_alpha(rng)
    mu = random_measure(rng)
    for _ in range(8):
        if partial_diameter(mu, alpha).value > 0:
            break
        mu = random_measure(rng)
    r = partial_diameter(mu, alpha).value
    if r == 0:
        return None  # all draws were alpha-concentrated; nothing to check
    unit = push_forward(mu, PiecewiseLinearMap.affine(Fraction(1) / r, 0))
    seq = anchor_sequence(unit, alpha)
    if seq.count * alpha > 1:
        return f"{seq.count} anchors at alpha={alpha} break count*alpha <= 1"
    xs = seq.anchors
    for a, b in zip(xs, xs[1:]):
        if min(seq.x_infinity, a + 1) > b:
            return f"anchor step {a} -> {b} fell short of min(x_inf, {a}+1)"
    return None


def _case_revised_inequality(rng: random.Random):
    space = random_space(rng, max_points=6)
    kappa = random_alpha(rng)
    radius = rng.choice([Fraction(1, 2), Fraction(1), Fraction(2), Fraction(10)])
    report = verify_revised_inequality(space, kappa, radius)
    if not report.holds:
        return (
            f"min(R, od_full)={report.lhs} exceeded od through "
            f"{report.screen}={report.od_screen.value} (kappa={kappa}, R={radius})"
        )
    return None


def _case_oracle_agreement(rng: random.Random):
    space = random_space(rng, min_points=4, max_points=4)
    width = Fraction(rng.randint(8, 96), 64)
    center = Fraction(rng.randint(-32, 32), 16)
    screen = Interval(center - width / 2, center + width / 2)
    kappa = random_alpha(rng)
    step = Fraction(1, 64)
    exact = observable_diameter(space, screen, kappa).value
    grid = od_grid_oracle(space, screen, kappa, step)
    slack = exact - grid
    if slack < 0 or slack > 3 * step:
        return f"grid oracle {grid} vs exact {exact}: slack {slack} outside [0, 3/64]"
    return None


def _case_cloud_bound(rng: random.Random):
    space = random_space(rng, min_points=2, max_points=4)
    kappa = random_alpha(rng)
    radius = rng.choice([Fraction(1), Fraction(2)])
    base_seed = rng.randint(0, 10**6)
    alpha = 1 - kappa
    od = observable_diameter(space, Interval(-radius, radius), kappa).value
    previous = Fraction(0)
    for samples in (4, 16, 64):
        cloud = measurement_cloud(space, radius, samples, base_seed)
        best = max(partial_diameter(m, alpha).value for m in cloud.members)
        if best < previous:
            return f"cloud sup pd dropped from {previous} to {best} at {samples} samples"
        if best > od:
            return f"cloud sup pd {best} exceeds exact od {od} at {samples} samples"
        previous = best
    return None


def _case_profiles(rng: random.Random):
    mu = random_measure(rng)
    prof = pd_profile(mu)
    # direct agreement at random thresholds, including the jump points
    for _ in range(4):
        alpha = random_alpha(rng)
        if prof.evaluate(alpha) != partial_diameter(mu, alpha).value:
            return f"profile disagrees with direct pd at alpha={alpha}"
    for t, v in prof.steps:
        if prof.evaluate(t) != v:
            return f"profile not left-continuous at threshold {t}"
        if prof.evaluate(t) != partial_diameter(mu, t).value:
            return f"profile disagrees with direct pd at threshold {t}"
    a1, a2 = sorted((random_alpha(rng), random_alpha(rng)))
    if prof.evaluate(a1) > prof.evaluate(a2):
        return f"profile not monotone between {a1} and {a2}"
    return None


_SUITES = {
    "lipschitz-reduction": _case_lipschitz_reduction,
    "affine-scaling": _case_affine_scaling,
    "prokhorov-transfer": _case_prokhorov_transfer,
    "clamp-equality": _case_clamp_equality,
    "anchor-internals": _case_anchor_internals,
    "revised-inequality": _case_revised_inequality,
    "oracle-agreement": _case_oracle_agreement,
    "cloud-bound": _case_cloud_bound,
    "profiles": _case_profiles,
}

SUITE_NAMES = tuple(_SUITES)


def run_suite(name: str, seed: int, count: int) -> SuiteReport:
    """Run `count` seeded cases of one named suite."""
    if name not in _SUITES:
        raise DomainError(
            f"unknown suite {name!r}; available: {', '.join(SUITE_NAMES)}"
        )
    if count < 1:
        raise DomainError(f"count must be >= 1, got {count}")
    case = _SUITES[name]
    rng = random.Random(seed)
    failures = []
    for index in range(count):
        detail = case(rng)
        if detail is not None:
            failures.append(CaseFailure(index=index, detail=detail))
    return SuiteReport(suite=name, seed=seed, count=count, failures=tuple(failures))
