"""Shared test plumbing: brute-force oracles and hypothesis strategies.

The oracles restate the definitions as directly as possible (quadratic scans,
full subset enumeration) so the library's cleverer algorithms are checked
against something naive.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from hypothesis import strategies as st

from obsdiam import DiscreteMeasure


# -- brute-force oracles -------------------------------------------------------


def pd_window_scan(mu: DiscreteMeasure, alpha) -> Fraction:
    """Definition-level partial diameter: try every window of atoms."""
    alpha = Fraction(alpha)
    if alpha <= 0:
        return Fraction(0)
    atoms = mu.atoms
    best = None
    for i in range(len(atoms)):
        acc = Fraction(0)
        for j in range(i, len(atoms)):
            acc += atoms[j][1]
            if acc >= alpha:
                width = atoms[j][0] - atoms[i][0]
                if best is None or width < best:
                    best = width
                break  # wider windows from this i are never better
    assert best is not None
    return best


def heavy_subsets_bruteforce(space, alpha):
    """All inclusion-minimal index subsets with mass >= alpha."""
    n = len(space)
    heavy = [
        frozenset(combo)
        for size in range(1, n + 1)
        for combo in combinations(range(n), size)
        if space.mass_of(combo) >= alpha
    ]
    minimal = [
        s for s in heavy if not any(other < s for other in heavy)
    ]
    return sorted((tuple(sorted(s)) for s in minimal), key=lambda t: (len(t), t))


def prokhorov_feasible(mu: DiscreteMeasure, nu: DiscreteMeasure, eps: Fraction) -> bool:
    """Direct check of the one-sided condition at tolerance eps: every subset
    of nu's support must satisfy mu(open eps-neighborhood) >= nu(A) - eps."""
    nu_atoms = nu.atoms
    for size in range(1, len(nu_atoms) + 1):
        for combo in combinations(nu_atoms, size):
            positions = [p for p, _ in combo]
            nu_mass = sum(m for _, m in combo)
            reached = sum(
                m
                for p, m in mu.atoms
                if min(abs(p - a) for a in positions) < eps
            )
            if reached < nu_mass - eps:
                return False
    return True


# -- hypothesis strategies -------------------------------------------------------


@st.composite
def rational_measures(draw, max_atoms: int = 6):
    """Measures with dyadic positions and exact rational masses."""
    n = draw(st.integers(min_value=1, max_value=max_atoms))
    positions = draw(
        st.lists(
            st.integers(min_value=-40, max_value=40),
            min_size=n,
            max_size=n,
            unique=True,
        )
    )
    den = draw(st.sampled_from([1, 2, 4]))
    weights = draw(
        st.lists(st.integers(min_value=1, max_value=9), min_size=n, max_size=n)
    )
    total = sum(weights)
    return DiscreteMeasure(
        (Fraction(p, den), Fraction(w, total)) for p, w in zip(positions, weights)
    )


@st.composite
def alphas(draw):
    den = draw(st.integers(min_value=2, max_value=20))
    num = draw(st.integers(min_value=1, max_value=den - 1))
    return Fraction(num, den)
