"""Fidelity between a true histogram and a synthetic release.

The score multiplies the probability mass each side places on the common
categories: with I = activeDomain(true) intersect categories(synth), and each
side normalized over its own full support,

    F = mass_true(I) * mass_synth(I)

F = 1 exactly when the two category sets agree (every released category is a
true active one and nothing was lost); F = 0 when they are disjoint. Counts
on either side only matter through their normalized masses, so the score is
scale-invariant.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Histogram, NoisyHistogram, normalize


@dataclass(frozen=True)
class FidelityScore:
    value: float
    intersection_size: int
    true_mass_in_intersection: float
    synth_mass_in_intersection: float


def fidelity(true_h: Histogram, synth_h: Histogram | NoisyHistogram) -> FidelityScore:
    """Score a release against the true histogram (see module docstring).

    An empty synthetic release scores 0, it is not an error.
    """
    true_dist = normalize(true_h)
    if len(synth_h) == 0:
        return FidelityScore(0.0, 0, 0.0, 0.0)
    synth_dist = normalize(synth_h)
    intersection = true_h.active_domain() & set(synth_dist)
    true_mass = sum(true_dist[c] for c in intersection)
    synth_mass = sum(synth_dist[c] for c in intersection)
    return FidelityScore(true_mass * synth_mass, len(intersection), true_mass, synth_mass)


def fidelity_pointwise(true_h: Histogram, synth_h: Histogram | NoisyHistogram) -> float:
    """Alternative reading: sum over the intersection of p_true * p_synth.

    Rewards matching the shape of the distribution, not just covering its
    support; kept separate because its value is not the product of the two
    intersection masses.
    """
    true_dist = normalize(true_h)
    if len(synth_h) == 0:
        return 0.0
    synth_dist = normalize(synth_h)
    intersection = true_h.active_domain() & set(synth_dist)
    return sum(true_dist[c] * synth_dist[c] for c in intersection)
