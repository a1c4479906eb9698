"""Single-draw demonstration of rendition-splitting p-value deflation.

A relevance-and-rareness statistic scores an outcome by its null
probability when the outcome is family-relevant and by 0 otherwise; the
p-value sums the null probabilities of relevant outcomes at least as
surprising as the observed one (ties included).

Splitting a broad name into rendition subcategories preserves total
probability but shrinks the observed outcome's score, so the p-value can
only go down even when every rendition stays relevant. The built-in
fixture shows the effect: 2/3 before splitting, 1/9 after.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence


@dataclass(frozen=True)
class DiscreteOutcomeSpace:
    """Finite outcome space with exact null probabilities summing to 1."""

    outcomes: tuple[str, ...]
    null_probs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.outcomes) != len(self.null_probs):
            raise ValueError("outcomes and null_probs must have the same length")
        if len(set(self.outcomes)) != len(self.outcomes):
            raise ValueError("outcomes must be unique")
        if any(p < 0 for p in self.null_probs):
            raise ValueError("null probabilities must be nonnegative")
        if sum(self.null_probs, Fraction(0)) != 1:
            raise ValueError("null probabilities must sum to exactly 1")

    def prob(self, outcome: str) -> Fraction:
        try:
            return self.null_probs[self.outcomes.index(outcome)]
        except ValueError:
            raise ValueError(f"unknown outcome {outcome!r}") from None


@dataclass(frozen=True)
class RelevanceSpec:
    """Which outcomes could be matched to the hypothesized family."""

    relevant: frozenset[str]

    def restricted_to(self, space: DiscreteOutcomeSpace) -> "RelevanceSpec":
        if not self.relevant.issubset(space.outcomes):
            extra = self.relevant.difference(space.outcomes)
            raise ValueError(f"relevant outcomes {sorted(extra)} not in the space")
        return self


def rr_statistic(space: DiscreteOutcomeSpace, rel: RelevanceSpec, outcome: str) -> Fraction:
    """Null probability if the outcome is relevant, else 0."""
    p = space.prob(outcome)
    return p if outcome in rel.relevant else Fraction(0)


def rr_pvalue(
    space: DiscreteOutcomeSpace, rel: RelevanceSpec, observed: str
) -> Fraction | None:
    """Sum of null probabilities over relevant outcomes scoring <= the observed.

    Returns None when the observed outcome is not relevant (score 0):
    such an observation has no surprise ordering and no p-value.
    """
    rel.restricted_to(space)
    observed_rr = rr_statistic(space, rel, observed)
    if observed_rr == 0:
        return None
    total = Fraction(0)
    for outcome in space.outcomes:
        rr = rr_statistic(space, rel, outcome)
        if 0 < rr <= observed_rr:
            total += space.prob(outcome)
    return total


def split_rendition(
    space: DiscreteOutcomeSpace,
    rel: RelevanceSpec,
    parent: str,
    parts: Sequence[tuple[str, Fraction]],
    part_relevance: Mapping[str, bool] | None = None,
) -> tuple[DiscreteOutcomeSpace, RelevanceSpec]:
    """Replace a broad outcome with rendition parts carrying fractional shares.

    Fractions must be positive and sum to exactly 1, so total probability
    is preserved. Parts inherit the parent's relevance unless overridden
    per part via ``part_relevance``.
    """
    parent_prob = space.prob(parent)
    if not parts:
        raise ValueError("parts must be nonempty")
    fractions = [f for _, f in parts]
    if any(f <= 0 for f in fractions):
        raise ValueError("part fractions must be positive")
    if sum(fractions, Fraction(0)) != 1:
        raise ValueError(f"part fractions must sum to 1, got {sum(fractions, Fraction(0))}")
    part_names = [name for name, _ in parts]
    if len(set(part_names)) != len(part_names):
        raise ValueError("part names must be unique")
    for name in part_names:
        if name != parent and name in space.outcomes:
            raise ValueError(f"part name {name!r} already present in the space")

    outcomes: list[str] = []
    probs: list[Fraction] = []
    for outcome, prob in zip(space.outcomes, space.null_probs):
        if outcome == parent:
            outcomes.extend(part_names)
            probs.extend(parent_prob * f for f in fractions)
        else:
            outcomes.append(outcome)
            probs.append(prob)

    parent_relevant = parent in rel.relevant
    relevance = part_relevance or {}
    relevant = set(rel.relevant) - {parent}
    for name in part_names:
        if relevance.get(name, parent_relevant):
            relevant.add(name)
    return (
        DiscreteOutcomeSpace(outcomes=tuple(outcomes), null_probs=tuple(probs)),
        RelevanceSpec(relevant=frozenset(relevant)),
    )


def demo_fixture() -> tuple[DiscreteOutcomeSpace, RelevanceSpec, str]:
    """Three names A, B, C at 1/3 each; A and B relevant; A observed."""
    space = DiscreteOutcomeSpace(
        outcomes=("A", "B", "C"),
        null_probs=(Fraction(1, 3), Fraction(1, 3), Fraction(1, 3)),
    )
    return space, RelevanceSpec(relevant=frozenset({"A", "B"})), "A"


DEMO_SPLIT_PARTS: tuple[tuple[str, Fraction], ...] = (
    ("A1", Fraction(1, 3)),
    ("A2", Fraction(2, 3)),
)
