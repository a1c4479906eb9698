"""Multiple-look p-values for interesting tombs.

The question answered here is not "how likely is this exact tomb?" but
"how likely is it that, among N excavated tombs, at least one would have
looked interesting?" A tomb counts as interesting when it contains the
anchor name and at least ``overlap_threshold`` of its remaining ossuaries
bear names from a target set.

Model, per tomb with n ossuaries: one dedicated ossuary carries the
anchor with probability p_anchor, the other n-1 draw names independently
from the population, so

    pi = p_anchor * P(Y >= threshold),   Y ~ Binomial(n - 1, nu)

where nu is the single-draw probability of landing in the target set.
Across tombs, p = 1 - prod_i (1 - pi_i). Everything is computed in exact
rational arithmetic; rounding happens only at display time, because the
product formula amplifies rounding of the per-tomb pi.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .onomasticon import MALE, Onomasticon, RatioModel, name_probability, target_set_nu

SINGLE_NAME = "single_name"
COMPOUND = "compound"


@dataclass(frozen=True)
class TargetSetSpec:
    """The set of names whose co-occurrence sparks interest."""

    names: frozenset[tuple[str, str]]
    overlap_threshold: int = 3
    variant_label: str = "custom"

    def __post_init__(self) -> None:
        if self.overlap_threshold < 1:
            raise ValueError("overlap_threshold must be >= 1")


@dataclass(frozen=True)
class AnchorSpec:
    """The anchor name required before a tomb counts as interesting.

    In compound mode the anchor is a name-plus-patronym reading and its
    probability is the product of the two name probabilities.
    """

    mode: str = SINGLE_NAME
    primary_name: str = ""
    compound_name: str | None = None

    def __post_init__(self) -> None:
        if self.mode not in (SINGLE_NAME, COMPOUND):
            raise ValueError(f"anchor mode must be {SINGLE_NAME!r} or {COMPOUND!r}")
        if not self.primary_name:
            raise ValueError("primary_name must be nonempty")
        if self.mode == COMPOUND and not self.compound_name:
            raise ValueError("compound mode requires compound_name")

    @property
    def label(self) -> str:
        if self.mode == COMPOUND:
            return f"{self.primary_name}+{self.compound_name}"
        return self.primary_name


@dataclass(frozen=True)
class TombPopulation:
    """How many tombs are in play and how many ossuaries each holds."""

    n_tombs: int
    ossuaries_per_tomb: int
    per_tomb_overrides: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        if self.n_tombs < 1:
            raise ValueError("n_tombs must be >= 1")
        if self.ossuaries_per_tomb < 1:
            raise ValueError("ossuaries_per_tomb must be >= 1")
        for idx, n_i in self.per_tomb_overrides:
            if not 0 <= idx < self.n_tombs:
                raise ValueError(f"override index {idx} out of range")
            if n_i < 1:
                raise ValueError(f"override ossuary count must be >= 1, got {n_i}")

    def ossuary_counts(self) -> list[int]:
        counts = [self.ossuaries_per_tomb] * self.n_tombs
        for idx, n_i in self.per_tomb_overrides:
            counts[idx] = n_i
        return counts


@dataclass(frozen=True)
class GridRow:
    variant_label: str
    ratio_kind: str
    anchor_mode: str
    anchor_label: str
    n_tombs: int
    nu: Fraction
    pi: Fraction
    p_value: Fraction


@dataclass(frozen=True)
class PValueGrid:
    rows: tuple[GridRow, ...]

    def __post_init__(self) -> None:
        for row in self.rows:
            for value in (row.nu, row.pi, row.p_value):
                if not 0 <= value <= 1:
                    raise ValueError(f"grid value {value} outside [0,1]")


def binomial_tail(n: int, prob: Fraction | int, k: int) -> Fraction:
    """P(Y >= k) for Y ~ Binomial(n, prob), by direct summation of exact terms."""
    if n < 0 or k < 0:
        raise ValueError("n and k must be >= 0")
    p = Fraction(prob)
    if not 0 <= p <= 1:
        raise ValueError(f"prob must be in [0,1], got {p}")
    if k == 0:
        return Fraction(1)
    if k > n:
        return Fraction(0)
    q = 1 - p
    return sum(
        (math.comb(n, j) * p**j * q ** (n - j) for j in range(k, n + 1)), Fraction(0)
    )


def anchor_probability(o: Onomasticon, anchor: AnchorSpec, ratio: RatioModel) -> Fraction:
    """Single-draw probability of the anchor; compound anchors multiply."""
    p = name_probability(o, anchor.primary_name, MALE, ratio)
    if anchor.mode == COMPOUND:
        assert anchor.compound_name is not None
        p *= name_probability(o, anchor.compound_name, MALE, ratio)
    return p


def tomb_interest_probability(
    n: int, nu: Fraction | int, p_anchor: Fraction | int, threshold: int = 3
) -> Fraction:
    """Probability that one tomb of n ossuaries triggers interest."""
    if n < 1:
        raise ValueError("n must be >= 1")
    p_anchor = Fraction(p_anchor)
    if not 0 <= p_anchor <= 1:
        raise ValueError(f"p_anchor must be in [0,1], got {p_anchor}")
    return p_anchor * binomial_tail(n - 1, nu, threshold)


def multi_tomb_pvalue(pis: Iterable[Fraction | int]) -> Fraction:
    """P(at least one of the tombs is interesting), assuming independence.

    Computed as 1 - prod(1 - pi_i). Repeated values are collapsed into
    exact powers: with hundreds of identical tombs that is far cheaper
    than multiplying the ever-growing rationals one at a time.
    """
    groups: dict[Fraction, int] = {}
    for pi in pis:
        pi = Fraction(pi)
        if not 0 <= pi <= 1:
            raise ValueError(f"per-tomb probability must be in [0,1], got {pi}")
        groups[pi] = groups.get(pi, 0) + 1
    miss = Fraction(1)
    for pi, count in groups.items():
        miss *= (1 - pi) ** count
    return 1 - miss


Scenario = tuple[TargetSetSpec, RatioModel, AnchorSpec, TombPopulation]


def run_scenario_grid(o: Onomasticon, scenarios: Sequence[Scenario]) -> PValueGrid:
    """Evaluate nu, pi and the multi-tomb p-value for each scenario.

    Rows come back in input order. The reported pi is the per-tomb value
    at the default ossuary count; overridden tombs still contribute their
    own pi to the p-value product.
    """
    rows = []
    for target, ratio, anchor, population in scenarios:
        nu = target_set_nu(o, target.names, ratio)
        p_anchor = anchor_probability(o, anchor, ratio)
        by_count = {
            n_i: tomb_interest_probability(n_i, nu, p_anchor, target.overlap_threshold)
            for n_i in set(population.ossuary_counts())
        }
        pi = by_count.setdefault(
            population.ossuaries_per_tomb,
            tomb_interest_probability(
                population.ossuaries_per_tomb, nu, p_anchor, target.overlap_threshold
            ),
        )
        pis = [by_count[n_i] for n_i in population.ossuary_counts()]
        rows.append(
            GridRow(
                variant_label=target.variant_label,
                ratio_kind=ratio.kind,
                anchor_mode=anchor.mode,
                anchor_label=anchor.label,
                n_tombs=population.n_tombs,
                nu=nu,
                pi=pi,
                p_value=multi_tomb_pvalue(pis),
            )
        )
    return PValueGrid(rows=tuple(rows))
