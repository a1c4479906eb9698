"""Posterior odds that a specific tomb belongs to a hypothesized family.

Two hypotheses compete to explain the observed name multisets: under the
null the names are i.i.d. draws from the onomasticon, under the
alternative they are produced by drawing members of a hypothesized family
roster with probabilities proportional to per-person weights, without
replacement. Genders are treated separately and multiply. The posterior
combines the likelihood ratio with prior odds spread over all candidate
tombs, optionally boosted by a factor for an unusual name rendition.

Roster semantics:

* A person with infinite weight is in the tomb for sure: forced draws
  happen first and each must consume one inscription bearing the person's
  broad name, otherwise the likelihood is 0.
* The "others" entry lumps all unlisted persons. It is modeled as an
  inexhaustible pool (drawing an "other" does not deplete its weight),
  and each drawn "other" bears a name drawn from the gender-conditional
  onomasticon distribution.
* Weights matter only up to a common positive scale.

Everything is exact rational arithmetic; convert to float at the edges.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import IO, Iterable, Mapping, Sequence

from .onomasticon import (
    GENDERS,
    MALE,
    FEMALE,
    Onomasticon,
    parse_gender,
)

NEUTRAL = "neutral"
NEUTRAL_RENDITIONS = "neutral_renditions"
OPTIMISTIC = "optimistic"
SCENARIOS = (NEUTRAL, NEUTRAL_RENDITIONS, OPTIMISTIC)


@dataclass(frozen=True)
class PriorSpec:
    """Prior over tombs: P(family has a tomb) = t, spread over n_tombs."""

    n_tombs: int = 1100
    t: Fraction = Fraction(1)

    def __post_init__(self) -> None:
        object.__setattr__(self, "t", Fraction(self.t))
        if self.n_tombs < 1:
            raise ValueError("n_tombs must be >= 1")
        if not 0 <= self.t <= 1:
            raise ValueError(f"t must be in [0,1], got {self.t}")
        if Fraction(self.t, self.n_tombs) >= 1:
            raise ValueError("t / n_tombs must be < 1")


@dataclass(frozen=True)
class PersonWeight:
    """A roster member: identifier, broad name with gender, draw weight.

    weight None means infinite (the person is in the tomb for sure).
    """

    person: str
    broad_name: tuple[str, str]
    weight: Fraction | None

    def __post_init__(self) -> None:
        if self.broad_name[1] not in GENDERS:
            raise ValueError(f"gender must be one of {GENDERS}, got {self.broad_name[1]!r}")
        if self.weight is not None:
            object.__setattr__(self, "weight", Fraction(self.weight))
            if self.weight < 0:
                raise ValueError(f"weight for {self.person!r} must be >= 0")

    @property
    def forced(self) -> bool:
        return self.weight is None


@dataclass(frozen=True)
class WeightTable:
    """Hypothesized family roster plus lumped per-gender "others" weights."""

    persons: tuple[PersonWeight, ...]
    others_weight_male: Fraction = Fraction(0)
    others_weight_female: Fraction = Fraction(0)
    scenario_label: str = "custom"

    def __post_init__(self) -> None:
        object.__setattr__(self, "others_weight_male", Fraction(self.others_weight_male))
        object.__setattr__(self, "others_weight_female", Fraction(self.others_weight_female))
        if self.others_weight_male < 0 or self.others_weight_female < 0:
            raise ValueError("others weights must be >= 0")
        ids = [p.person for p in self.persons]
        if len(set(ids)) != len(ids):
            raise ValueError("person identifiers must be unique")

    def persons_of(self, gender: str) -> tuple[PersonWeight, ...]:
        return tuple(p for p in self.persons if p.broad_name[1] == gender)

    def others_weight(self, gender: str) -> Fraction:
        return self.others_weight_male if gender == MALE else self.others_weight_female

    def scaled(self, factor: Fraction) -> "WeightTable":
        """Same roster with every finite weight and others weight scaled."""
        factor = Fraction(factor)
        if factor <= 0:
            raise ValueError("scale factor must be positive")
        return WeightTable(
            persons=tuple(
                PersonWeight(p.person, p.broad_name, None if p.forced else p.weight * factor)
                for p in self.persons
            ),
            others_weight_male=self.others_weight_male * factor,
            others_weight_female=self.others_weight_female * factor,
            scenario_label=self.scenario_label,
        )


@dataclass(frozen=True)
class TombInscriptions:
    """Observed broad-name multisets, one per gender, order-free."""

    male_names: tuple[str, ...] = ()
    female_names: tuple[str, ...] = ()

    def names_of(self, gender: str) -> tuple[str, ...]:
        return self.male_names if gender == MALE else self.female_names

    def counts_of(self, gender: str) -> Counter:
        return Counter(self.names_of(gender))


@dataclass(frozen=True)
class RenditionAdjustment:
    """Odds adjustment for observing a previously unseen name rendition.

    p_new_null is the chance of a new rendition under the population
    hypothesis, p_new_alt under the family hypothesis.
    interpretation_count records how many roster members the rendition
    could be read as; it justifies applying the adjustment regardless of
    which of them is matched and does not scale the factor.
    """

    p_new_null: Fraction = Fraction(1, 80)
    p_new_alt: Fraction = Fraction(1, 10)
    interpretation_count: int = 3

    def __post_init__(self) -> None:
        object.__setattr__(self, "p_new_null", Fraction(self.p_new_null))
        object.__setattr__(self, "p_new_alt", Fraction(self.p_new_alt))
        if not 0 < self.p_new_null <= 1 or not 0 < self.p_new_alt <= 1:
            raise ValueError("rendition probabilities must be in (0,1]")
        if self.interpretation_count < 1:
            raise ValueError("interpretation_count must be >= 1")


@dataclass(frozen=True)
class PosteriorResult:
    """A posterior together with every intermediate that produced it."""

    prior_odds: Fraction
    likelihood_ratio: Fraction | None  # None = infinite (null impossible)
    rendition_factor: Fraction
    posterior_odds: Fraction | None
    posterior: Fraction
    scenario_label: str = "custom"
    null_likelihood: Fraction | None = None
    alt_likelihood: Fraction | None = None


def prior_odds(p: PriorSpec) -> Fraction:
    """(t/N) / (1 - t/N)."""
    base = Fraction(p.t, p.n_tombs)
    return base / (1 - base)


def null_name_likelihood(insc: TombInscriptions, o: Onomasticon) -> Fraction:
    """Probability of the observed multisets under i.i.d. population draws.

    Per gender this is the multinomial probability of the unordered
    multiset, (k!/prod m_c!) * prod p_c^{m_c}, with p_c the
    gender-conditional name frequency; genders multiply. A name absent
    from the catalog makes the likelihood 0.
    """
    result = Fraction(1)
    for gender in GENDERS:
        counts = insc.counts_of(gender)
        coeff = _multiset_coefficient(counts)
        prob = Fraction(1)
        for name, m in counts.items():
            prob *= o.gender_frequency(name, gender) ** m
        result *= coeff * prob
    return result


def _multiset_coefficient(counts: Mapping[str, int]) -> int:
    import math

    coeff = math.factorial(sum(counts.values()))
    for m in counts.values():
        coeff //= math.factorial(m)
    return coeff


def set_draw_probability(
    weights: Sequence[Fraction | int],
    total: Fraction | int,
    drawn_subset: Iterable[int],
) -> Fraction:
    """Probability that |subset| weighted draws without replacement are
    exactly the given subset, in any order.

    ``total`` is the full pool mass and may exceed the sum of the listed
    weights (extra mass stands for never-drawn items such as an "others"
    lump). Each draw picks subset member i with probability w_i divided
    by the remaining total; the remaining total decreases by the weight
    of each drawn item.

    Computed by recursion over sub-subsets (2^k states) rather than
    summing k! orderings.
    """
    ws = [Fraction(w) for w in weights]
    if any(w < 0 for w in ws):
        raise ValueError("weights must be nonnegative")
    total = Fraction(total)
    listed = sum(ws, Fraction(0))
    if total < listed:
        raise ValueError(f"total {total} is smaller than the summed weights {listed}")
    indices = sorted(set(drawn_subset))
    if any(i < 0 or i >= len(ws) for i in indices):
        raise ValueError("drawn_subset indices out of range")

    start_mask = 0
    for i in indices:
        start_mask |= 1 << i

    memo: dict[int, Fraction] = {}

    def rec(mask: int, tot: Fraction) -> Fraction:
        if mask == 0:
            return Fraction(1)
        if tot <= 0:
            raise ValueError("remaining total is nonpositive with draws outstanding")
        if mask in memo:
            return memo[mask]
        acc = Fraction(0)
        m = mask
        while m:
            low = m & -m
            i = low.bit_length() - 1
            m ^= low
            if ws[i] != 0:
                acc += Fraction(ws[i], 1) / tot * rec(mask ^ low, tot - ws[i])
        memo[mask] = acc
        return acc

    return rec(start_mask, total)


def _draw_with_others(
    weights: Sequence[Fraction],
    others_weight: Fraction,
    mask: int,
    n_other_draws: int,
) -> Fraction:
    """Probability that len(mask)+n_other_draws sequential draws pick exactly
    the listed persons in ``mask`` plus that many "others", in any order.

    The pool holds every listed person (drawn ones leave, taking their
    weight with them) plus the inexhaustible others lump whose weight
    never depletes.
    """
    base_total = others_weight + sum(weights, Fraction(0))
    memo: dict[tuple[int, int], Fraction] = {}

    def rec(rem_mask: int, j: int, tot: Fraction) -> Fraction:
        if rem_mask == 0 and j == 0:
            return Fraction(1)
        if tot <= 0:
            return Fraction(0)
        key = (rem_mask, j)
        if key in memo:
            return memo[key]
        acc = Fraction(0)
        m = rem_mask
        while m:
            low = m & -m
            i = low.bit_length() - 1
            m ^= low
            if weights[i] != 0:
                acc += weights[i] / tot * rec(rem_mask ^ low, j, tot - weights[i])
        if j > 0 and others_weight > 0:
            acc += others_weight / tot * rec(rem_mask, j - 1, tot)
        memo[key] = acc
        return acc

    return rec(mask, n_other_draws, base_total)


def draw_outcome_probability(
    w: WeightTable,
    persons: Iterable[str],
    others: int = 0,
    gender: str | None = None,
) -> Fraction:
    """Exact probability of one weighted-draw outcome: exactly these
    listed persons plus ``others`` draws from the others lump.

    The draw count is len(persons) + others. Forced persons are always
    drawn, so an outcome that omits one has probability 0. With gender
    None the whole roster forms a single pool and the two others weights
    merge, matching montecarlo.simulate_weighted_draw.
    """
    if others < 0:
        raise ValueError("others must be >= 0")
    if gender is None:
        pool = w.persons
        others_weight = w.others_weight_male + w.others_weight_female
    else:
        pool = w.persons_of(gender)
        others_weight = w.others_weight(gender)
    wanted = set(persons)
    by_id = {p.person: p for p in pool}
    unknown = wanted - set(by_id)
    if unknown:
        raise ValueError(f"unknown persons {sorted(unknown)}")
    if others > 0 and others_weight == 0:
        return Fraction(0)
    for p in pool:
        if p.forced and p.person not in wanted:
            return Fraction(0)
    finite = [p for p in pool if not p.forced]
    mask = 0
    for i, p in enumerate(finite):
        if p.person in wanted:
            mask |= 1 << i
    return _draw_with_others(tuple(p.weight for p in finite), others_weight, mask, others)


def _gender_alt_likelihood(
    observed: Counter,
    persons: Sequence[PersonWeight],
    others_weight: Fraction,
    o: Onomasticon,
    gender: str,
) -> Fraction:
    obs = Counter(observed)

    # Forced persons first: each must consume one matching inscription.
    finite: list[PersonWeight] = []
    for p in persons:
        if p.forced:
            name = p.broad_name[0]
            if obs[name] <= 0:
                return Fraction(0)
            obs[name] -= 1
        else:
            finite.append(p)
    obs = +obs  # drop zero entries
    k = sum(obs.values())

    weights = tuple(p.weight for p in finite)  # all finite, all in the pool
    names = tuple(p.broad_name[0] for p in finite)
    n = len(finite)

    # Persons with zero weight or a name not present in the residual can
    # never appear in a contributing draw set; they stay in the pool but
    # need not be enumerated.
    candidates = [
        i for i in range(n) if weights[i] != 0 and obs.get(names[i], 0) > 0
    ]

    total = Fraction(0)
    for sub in range(1 << len(candidates)):
        mask = 0
        used: Counter = Counter()
        size = 0
        for b in range(len(candidates)):
            if (sub >> b) & 1:
                i = candidates[b]
                mask |= 1 << i
                used[names[i]] += 1
                size += 1
        if size > k:
            continue
        if any(used[nm] > obs.get(nm, 0) for nm in used):
            continue
        j = k - size
        if j > 0 and others_weight == 0:
            continue
        residual = obs - used
        emission = Fraction(_multiset_coefficient(residual))
        for nm, c in residual.items():
            emission *= o.gender_frequency(nm, gender) ** c
        if emission == 0:
            continue
        total += _draw_with_others(weights, others_weight, mask, j) * emission
    return total


def alt_name_likelihood(
    insc: TombInscriptions, w: WeightTable, o: Onomasticon
) -> Fraction:
    """Probability of the observed multisets under the family hypothesis.

    Per gender: forced persons consume matching inscriptions (or the
    likelihood is 0); the rest of the inscriptions are explained by every
    way of drawing name-compatible listed persons plus "others", each
    drawn "other" bearing an observed name with its gender-conditional
    catalog probability. Genders multiply.
    """
    result = Fraction(1)
    for gender in GENDERS:
        result *= _gender_alt_likelihood(
            insc.counts_of(gender),
            w.persons_of(gender),
            w.others_weight(gender),
            o,
            gender,
        )
        if result == 0:
            return result
    return result


def rendition_odds_factor(r: RenditionAdjustment) -> Fraction:
    """p_new_alt / p_new_null."""
    return Fraction(r.p_new_alt) / Fraction(r.p_new_null)


def posterior(
    prior: PriorSpec,
    lr: Fraction | None,
    rendition_factor: Fraction | int = 1,
    scenario_label: str = "custom",
    null_likelihood: Fraction | None = None,
    alt_likelihood: Fraction | None = None,
) -> PosteriorResult:
    """Combine prior odds, likelihood ratio and rendition factor.

    lr None flags an infinite ratio (alternative possible, null
    impossible), which drives the posterior to 1.
    """
    po = prior_odds(prior)
    factor = Fraction(rendition_factor)
    if factor < 0:
        raise ValueError("rendition factor must be >= 0")
    if lr is None:
        if po == 0 or factor == 0:
            raise ValueError("infinite likelihood ratio with zero prior odds or factor")
        odds = None
        post = Fraction(1)
    else:
        lr = Fraction(lr)
        if lr < 0:
            raise ValueError("likelihood ratio must be >= 0")
        odds = po * lr * factor
        post = odds / (1 + odds)
    return PosteriorResult(
        prior_odds=po,
        likelihood_ratio=lr,
        rendition_factor=factor,
        posterior_odds=odds,
        posterior=post,
        scenario_label=scenario_label,
        null_likelihood=null_likelihood,
        alt_likelihood=alt_likelihood,
    )


@dataclass(frozen=True)
class BayesFixtures:
    """Everything a scenario run needs, loaded once."""

    onomasticon: Onomasticon
    weight_tables: Mapping[str, WeightTable]
    inscriptions: TombInscriptions
    prior: PriorSpec = field(default_factory=PriorSpec)
    rendition: RenditionAdjustment = field(default_factory=RenditionAdjustment)


def run_bayes_scenario(scenario: str, fixtures: BayesFixtures) -> PosteriorResult:
    """Wire prior, likelihoods and rendition factor for a named scenario.

    neutral and neutral_renditions use the "neutral" weight table;
    optimistic uses the "optimistic" one. Only neutral_renditions applies
    the rendition odds factor.
    """
    if scenario not in SCENARIOS:
        raise ValueError(f"unknown scenario {scenario!r}; expected one of {SCENARIOS}")
    table_key = OPTIMISTIC if scenario == OPTIMISTIC else NEUTRAL
    try:
        table = fixtures.weight_tables[table_key]
    except KeyError:
        raise ValueError(f"fixtures are missing the {table_key!r} weight table") from None

    null = null_name_likelihood(fixtures.inscriptions, fixtures.onomasticon)
    alt = alt_name_likelihood(fixtures.inscriptions, table, fixtures.onomasticon)
    if null == 0:
        if alt == 0:
            raise ValueError("observed inscriptions are impossible under both hypotheses")
        lr: Fraction | None = None
    else:
        lr = alt / null
    factor = rendition_odds_factor(fixtures.rendition) if scenario == NEUTRAL_RENDITIONS else Fraction(1)
    return posterior(
        fixtures.prior,
        lr,
        factor,
        scenario_label=scenario,
        null_likelihood=null,
        alt_likelihood=alt,
    )


# ---------------------------------------------------------------------------
# File formats
#
# Weight table, one entry per line:
#   <person>|<m|f>|<broad_name>|<weight>      weight: p/q, decimal, inf or 0
#   others|<m|f>|<weight>
#   label|<scenario_label>                    optional
#
# Inscriptions, one per line:
#   <broad_name>|<m|f>
#
# '#' starts a comment line; blank lines are ignored.
# ---------------------------------------------------------------------------


def parse_weight(text: str) -> Fraction | None:
    """Parse a weight: 'inf' means infinite (forced member)."""
    text = text.strip()
    if text.lower() in ("inf", "infinity", "oo"):
        return None
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"bad weight {text!r} (expected p/q, decimal, inf or 0)") from None
    if value < 0:
        raise ValueError(f"weight must be >= 0, got {text!r}")
    return value


def load_weight_table(source: IO[str] | str, label: str = "custom") -> WeightTable:
    text = source if isinstance(source, str) else source.read()
    persons: list[PersonWeight] = []
    others = {MALE: Fraction(0), FEMALE: Fraction(0)}
    others_seen: set[str] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = [p.strip() for p in line.split("|")]
        try:
            if parts[0] == "label" and len(parts) == 2:
                label = parts[1]
            elif parts[0] == "others":
                if len(parts) != 3:
                    raise ValueError("expected 'others|<m|f>|<weight>'")
                gender = parse_gender(parts[1])
                if gender in others_seen:
                    raise ValueError(f"duplicate others entry for {gender}")
                others_seen.add(gender)
                weight = parse_weight(parts[2])
                if weight is None:
                    raise ValueError("others weight cannot be infinite")
                others[gender] = weight
            elif len(parts) == 4:
                gender = parse_gender(parts[1])
                persons.append(
                    PersonWeight(
                        person=parts[0],
                        broad_name=(parts[2], gender),
                        weight=parse_weight(parts[3]),
                    )
                )
            else:
                raise ValueError("expected '<person>|<m|f>|<broad_name>|<weight>'")
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    return WeightTable(
        persons=tuple(persons),
        others_weight_male=others[MALE],
        others_weight_female=others[FEMALE],
        scenario_label=label,
    )


def load_inscriptions(source: IO[str] | str) -> TombInscriptions:
    text = source if isinstance(source, str) else source.read()
    males: list[str] = []
    females: list[str] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = [p.strip() for p in line.split("|")]
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected '<broad_name>|<m|f>'")
        try:
            gender = parse_gender(parts[1])
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
        (males if gender == MALE else females).append(parts[0])
    return TombInscriptions(male_names=tuple(males), female_names=tuple(females))
