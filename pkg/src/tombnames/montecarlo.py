"""Seeded simulation oracle for the exact calculations.

Every estimator here replays the corresponding generative model by brute
force and reports a point estimate with its binomial standard error, so
the exact rational results elsewhere in the package can be checked
against an independent computation path.

Reproducibility contract: trial i draws its variates from a dedicated,
counter-addressed segment of a Philox stream determined only by
(seed, i). Batch size therefore cannot change any result, and a fixed
(seed, trials, config) triple gives bit-identical estimates regardless
of how the work is chunked. One Philox counter step yields 4 doubles;
each trial owns a whole number of counter blocks.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .bayesian import TombInscriptions, WeightTable
from .frequentist import COMPOUND, AnchorSpec, TargetSetSpec, TombPopulation
from .onomasticon import GENDERS, MALE, Onomasticon, RatioModel, name_probability

_DOUBLES_PER_BLOCK = 4


@dataclass(frozen=True)
class SimConfig:
    trials: int = 100_000
    seed: int = 2008
    batch_size: int = 8192

    def __post_init__(self) -> None:
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 bits")
        if self.batch_size < 1:
            raise ValueError("batch_size must be >= 1")


@dataclass(frozen=True)
class SimEstimate:
    point: float
    standard_error: float
    trials: int
    seed: int

    def within(self, exact: Fraction | float, n_se: float = 3.0) -> bool:
        """True if the estimate lies within n_se standard errors of exact.

        The yardstick is the binomial standard error at the exact value,
        not at the point estimate: for rare outcomes the point-based
        error collapses toward 0 and would reject good estimates. An
        exact value of 0 or 1 therefore demands an exact match.
        """
        e = float(exact)
        se = math.sqrt(max(e * (1.0 - e), 0.0) / self.trials)
        return abs(self.point - e) <= n_se * se


@dataclass(frozen=True)
class DrawOutcome:
    """One observed result of a without-replacement draw: which listed
    persons came out, plus how many draws went to the others lump."""

    persons: frozenset[str]
    others: int = 0

    def label(self) -> str:
        parts = sorted(self.persons)
        if self.others:
            parts.append(f"others x{self.others}")
        return "{" + ", ".join(parts) + "}" if parts else "{}"


def _estimate(successes: int, cfg: SimConfig) -> SimEstimate:
    point = successes / cfg.trials
    se = math.sqrt(point * (1.0 - point) / cfg.trials)
    return SimEstimate(point=point, standard_error=se, trials=cfg.trials, seed=cfg.seed)


def trial_uniforms(seed: int, first_trial: int, n_trials: int, draws_per_trial: int) -> np.ndarray:
    """Uniform variates for trials [first_trial, first_trial + n_trials).

    Row t holds the draws of absolute trial first_trial + t, taken from
    that trial's own counter blocks, so the same trial always sees the
    same variates whatever the batching.
    """
    if draws_per_trial == 0:
        return np.empty((n_trials, 0), dtype=np.float64)
    blocks_per_trial = -(-draws_per_trial // _DOUBLES_PER_BLOCK)
    width = blocks_per_trial * _DOUBLES_PER_BLOCK
    bitgen = np.random.Philox(key=seed, counter=[first_trial * blocks_per_trial, 0, 0, 0])
    flat = np.random.Generator(bitgen).random(n_trials * width)
    return flat.reshape(n_trials, width)[:, :draws_per_trial]


def _batches(cfg: SimConfig):
    start = 0
    while start < cfg.trials:
        size = min(cfg.batch_size, cfg.trials - start)
        yield start, size
        start += size


def _category_table(o: Onomasticon, s: TargetSetSpec, ratio: RatioModel):
    """Cumulative single-draw distribution over (gender, name) categories,
    target-set members first, with per-gender remainder buckets for names
    the catalog does not list individually."""
    in_s = sorted(s.names)
    listed_sums = {g: 0 for g in GENDERS}
    probs: list[Fraction] = []
    for name, gender in in_s:
        probs.append(ratio.share(o, gender) * o.gender_frequency(name, gender))
        listed_sums[gender] += o.count(name, gender)
    for rec in o.records:
        if (rec.name, rec.gender) in s.names:
            continue
        probs.append(ratio.share(o, rec.gender) * o.gender_frequency(rec.name, rec.gender))
        listed_sums[rec.gender] += rec.count
    for gender in GENDERS:
        rest = o.gender_total(gender) - listed_sums[gender]
        probs.append(ratio.share(o, gender) * Fraction(rest, o.gender_total(gender)))
    cumulative = []
    acc = Fraction(0)
    for p in probs:
        acc += p
        cumulative.append(float(acc))
    return np.array(cumulative, dtype=np.float64), len(in_s)


def simulate_frequentist(
    o: Onomasticon,
    s: TargetSetSpec,
    a: AnchorSpec,
    ratio: RatioModel,
    pop: TombPopulation,
    cfg: SimConfig,
) -> SimEstimate:
    """Estimate P(at least one tomb is interesting) by direct simulation.

    Per trial and tomb, one dedicated ossuary carries the anchor with the
    anchor-name probability (two independent events in compound mode) and
    the n-1 companions each draw a (gender, name) category; the tomb is
    interesting when the anchor event fires and at least
    ``overlap_threshold`` companions fall in the target set.
    """
    cum, n_in_s = _category_table(o, s, ratio)
    p1 = float(name_probability(o, a.primary_name, MALE, ratio))
    p2 = float(name_probability(o, a.compound_name, MALE, ratio)) if a.mode == COMPOUND else None

    counts = pop.ossuary_counts()
    anchor_width = 2 if a.mode == COMPOUND else 1
    offsets = []
    pos = 0
    for n_i in counts:
        offsets.append(pos)
        pos += anchor_width + (n_i - 1)
    draws_per_trial = pos

    uniform = all(n_i == counts[0] for n_i in counts)
    successes = 0
    for start, size in _batches(cfg):
        u = trial_uniforms(cfg.seed, start, size, draws_per_trial)
        if uniform:
            per_tomb = anchor_width + (counts[0] - 1)
            u3 = u.reshape(size, pop.n_tombs, per_tomb)
            hits = u3[:, :, 0] < p1
            if p2 is not None:
                hits &= u3[:, :, 1] < p2
            comp = u3[:, :, anchor_width:]
            in_s = np.searchsorted(cum, comp, side="right") < n_in_s
            interesting = hits & (in_s.sum(axis=2) >= s.overlap_threshold)
            successes += int(interesting.any(axis=1).sum())
        else:
            any_interesting = np.zeros(size, dtype=bool)
            for n_i, off in zip(counts, offsets):
                hits = u[:, off] < p1
                if p2 is not None:
                    hits &= u[:, off + 1] < p2
                comp = u[:, off + anchor_width : off + anchor_width + (n_i - 1)]
                in_s = np.searchsorted(cum, comp, side="right") < n_in_s
                any_interesting |= hits & (in_s.sum(axis=1) >= s.overlap_threshold)
            successes += int(any_interesting.sum())
    return _estimate(successes, cfg)


def _finite_pool(w: WeightTable, gender: str | None):
    if gender is None:
        persons = w.persons
        others = w.others_weight_male + w.others_weight_female
    else:
        persons = w.persons_of(gender)
        others = w.others_weight(gender)
    forced = [p for p in persons if p.forced]
    finite = [p for p in persons if not p.forced]
    return forced, finite, others


def _run_weighted_draws(finite, others_weight: Fraction, n_draws: int, u: np.ndarray):
    """Vectorized without-replacement draws for one batch.

    Returns (mask, n_others): per-trial bitmask of drawn listed persons
    and the number of draws that went to the others lump. u has one
    uniform column per draw.
    """
    size = u.shape[0]
    weights = np.array([float(p.weight) for p in finite], dtype=np.float64)
    rem = np.tile(weights, (size, 1))
    v = float(others_weight)
    mask = np.zeros(size, dtype=np.int64)
    n_others = np.zeros(size, dtype=np.int64)
    for step in range(n_draws):
        cum = np.cumsum(rem, axis=1)
        total = cum[:, -1] + v if len(finite) else np.full(size, v)
        thresh = u[:, step] * total
        if len(finite):
            picked = np.argmax(thresh[:, None] < cum, axis=1)
            is_person = thresh < cum[:, -1]
            rows = np.nonzero(is_person)[0]
            rem[rows, picked[rows]] = 0.0
            mask[rows] |= np.left_shift(1, picked[rows])
            n_others += ~is_person
        else:
            n_others += 1
    return mask, n_others


def simulate_weighted_draw(
    w: WeightTable, k: int, cfg: SimConfig, gender: str | None = None
) -> dict[DrawOutcome, SimEstimate]:
    """Empirical distribution of k weighted draws without replacement.

    Forced (infinite-weight) persons are present in every outcome and use
    up k before any weighted draw happens. With ``gender`` None the whole
    roster forms one pool and the two others weights merge; pass a gender
    for the per-gender semantics the likelihood model uses.
    """
    forced, finite, others_weight = _finite_pool(w, gender)
    if len(finite) > 40:
        raise ValueError("roster too large for bitmask tallying (max 40 finite persons)")
    n_draws = k - len(forced)
    if n_draws < 0:
        raise ValueError(f"k={k} is smaller than the number of forced persons")
    positive = sum(1 for p in finite if p.weight != 0)
    if others_weight == 0 and n_draws > positive:
        raise ValueError(f"cannot draw {n_draws} from {positive} positive-weight persons")

    forced_names = frozenset(p.person for p in forced)
    tallies: Counter = Counter()
    for start, size in _batches(cfg):
        u = trial_uniforms(cfg.seed, start, size, n_draws)
        mask, n_others = _run_weighted_draws(finite, others_weight, n_draws, u)
        combined = mask * (n_draws + 1) + n_others
        values, counts = np.unique(combined, return_counts=True)
        for value, count in zip(values.tolist(), counts.tolist()):
            tallies[(value // (n_draws + 1), value % (n_draws + 1))] += count

    out: dict[DrawOutcome, SimEstimate] = {}
    for (mask, j), count in sorted(tallies.items()):
        persons = forced_names | frozenset(
            finite[i].person for i in range(len(finite)) if (mask >> i) & 1
        )
        out[DrawOutcome(persons=persons, others=j)] = _estimate(count, cfg)
    return out


def simulate_alt_likelihood(
    insc: TombInscriptions, w: WeightTable, o: Onomasticon, cfg: SimConfig
) -> SimEstimate:
    """Estimate the family-hypothesis likelihood of the observed multisets.

    Each trial runs the full generative alternative for both genders:
    forced persons emit their names, the remaining inscriptions' worth of
    draws come from the weighted pool, others emit catalog names. The
    trial succeeds when the emitted multisets equal the observed ones.
    """
    plans = []
    feasible = True
    for gender in GENDERS:
        observed = insc.counts_of(gender)
        forced, finite, others_weight = _finite_pool(w, gender)
        residual = Counter(observed)
        for p in forced:
            name = p.broad_name[0]
            if residual[name] <= 0:
                feasible = False
            residual[name] -= 1
        residual = +residual
        n_draws = sum(residual.values())

        # Full gender name table for others' emissions, observed names
        # mapped to residual category indices, everything else to -1.
        cats = sorted(residual)
        cat_index = {name: i for i, name in enumerate(cats)}
        cum = []
        table_map = []
        acc = Fraction(0)
        for rec in o.records:
            if rec.gender != gender:
                continue
            acc += o.gender_frequency(rec.name, gender)
            cum.append(float(acc))
            table_map.append(cat_index.get(rec.name, -1))
        cum.append(1.0)  # unlisted remainder bucket
        table_map.append(-1)
        person_cat = np.array(
            [cat_index.get(p.broad_name[0], -1) for p in finite], dtype=np.int64
        )
        plans.append(
            {
                "finite": finite,
                "others_weight": others_weight,
                "n_draws": n_draws,
                "residual": np.array([residual[c] for c in cats], dtype=np.int64),
                "cum": np.array(cum, dtype=np.float64),
                "table_map": np.array(table_map, dtype=np.int64),
                "person_cat": person_cat,
                "n_cats": len(cats),
            }
        )

    if not feasible:
        # A forced person has no matching inscription: no trial can ever
        # succeed, which the estimate reports as exactly 0.
        return SimEstimate(point=0.0, standard_error=0.0, trials=cfg.trials, seed=cfg.seed)

    draws_per_trial = sum(2 * plan["n_draws"] for plan in plans)
    successes = 0
    for start, size in _batches(cfg):
        u = trial_uniforms(cfg.seed, start, size, draws_per_trial)
        match = np.ones(size, dtype=bool)
        col = 0
        for plan in plans:
            n_draws = plan["n_draws"]
            finite = plan["finite"]
            if n_draws == 0:
                continue
            draw_u = u[:, col : col + n_draws]
            emit_u = u[:, col + n_draws : col + 2 * n_draws]
            col += 2 * n_draws

            counts = np.zeros((size, plan["n_cats"]), dtype=np.int64)
            bad = np.zeros(size, dtype=bool)
            weights = np.array([float(p.weight) for p in finite], dtype=np.float64)
            rem = np.tile(weights, (size, 1))
            v = float(plan["others_weight"])
            for step in range(n_draws):
                emitted = plan["table_map"][
                    np.searchsorted(plan["cum"], emit_u[:, step], side="right")
                ]
                if len(finite):
                    cum_w = np.cumsum(rem, axis=1)
                    total = cum_w[:, -1] + v
                    # An exhausted pool (all weight gone, no others mass)
                    # cannot produce the remaining draws; such trajectories
                    # have probability 0 exactly and count as mismatches.
                    dead = total <= 0.0
                    thresh = draw_u[:, step] * total
                    picked = np.argmax(thresh[:, None] < cum_w, axis=1)
                    is_person = (thresh < cum_w[:, -1]) & ~dead
                    rows = np.nonzero(is_person)[0]
                    rem[rows, picked[rows]] = 0.0
                    cat = np.where(is_person, plan["person_cat"][picked], emitted)
                    cat = np.where(dead, -1, cat)
                else:
                    dead = np.full(size, v <= 0.0)
                    cat = np.where(dead, -1, emitted)
                bad |= cat < 0
                valid = cat >= 0
                np.add.at(counts, (np.nonzero(valid)[0], cat[valid]), 1)
            match &= ~bad & (counts == plan["residual"]).all(axis=1)
        successes += int(match.sum())
    return _estimate(successes, cfg)
