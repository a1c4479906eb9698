"""Coincidence statistics for tomb name finds.

Quantifies how surprising a set of ossuary name inscriptions is, two
ways: a look-elsewhere p-value over many tombs (how likely is it that
some excavated tomb would have looked this interesting?) and a posterior
probability that one specific tomb belongs to a hypothesized family.
Both calculations run in exact rational arithmetic and are cross-checked
by a seeded Monte Carlo oracle.
"""

from .bayesian import (
    BayesFixtures,
    PersonWeight,
    PosteriorResult,
    PriorSpec,
    RenditionAdjustment,
    TombInscriptions,
    WeightTable,
    alt_name_likelihood,
    draw_outcome_probability,
    load_inscriptions,
    load_weight_table,
    null_name_likelihood,
    posterior,
    prior_odds,
    rendition_odds_factor,
    run_bayes_scenario,
    set_draw_probability,
)
from .frequentist import (
    AnchorSpec,
    GridRow,
    PValueGrid,
    TargetSetSpec,
    TombPopulation,
    anchor_probability,
    binomial_tail,
    multi_tomb_pvalue,
    run_scenario_grid,
    tomb_interest_probability,
)
from .montecarlo import (
    DrawOutcome,
    SimConfig,
    SimEstimate,
    simulate_alt_likelihood,
    simulate_frequentist,
    simulate_weighted_draw,
    trial_uniforms,
)
from .onomasticon import (
    EMPIRICAL_RATIO,
    EQUAL_RATIO,
    FEMALE,
    MALE,
    NameRecord,
    Onomasticon,
    RatioModel,
    dump_onomasticon,
    load_onomasticon,
    name_probability,
    target_set_nu,
)
from .rr_demo import (
    DiscreteOutcomeSpace,
    RelevanceSpec,
    rr_pvalue,
    rr_statistic,
    split_rendition,
)

__version__ = "0.1.0"

__all__ = [
    "AnchorSpec",
    "BayesFixtures",
    "DiscreteOutcomeSpace",
    "DrawOutcome",
    "EMPIRICAL_RATIO",
    "EQUAL_RATIO",
    "FEMALE",
    "GridRow",
    "MALE",
    "NameRecord",
    "Onomasticon",
    "PValueGrid",
    "PersonWeight",
    "PosteriorResult",
    "PriorSpec",
    "RatioModel",
    "RelevanceSpec",
    "RenditionAdjustment",
    "SimConfig",
    "SimEstimate",
    "TargetSetSpec",
    "TombInscriptions",
    "TombPopulation",
    "WeightTable",
    "alt_name_likelihood",
    "anchor_probability",
    "binomial_tail",
    "draw_outcome_probability",
    "dump_onomasticon",
    "load_inscriptions",
    "load_onomasticon",
    "load_weight_table",
    "multi_tomb_pvalue",
    "name_probability",
    "null_name_likelihood",
    "posterior",
    "prior_odds",
    "rendition_odds_factor",
    "rr_pvalue",
    "rr_statistic",
    "run_bayes_scenario",
    "run_scenario_grid",
    "set_draw_probability",
    "simulate_alt_likelihood",
    "simulate_frequentist",
    "simulate_weighted_draw",
    "split_rendition",
    "target_set_nu",
    "tomb_interest_probability",
    "trial_uniforms",
]
