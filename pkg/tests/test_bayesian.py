from collections import Counter
from fractions import Fraction
from itertools import combinations, permutations

import pytest
from hypothesis import given, settings, strategies as st

from tombnames.bayesian import (
    BayesFixtures,
    PersonWeight,
    PriorSpec,
    RenditionAdjustment,
    TombInscriptions,
    WeightTable,
    alt_name_likelihood,
    draw_outcome_probability,
    null_name_likelihood,
    posterior,
    prior_odds,
    rendition_odds_factor,
    run_bayes_scenario,
    set_draw_probability,
)
from tombnames.onomasticon import FEMALE, MALE, NameRecord, Onomasticon


def catalog(male=None, female=None, male_total=100, female_total=100):
    records = tuple(NameRecord(n, MALE, c) for n, c in (male or {}).items()) + tuple(
        NameRecord(n, FEMALE, c) for n, c in (female or {}).items()
    )
    return Onomasticon(records=records, male_total=male_total, female_total=female_total)


class TestPriorOdds:
    def test_published_value_exact(self):
        assert prior_odds(PriorSpec(n_tombs=1100, t=1)) == Fraction(1, 1099)

    def test_zero_prior(self):
        assert prior_odds(PriorSpec(n_tombs=50, t=0)) == 0

    def test_even_odds(self):
        assert prior_odds(PriorSpec(n_tombs=2, t=1)) == 1

    def test_rejects_certain_prior(self):
        with pytest.raises(ValueError):
            PriorSpec(n_tombs=1, t=1)


class TestNullLikelihood:
    def test_repeated_name(self):
        o = catalog(male={"a": 1}, male_total=3)
        insc = TombInscriptions(male_names=("a", "a"))
        assert null_name_likelihood(insc, o) == Fraction(1, 9)

    def test_two_distinct_names_vs_enumeration(self):
        # oracle: enumerate the ordered pairs (a,b) and (b,a)
        o = catalog(male={"a": 1, "b": 1}, male_total=3)
        insc = TombInscriptions(male_names=("a", "b"))
        ordered = Fraction(1, 3) * Fraction(1, 3)
        assert null_name_likelihood(insc, o) == 2 * ordered == Fraction(2, 9)

    def test_empty_inscriptions(self):
        o = catalog(male={"a": 1}, male_total=3)
        assert null_name_likelihood(TombInscriptions(), o) == 1

    def test_unknown_name_gives_zero(self):
        o = catalog(male={"a": 1}, male_total=3)
        assert null_name_likelihood(TombInscriptions(male_names=("zzz",)), o) == 0

    @given(
        st.lists(st.sampled_from(["a", "b", "c"]), max_size=4),
        st.lists(st.sampled_from(["d", "e"]), max_size=3),
    )
    def test_matches_sequence_enumeration(self, males, females):
        o = catalog(
            male={"a": 2, "b": 3, "c": 5},
            female={"d": 4, "e": 1},
            male_total=20,
            female_total=10,
        )
        insc = TombInscriptions(male_names=tuple(males), female_names=tuple(females))

        def gender_prob(names, total, freqs):
            seen = set()
            acc = Fraction(0)
            for perm in permutations(names):
                if perm in seen:
                    continue
                seen.add(perm)
                term = Fraction(1)
                for name in perm:
                    term *= Fraction(freqs[name], total)
                acc += term
            return acc

        expected = gender_prob(males, 20, {"a": 2, "b": 3, "c": 5}) * gender_prob(
            females, 10, {"d": 4, "e": 1}
        )
        assert null_name_likelihood(insc, o) == expected


def brute_force_set_draw(weights, total, subset):
    """Oracle: sum the product over every ordering of the subset."""
    acc = Fraction(0)
    for order in permutations(sorted(subset)):
        term = Fraction(1)
        remaining = Fraction(total)
        for i in order:
            term *= Fraction(weights[i]) / remaining
            remaining -= Fraction(weights[i])
        acc += term
    return acc


class TestSetDrawProbability:
    def test_two_equal_weights(self):
        assert set_draw_probability([1, 1], 2, {0}) == Fraction(1, 2)

    def test_worked_example(self):
        # (2/4)(1/2) + (1/4)(2/3) = 5/12, both orderings by hand
        assert set_draw_probability([2, 1, 1], 4, {0, 1}) == Fraction(5, 12)

    def test_exhaustive_draw_is_certain(self):
        assert set_draw_probability([3, 2, 5], 10, {0, 1, 2}) == 1

    def test_total_must_cover_weights(self):
        with pytest.raises(ValueError):
            set_draw_probability([3, 3], 4, {0})

    def test_sum_over_size_k_subsets_with_slack(self):
        # with extra mass in the pool the size-k subsets no longer
        # exhaust the probability; the rest goes to the never-drawn mass
        weights = [Fraction(2), Fraction(1), Fraction(3)]
        total = Fraction(10)
        k = 2
        total_prob = sum(
            set_draw_probability(weights, total, set(pair))
            for pair in combinations(range(3), k)
        )
        assert total_prob < 1

    def test_sum_over_all_size_k_subsets_no_slack_is_one(self):
        weights = [Fraction(2), Fraction(1), Fraction(3), Fraction(4)]
        total = sum(weights)
        for k in (1, 2, 3, 4):
            total_prob = sum(
                set_draw_probability(weights, total, set(c))
                for c in combinations(range(4), k)
            )
            assert total_prob == 1

    @given(
        st.lists(st.fractions(min_value=0, max_value=10, max_denominator=20), min_size=1, max_size=6),
        st.fractions(min_value=0, max_value=5, max_denominator=20),
        st.data(),
    )
    def test_recursion_equals_brute_force(self, weights, slack, data):
        total = sum(weights) + slack
        if total == 0:
            return
        subset = data.draw(st.sets(st.integers(0, len(weights) - 1)))
        assert set_draw_probability(weights, total, subset) == brute_force_set_draw(
            weights, total, subset
        )


def brute_force_alt_gender(obs, persons, others_weight, freqs, total):
    """Sequential-tree oracle for one gender's alternative likelihood.

    Walks every draw sequence: forced persons go first, each draw either
    takes a remaining listed person (emitting their name) or the others
    lump (emitting any observed name with its catalog probability).
    Unmatched emissions prune the branch. Independent of the subset-DP
    and multinomial shortcuts used by the implementation.
    """

    def walk(remaining, obs_left):
        forced = [p for p in remaining if p[1] is None]
        if not obs_left:
            return Fraction(0) if forced else Fraction(1)
        if forced:
            name, _ = forced[0]
            if obs_left.get(name, 0) == 0:
                return Fraction(0)
            nxt = Counter(obs_left)
            nxt[name] -= 1
            rest = list(remaining)
            rest.remove(forced[0])
            return walk(rest, +nxt)
        total_mass = others_weight + sum(w for _, w in remaining)
        if total_mass == 0:
            return Fraction(0)
        acc = Fraction(0)
        for person in remaining:
            name, weight = person
            if weight == 0 or obs_left.get(name, 0) == 0:
                continue
            nxt = Counter(obs_left)
            nxt[name] -= 1
            rest = list(remaining)
            rest.remove(person)
            acc += (weight / total_mass) * walk(rest, +nxt)
        if others_weight > 0:
            for name in list(obs_left):
                nxt = Counter(obs_left)
                nxt[name] -= 1
                acc += (
                    (others_weight / total_mass)
                    * Fraction(freqs.get(name, 0), total)
                    * walk(list(remaining), +nxt)
                )
        return acc

    return walk(list(persons), Counter(obs))


class TestAltLikelihood:
    def test_fully_forced(self):
        o = catalog(male={"a": 1, "b": 1}, male_total=10)
        table = WeightTable(
            persons=(
                PersonWeight("p1", ("a", MALE), None),
                PersonWeight("p2", ("b", MALE), None),
            )
        )
        insc = TombInscriptions(male_names=("a", "b"))
        assert alt_name_likelihood(insc, table, o) == 1

    def test_two_branch_formula(self):
        # one listed person (weight w, name A), others weight v, one
        # inscription A: w/(w+v) + (v/(w+v)) * f
        w, v = Fraction(3), Fraction(2)
        o = catalog(male={"A": 1}, male_total=4)
        table = WeightTable(
            persons=(PersonWeight("p", ("A", MALE), w),), others_weight_male=v
        )
        insc = TombInscriptions(male_names=("A",))
        f = Fraction(1, 4)
        assert alt_name_likelihood(insc, table, o) == w / (w + v) + (v / (w + v)) * f

    def test_optimistic_female_half(self, onomasticon, optimistic_table):
        insc = TombInscriptions(female_names=("marya", "mariam"))
        table = WeightTable(
            persons=optimistic_table.persons_of(FEMALE),
            others_weight_female=optimistic_table.others_weight_female,
        )
        assert alt_name_likelihood(insc, table, onomasticon) == Fraction(1, 2)

    def test_forced_person_unmatched_returns_zero(self):
        o = catalog(male={"a": 1}, male_total=10)
        table = WeightTable(persons=(PersonWeight("p", ("a", MALE), None),))
        insc = TombInscriptions(male_names=("b",))
        assert alt_name_likelihood(insc, table, o) == 0

    def test_fixture_scenarios_match_sequential_oracle(
        self, onomasticon, inscriptions, neutral_table, optimistic_table
    ):
        male_freqs = {r.name: r.count for r in onomasticon.records if r.gender == MALE}
        female_freqs = {r.name: r.count for r in onomasticon.records if r.gender == FEMALE}
        for table in (neutral_table, optimistic_table):
            expected = brute_force_alt_gender(
                inscriptions.male_names,
                [(p.broad_name[0], p.weight) for p in table.persons_of(MALE)],
                table.others_weight_male,
                male_freqs,
                onomasticon.male_total,
            ) * brute_force_alt_gender(
                inscriptions.female_names,
                [(p.broad_name[0], p.weight) for p in table.persons_of(FEMALE)],
                table.others_weight_female,
                female_freqs,
                onomasticon.female_total,
            )
            assert alt_name_likelihood(inscriptions, table, onomasticon) == expected

    @given(
        st.lists(st.sampled_from(["a", "b", "c"]), max_size=3),
        st.lists(
            st.tuples(
                st.sampled_from(["a", "b", "c", "d"]),
                st.one_of(st.none(), st.fractions(min_value=0, max_value=5, max_denominator=10)),
            ),
            max_size=3,
        ),
        st.fractions(min_value=0, max_value=3, max_denominator=10),
    )
    def test_random_cases_match_sequential_oracle(self, obs, person_specs, v):
        o = catalog(male={"a": 5, "b": 3, "c": 2}, male_total=20)
        table = WeightTable(
            persons=tuple(
                PersonWeight(f"p{i}", (name, MALE), w)
                for i, (name, w) in enumerate(person_specs)
            ),
            others_weight_male=v,
        )
        insc = TombInscriptions(male_names=tuple(obs))
        expected = brute_force_alt_gender(
            obs,
            [(name, w) for name, w in person_specs],
            v,
            {"a": 5, "b": 3, "c": 2},
            20,
        )
        assert alt_name_likelihood(insc, table, o) == expected

    @settings(max_examples=500)
    @given(scale=st.fractions(min_value=Fraction(1, 10), max_value=10, max_denominator=10))
    def test_weight_scaling_invariance(
        self, scale, onomasticon, inscriptions, neutral_table
    ):
        base = alt_name_likelihood(inscriptions, neutral_table, onomasticon)
        scaled = alt_name_likelihood(inscriptions, neutral_table.scaled(scale), onomasticon)
        assert scaled == base


class TestDrawOutcomeProbability:
    def test_matches_set_draw_when_no_others(self):
        table = WeightTable(
            persons=(
                PersonWeight("a", ("a", MALE), Fraction(2)),
                PersonWeight("b", ("b", MALE), Fraction(1)),
                PersonWeight("c", ("c", MALE), Fraction(1)),
            )
        )
        assert draw_outcome_probability(table, {"a", "b"}) == Fraction(5, 12)

    def test_outcome_without_forced_person_impossible(self):
        table = WeightTable(
            persons=(
                PersonWeight("a", ("a", MALE), None),
                PersonWeight("b", ("b", MALE), Fraction(1)),
            )
        )
        assert draw_outcome_probability(table, {"b"}) == 0

    def test_distribution_sums_to_one(self, neutral_table):
        from itertools import combinations as combos

        finite = [p.person for p in neutral_table.persons_of(MALE)]
        k = 4
        total = Fraction(0)
        for size in range(k + 1):
            for chosen in combos(finite, size):
                total += draw_outcome_probability(
                    neutral_table, set(chosen), k - size, gender=MALE
                )
        assert total == 1


class TestRenditionFactor:
    def test_published_factor_eight(self):
        r = RenditionAdjustment(p_new_null=Fraction(1, 80), p_new_alt=Fraction(1, 10))
        assert rendition_odds_factor(r) == 8

    def test_equal_probabilities_no_adjustment(self):
        r = RenditionAdjustment(p_new_null=Fraction(1, 20), p_new_alt=Fraction(1, 20))
        assert rendition_odds_factor(r) == 1

    def test_factor_four(self):
        r = RenditionAdjustment(p_new_null=Fraction(1, 80), p_new_alt=Fraction(1, 20))
        assert rendition_odds_factor(r) == 4


class TestPosterior:
    def test_likelihood_neutral_data(self):
        res = posterior(PriorSpec(n_tombs=1100, t=1), Fraction(1), 1)
        assert res.posterior == Fraction(1, 1100)

    def test_odds_chain_from_published_row(self):
        # posterior 0.034 boosted by the factor 8: odds(0.034)*8 -> 0.2197,
        # within 0.005 of the published 21.8%
        odds = Fraction(34, 1000) / (1 - Fraction(34, 1000))
        boosted = odds * 8
        post = boosted / (1 + boosted)
        assert abs(float(post) - 0.2197) < 5e-5
        assert abs(float(post) - 0.218) < 0.005

    def test_odds_composition_exact(self):
        prior = PriorSpec(n_tombs=1100, t=1)
        base = posterior(prior, Fraction(3, 2), 1)
        boosted = posterior(prior, Fraction(3, 2), 8)
        assert boosted.posterior_odds == 8 * base.posterior_odds

    def test_infinite_lr(self):
        res = posterior(PriorSpec(n_tombs=10, t=1), None, 1)
        assert res.posterior == 1
        assert res.likelihood_ratio is None

    @given(
        st.fractions(min_value=0, max_value=100, max_denominator=30),
        st.fractions(min_value=0, max_value=100, max_denominator=30),
        st.fractions(min_value=Fraction(1, 30), max_value=1, max_denominator=30),
        st.fractions(min_value=Fraction(1, 30), max_value=1, max_denominator=30),
    )
    def test_monotone_in_t_lr_and_factor(self, lr, factor, t1, t2):
        lo_t, hi_t = sorted((t1, t2))
        lo = posterior(PriorSpec(n_tombs=1100, t=lo_t), lr, factor)
        hi = posterior(PriorSpec(n_tombs=1100, t=hi_t), lr, factor)
        assert lo.posterior <= hi.posterior
        prior = PriorSpec(n_tombs=1100, t=1)
        assert posterior(prior, lr, factor).posterior <= posterior(prior, lr + 1, factor).posterior
        assert posterior(prior, lr, factor).posterior <= posterior(prior, lr, factor + 1).posterior


class TestScenarioRuns:
    def test_neutral_posterior_near_published_value(self, config):
        res = run_bayes_scenario("neutral", config.bayes_fixtures())
        assert abs(float(res.posterior) - 0.034) <= 0.015

    def test_rendition_scenario_is_exactly_factor_eight(self, config):
        fixtures = config.bayes_fixtures()
        neutral = run_bayes_scenario("neutral", fixtures)
        renditions = run_bayes_scenario("neutral_renditions", fixtures)
        assert renditions.posterior_odds == 8 * neutral.posterior_odds
        assert renditions.null_likelihood == neutral.null_likelihood
        assert renditions.alt_likelihood == neutral.alt_likelihood

    def test_lr_neutral_synthetic_fixture(self):
        # an empty roster with a pure others pool reproduces the null
        # exactly, so the posterior collapses to the bare prior 1/1100
        o = catalog(male={"a": 30, "b": 20}, male_total=100)
        table = WeightTable(
            persons=(), others_weight_male=Fraction(1), scenario_label="neutral"
        )
        insc = TombInscriptions(male_names=("a", "b", "a"))
        fixtures = BayesFixtures(
            onomasticon=o,
            weight_tables={"neutral": table},
            inscriptions=insc,
            prior=PriorSpec(n_tombs=1100, t=1),
        )
        res = run_bayes_scenario("neutral", fixtures)
        assert res.likelihood_ratio == 1
        assert res.posterior == Fraction(1, 1100)

    def test_unknown_scenario_rejected(self, config):
        with pytest.raises(ValueError):
            run_bayes_scenario("pessimistic", config.bayes_fixtures())
