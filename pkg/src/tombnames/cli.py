"""Command-line front end.

Subcommands:

* ``freq``      render the multi-tomb p-value grid for the configured rows
* ``bayes``     render the posterior scenario blocks
* ``rr-demo``   show the rendition-splitting p-value deflation example
* ``check``     run the Monte Carlo oracle against the exact values
* ``validate``  parse the config and all referenced files, report problems

Configs are flat key = value files with [section] headers; see the
shipped talpiyot.cfg for the full vocabulary. Exit codes: 0 success,
1 check failure, 2 config or file error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .bayesian import (
    SCENARIOS,
    BayesFixtures,
    PriorSpec,
    RenditionAdjustment,
    TombInscriptions,
    WeightTable,
    alt_name_likelihood,
    draw_outcome_probability,
    load_inscriptions,
    load_weight_table,
    run_bayes_scenario,
)
from .frequentist import (
    AnchorSpec,
    PValueGrid,
    Scenario,
    TargetSetSpec,
    TombPopulation,
    run_scenario_grid,
)
from .montecarlo import (
    SimConfig,
    simulate_alt_likelihood,
    simulate_frequentist,
    simulate_weighted_draw,
)
from .onomasticon import (
    MALE,
    Onomasticon,
    RatioModel,
    load_onomasticon,
    parse_gender,
)
from .rr_demo import (
    DEMO_SPLIT_PARTS,
    demo_fixture,
    rr_pvalue,
    rr_statistic,
    split_rendition,
)

DATA_DIR = Path(__file__).resolve().parent / "data"
DEFAULT_CONFIG = DATA_DIR / "talpiyot.cfg"

RATIONAL_CAP = 120  # beyond this many characters an exact value is elided

CHECK_TARGETS = ("frequentist", "weighted_draw", "alt_likelihood")


class ConfigError(Exception):
    pass


# ---------------------------------------------------------------------------
# Config parsing
# ---------------------------------------------------------------------------


def _parse_sections(text: str, source: str) -> list[tuple[str, list[tuple[int, str, str]]]]:
    sections: list[tuple[str, list[tuple[int, str, str]]]] = []
    current: list[tuple[int, str, str]] | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("[") and line.endswith("]"):
            name = line[1:-1].strip()
            if not name:
                raise ConfigError(f"{source}:{lineno}: empty section header")
            current = []
            sections.append((name, current))
            continue
        if current is None:
            raise ConfigError(f"{source}:{lineno}: entry before any [section] header")
        key, sep, value = line.partition("=")
        if not sep:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value'")
        current.append((lineno, key.strip(), value.strip()))
    return sections


def _entries_to_map(entries, source, multi=()):
    out: dict[str, list[str] | str] = {}
    for lineno, key, value in entries:
        if key in multi:
            out.setdefault(key, []).append(value)  # type: ignore[union-attr]
        elif key in out:
            raise ConfigError(f"{source}:{lineno}: duplicate key {key!r}")
        else:
            out[key] = value
    return out


def _parse_fraction(value: str, source: str, key: str) -> Fraction:
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError):
        raise ConfigError(f"{source}: bad rational for {key!r}: {value!r}") from None


def _parse_int(value: str, source: str, key: str) -> int:
    try:
        return int(value)
    except ValueError:
        raise ConfigError(f"{source}: bad integer for {key!r}: {value!r}") from None


@dataclass(frozen=True)
class FreqRow:
    variant: str
    ratio_kind: str
    anchor: str
    n_tombs: int


@dataclass(frozen=True)
class ScenarioConfig:
    """Everything the subcommands need, parsed and loaded."""

    source: str
    onomasticon: Onomasticon
    target_sets: dict[str, TargetSetSpec]
    anchors: dict[str, AnchorSpec]
    ossuaries_per_tomb: int
    per_tomb_overrides: tuple[tuple[int, int], ...]
    freq_rows: tuple[FreqRow, ...]
    weight_tables: dict[str, WeightTable]
    inscriptions: TombInscriptions | None
    prior: PriorSpec
    rendition: RenditionAdjustment
    bayes_scenarios: tuple[str, ...]
    check_targets: tuple[str, ...]
    check_trials: int = 100_000
    check_seed: int = 271828

    def freq_scenarios(self) -> list[Scenario]:
        scenarios = []
        for row in self.freq_rows:
            if row.variant not in self.target_sets:
                raise ConfigError(f"{self.source}: unknown target set {row.variant!r}")
            if row.anchor not in self.anchors:
                raise ConfigError(f"{self.source}: unknown anchor {row.anchor!r}")
            try:
                ratio = RatioModel(row.ratio_kind)
            except ValueError as exc:
                raise ConfigError(f"{self.source}: {exc}") from None
            population = TombPopulation(
                n_tombs=row.n_tombs,
                ossuaries_per_tomb=self.ossuaries_per_tomb,
                per_tomb_overrides=tuple(
                    (i, n) for i, n in self.per_tomb_overrides if i < row.n_tombs
                ),
            )
            scenarios.append(
                (self.target_sets[row.variant], ratio, self.anchors[row.anchor], population)
            )
        return scenarios

    def bayes_fixtures(self) -> BayesFixtures:
        if self.inscriptions is None:
            raise ConfigError(f"{self.source}: [bayes] section has no inscriptions")
        return BayesFixtures(
            onomasticon=self.onomasticon,
            weight_tables=self.weight_tables,
            inscriptions=self.inscriptions,
            prior=self.prior,
            rendition=self.rendition,
        )


def _parse_target_names(value: str, source: str) -> frozenset[tuple[str, str]]:
    names = set()
    for chunk in value.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        name, sep, gender = chunk.partition(":")
        if not sep:
            raise ConfigError(f"{source}: bad target entry {chunk!r} (expected name:gender)")
        try:
            names.add((name.strip(), parse_gender(gender)))
        except ValueError as exc:
            raise ConfigError(f"{source}: {exc}") from None
    if not names:
        raise ConfigError(f"{source}: empty target set")
    return frozenset(names)


def load_scenario_config(path: Path | str) -> ScenarioConfig:
    path = Path(path)
    source = str(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {source}: {exc}") from None
    base = path.parent
    sections = _parse_sections(text, source)

    onomasticon: Onomasticon | None = None
    target_sets: dict[str, TargetSetSpec] = {}
    anchors: dict[str, AnchorSpec] = {}
    ossuaries = 6
    overrides: list[tuple[int, int]] = []
    freq_rows: list[FreqRow] = []
    weight_tables: dict[str, WeightTable] = {}
    inscriptions: TombInscriptions | None = None
    prior = PriorSpec()
    rendition = RenditionAdjustment()
    bayes_scenarios: list[str] = []
    check_targets: list[str] = []
    check_trials = 100_000
    check_seed = 271828

    def read_file(rel: str) -> str:
        file_path = base / rel
        try:
            return file_path.read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigError(f"{source}: cannot read {file_path}: {exc}") from None

    for name, entries in sections:
        if name == "onomasticon":
            entry_map = _entries_to_map(entries, source)
            if "path" not in entry_map:
                raise ConfigError(f"{source}: [onomasticon] needs a path")
            try:
                onomasticon = load_onomasticon(read_file(str(entry_map["path"])))
            except ValueError as exc:
                raise ConfigError(f"{source}: {entry_map['path']}: {exc}") from None
        elif name.startswith("target_set"):
            label = name[len("target_set") :].strip()
            if not label:
                raise ConfigError(f"{source}: target_set sections need a label")
            entry_map = _entries_to_map(entries, source)
            threshold = _parse_int(str(entry_map.get("overlap_threshold", "3")), source, "overlap_threshold")
            try:
                target_sets[label] = TargetSetSpec(
                    names=_parse_target_names(str(entry_map.get("names", "")), source),
                    overlap_threshold=threshold,
                    variant_label=label,
                )
            except ValueError as exc:
                raise ConfigError(f"{source}: target_set {label}: {exc}") from None
        elif name.startswith("anchor"):
            label = name[len("anchor") :].strip()
            if not label:
                raise ConfigError(f"{source}: anchor sections need a label")
            entry_map = _entries_to_map(entries, source)
            try:
                anchors[label] = AnchorSpec(
                    mode=str(entry_map.get("mode", "single_name")),
                    primary_name=str(entry_map.get("primary", "")),
                    compound_name=str(entry_map["compound"]) if "compound" in entry_map else None,
                )
            except ValueError as exc:
                raise ConfigError(f"{source}: anchor {label}: {exc}") from None
        elif name == "population":
            entry_map = _entries_to_map(entries, source, multi=("override",))
            if "ossuaries_per_tomb" in entry_map:
                ossuaries = _parse_int(str(entry_map["ossuaries_per_tomb"]), source, "ossuaries_per_tomb")
            for item in entry_map.get("override", []):
                idx, sep, count = str(item).partition(":")
                if not sep:
                    raise ConfigError(f"{source}: bad override {item!r} (expected index:count)")
                overrides.append((_parse_int(idx, source, "override"), _parse_int(count, source, "override")))
        elif name == "freq":
            entry_map = _entries_to_map(entries, source, multi=("row",))
            for item in entry_map.get("row", []):
                parts = [p.strip() for p in str(item).split("|")]
                if len(parts) != 4:
                    raise ConfigError(
                        f"{source}: bad freq row {item!r} (expected 'set | ratio | anchor | tombs')"
                    )
                freq_rows.append(
                    FreqRow(parts[0], parts[1], parts[2], _parse_int(parts[3], source, "row"))
                )
        elif name == "bayes":
            entry_map = _entries_to_map(entries, source, multi=("weights", "scenario"))
            for rel in entry_map.get("weights", []):
                try:
                    table = load_weight_table(read_file(str(rel)))
                except ValueError as exc:
                    raise ConfigError(f"{source}: {rel}: {exc}") from None
                weight_tables[table.scenario_label] = table
            if "inscriptions" in entry_map:
                try:
                    inscriptions = load_inscriptions(read_file(str(entry_map["inscriptions"])))
                except ValueError as exc:
                    raise ConfigError(f"{source}: {entry_map['inscriptions']}: {exc}") from None
            try:
                prior = PriorSpec(
                    n_tombs=_parse_int(str(entry_map.get("n_tombs", "1100")), source, "n_tombs"),
                    t=_parse_fraction(str(entry_map.get("prior_t", "1")), source, "prior_t"),
                )
                rendition = RenditionAdjustment(
                    p_new_null=_parse_fraction(str(entry_map.get("rendition_null", "1/80")), source, "rendition_null"),
                    p_new_alt=_parse_fraction(str(entry_map.get("rendition_alt", "1/10")), source, "rendition_alt"),
                    interpretation_count=_parse_int(
                        str(entry_map.get("rendition_interpretations", "3")), source, "rendition_interpretations"
                    ),
                )
            except ValueError as exc:
                raise ConfigError(f"{source}: [bayes] {exc}") from None
            for scenario in entry_map.get("scenario", []):
                if scenario not in SCENARIOS:
                    raise ConfigError(f"{source}: unknown bayes scenario {scenario!r}")
                bayes_scenarios.append(str(scenario))
        elif name == "check":
            entry_map = _entries_to_map(entries, source, multi=("target",))
            if "trials" in entry_map:
                check_trials = _parse_int(str(entry_map["trials"]), source, "trials")
            if "seed" in entry_map:
                check_seed = _parse_int(str(entry_map["seed"]), source, "seed")
            for target in entry_map.get("target", []):
                if target not in CHECK_TARGETS:
                    raise ConfigError(
                        f"{source}: unknown check target {target!r} (expected one of {CHECK_TARGETS})"
                    )
                check_targets.append(str(target))
        else:
            raise ConfigError(f"{source}: unknown section [{name}]")

    if onomasticon is None:
        raise ConfigError(f"{source}: missing [onomasticon] section")
    if not (freq_rows or bayes_scenarios or check_targets):
        raise ConfigError(f"{source}: no task requested (freq rows, bayes scenarios or check targets)")

    return ScenarioConfig(
        source=source,
        onomasticon=onomasticon,
        target_sets=target_sets,
        anchors=anchors,
        ossuaries_per_tomb=ossuaries,
        per_tomb_overrides=tuple(overrides),
        freq_rows=tuple(freq_rows),
        weight_tables=weight_tables,
        inscriptions=inscriptions,
        prior=prior,
        rendition=rendition,
        bayes_scenarios=tuple(bayes_scenarios),
        check_targets=tuple(check_targets),
        check_trials=check_trials,
        check_seed=check_seed,
    )


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------


def _f3(x) -> str:
    return f"{float(x):.3g}"


def _ffull(x) -> str:
    return repr(float(x))


def _exact(x: Fraction | None) -> str:
    if x is None:
        return "inf"
    # Size-check before str(): exact p-values over a thousand tombs have
    # numerators far beyond Python's int-to-str digit limit.
    bits = max(x.numerator.bit_length(), x.denominator.bit_length())
    if bits > 4 * RATIONAL_CAP:
        return "-"
    s = str(x)
    return s if len(s) <= RATIONAL_CAP else "-"


def render_grid(grid: PValueGrid, fmt: str) -> str:
    lines = []
    if fmt == "delimited":
        for row in grid.rows:
            lines.append(
                "|".join(
                    [
                        "row",
                        row.variant_label,
                        row.ratio_kind,
                        row.anchor_label,
                        str(row.n_tombs),
                        _ffull(row.nu),
                        _exact(row.nu),
                        _ffull(row.pi),
                        _exact(row.pi),
                        _ffull(row.p_value),
                        _exact(row.p_value),
                    ]
                )
            )
    else:
        header = f"{'set':<8} {'ratio':<10} {'anchor':<16} {'tombs':>5}  {'nu':>8} {'pi':>8} {'p-value':>8}"
        lines.append(header)
        lines.append("-" * len(header))
        for row in grid.rows:
            lines.append(
                f"{row.variant_label:<8} {row.ratio_kind:<10} {row.anchor_label:<16} "
                f"{row.n_tombs:>5}  {_f3(row.nu):>8} {_f3(row.pi):>8} {_f3(row.p_value):>8}"
            )
        lines.append("")
        lines.append("exact values:")
        for row in grid.rows:
            label = f"{row.variant_label}/{row.ratio_kind}/{row.anchor_label}/{row.n_tombs}"
            lines.append(f"  {label}: nu = {_exact(row.nu)}, pi = {_exact(row.pi)}, p = {_exact(row.p_value)}")
    return "\n".join(lines)


def render_bayes(results, fmt: str) -> str:
    lines = []
    for res in results:
        if fmt == "delimited":
            lines.append(
                "|".join(
                    [
                        "bayes",
                        res.scenario_label,
                        _ffull(res.prior_odds),
                        _exact(res.prior_odds),
                        _ffull(res.null_likelihood),
                        _exact(res.null_likelihood),
                        _ffull(res.alt_likelihood),
                        _exact(res.alt_likelihood),
                        "inf" if res.likelihood_ratio is None else _ffull(res.likelihood_ratio),
                        _exact(res.likelihood_ratio),
                        _ffull(res.rendition_factor),
                        _exact(res.rendition_factor),
                        "inf" if res.posterior_odds is None else _ffull(res.posterior_odds),
                        _exact(res.posterior_odds) if res.posterior_odds is not None else "inf",
                        _ffull(res.posterior),
                        _exact(res.posterior),
                    ]
                )
            )
        else:
            lr = "inf" if res.likelihood_ratio is None else _f3(res.likelihood_ratio)
            odds = "inf" if res.posterior_odds is None else _f3(res.posterior_odds)
            lines.extend(
                [
                    f"scenario {res.scenario_label}",
                    f"  prior odds        {_f3(res.prior_odds):>10}  (= {_exact(res.prior_odds)})",
                    f"  null likelihood   {_f3(res.null_likelihood):>10}  (= {_exact(res.null_likelihood)})",
                    f"  alt likelihood    {_f3(res.alt_likelihood):>10}  (= {_exact(res.alt_likelihood)})",
                    f"  likelihood ratio  {lr:>10}",
                    f"  rendition factor  {_f3(res.rendition_factor):>10}",
                    f"  posterior odds    {odds:>10}",
                    f"  posterior         {float(res.posterior) * 100:.3g}%",
                    "",
                ]
            )
    return "\n".join(lines).rstrip("\n")


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def cmd_freq(config: ScenarioConfig, fmt: str) -> int:
    if not config.freq_rows:
        raise ConfigError(f"{config.source}: no [freq] rows configured")
    grid = run_scenario_grid(config.onomasticon, config.freq_scenarios())
    print(render_grid(grid, fmt))
    return 0


def cmd_bayes(config: ScenarioConfig, fmt: str) -> int:
    if not config.bayes_scenarios:
        raise ConfigError(f"{config.source}: no [bayes] scenarios configured")
    fixtures = config.bayes_fixtures()
    results = [run_bayes_scenario(s, fixtures) for s in config.bayes_scenarios]
    print(render_bayes(results, fmt))
    return 0


def cmd_rr_demo(split: bool, fractions: Sequence[Fraction] | None, fmt: str) -> int:
    space, rel, observed = demo_fixture()
    lines = []

    def describe(space, rel, tag):
        pvalue = rr_pvalue(space, rel, observed)
        if fmt == "delimited":
            stats = ";".join(
                f"{o}:{rr_statistic(space, rel, o)}" for o in space.outcomes
            )
            lines.append(f"rr|{tag}|{observed}|{stats}|{pvalue}")
        else:
            lines.append(f"{tag} outcomes:")
            for o in space.outcomes:
                lines.append(f"  P0({o}) = {space.prob(o)}, statistic = {rr_statistic(space, rel, o)}")
            lines.append(f"  observed {observed} -> p-value = {pvalue}")
    describe(space, rel, "broad")

    if split:
        if fractions:
            parts = [(f"A{i + 1}", frac) for i, frac in enumerate(fractions)]
        else:
            parts = list(DEMO_SPLIT_PARTS)
        split_space, split_rel = split_rendition(space, rel, "A", parts)
        global_observed = parts[0][0]
        pvalue = rr_pvalue(split_space, split_rel, global_observed)
        if fmt == "delimited":
            stats = ";".join(
                f"{o}:{rr_statistic(split_space, split_rel, o)}" for o in split_space.outcomes
            )
            lines.append(f"rr|split|{global_observed}|{stats}|{pvalue}")
        else:
            lines.append("after splitting A into renditions:")
            for o in split_space.outcomes:
                lines.append(
                    f"  P0({o}) = {split_space.prob(o)}, statistic = {rr_statistic(split_space, split_rel, o)}"
                )
            lines.append(f"  observed {global_observed} -> p-value = {pvalue}")
    print("\n".join(lines))
    return 0


def _check_frequentist(config: ScenarioConfig, sim: SimConfig, perturb: float, lines) -> bool:
    scenario = config.freq_scenarios()[0]
    grid = run_scenario_grid(config.onomasticon, [scenario])
    exact = float(grid.rows[0].p_value) + perturb
    est = simulate_frequentist(config.onomasticon, scenario[0], scenario[2], scenario[1], scenario[3], sim)
    ok = est.within(exact)
    row = grid.rows[0]
    lines.append(
        f"frequentist {row.variant_label}/{row.ratio_kind}/{row.anchor_label}/{row.n_tombs}: "
        f"exact {exact:.6f} est {est.point:.6f} se {est.standard_error:.6f} "
        f"{'PASS' if ok else 'FAIL'}"
    )
    return ok


def _check_weighted_draw(config: ScenarioConfig, sim: SimConfig, perturb: float, lines) -> bool:
    if "neutral" not in config.weight_tables or config.inscriptions is None:
        raise ConfigError(f"{config.source}: weighted_draw check needs the neutral table and inscriptions")
    table = config.weight_tables["neutral"]
    k = len(config.inscriptions.names_of(MALE))
    outcomes = simulate_weighted_draw(table, k, sim, gender=MALE)
    ok = True
    for outcome, est in sorted(outcomes.items(), key=lambda kv: -kv[1].point):
        exact = float(draw_outcome_probability(table, outcome.persons, outcome.others, gender=MALE)) + perturb
        good = est.within(exact)
        ok &= good
        lines.append(
            f"weighted_draw {outcome.label()}: exact {exact:.6f} est {est.point:.6f} "
            f"se {est.standard_error:.6f} {'PASS' if good else 'FAIL'}"
        )
    return ok


def _check_alt_likelihood(config: ScenarioConfig, sim: SimConfig, perturb: float, lines) -> bool:
    if config.inscriptions is None:
        raise ConfigError(f"{config.source}: alt_likelihood check needs inscriptions")
    ok = True
    for label in sorted(config.weight_tables):
        table = config.weight_tables[label]
        exact = float(alt_name_likelihood(config.inscriptions, table, config.onomasticon)) + perturb
        est = simulate_alt_likelihood(config.inscriptions, table, config.onomasticon, sim)
        good = est.within(exact)
        ok &= good
        lines.append(
            f"alt_likelihood {label}: exact {exact:.6e} est {est.point:.6e} "
            f"se {est.standard_error:.6e} {'PASS' if good else 'FAIL'}"
        )
    return ok


def cmd_check(
    config: ScenarioConfig,
    targets: Sequence[str],
    trials: int | None,
    seed: int | None,
    perturb: float = 0.0,
) -> int:
    sim = SimConfig(
        trials=trials if trials is not None else config.check_trials,
        seed=seed if seed is not None else config.check_seed,
    )
    lines: list[str] = []
    all_ok = True
    for target in targets:
        if target == "frequentist":
            all_ok &= _check_frequentist(config, sim, perturb, lines)
        elif target == "weighted_draw":
            all_ok &= _check_weighted_draw(config, sim, perturb, lines)
        elif target == "alt_likelihood":
            all_ok &= _check_alt_likelihood(config, sim, perturb, lines)
        else:
            raise ConfigError(f"unknown check target {target!r}")
    lines.append(f"overall: {'PASS' if all_ok else 'FAIL'} (trials={sim.trials}, seed={sim.seed})")
    print("\n".join(lines))
    return 0 if all_ok else 1


def cmd_validate(config_path: Path) -> int:
    config = load_scenario_config(config_path)
    print(f"config {config.source}: OK")
    print(f"  target sets: {', '.join(sorted(config.target_sets)) or '(none)'}")
    print(f"  anchors: {', '.join(sorted(config.anchors)) or '(none)'}")
    print(f"  freq rows: {len(config.freq_rows)}")
    print(f"  weight tables: {', '.join(sorted(config.weight_tables)) or '(none)'}")
    print(f"  bayes scenarios: {', '.join(config.bayes_scenarios) or '(none)'}")
    print(f"  check targets: {', '.join(config.check_targets) or '(none)'}")
    return 0


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tombnames",
        description="Coincidence statistics for tomb name finds.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--config",
        type=Path,
        default=DEFAULT_CONFIG,
        help=f"scenario config file (default: built-in {DEFAULT_CONFIG.name})",
    )
    common.add_argument(
        "--format",
        choices=("text", "delimited"),
        default="text",
        help="output style (default: text)",
    )

    sub.add_parser("freq", parents=[common], help="multi-tomb p-value grid")
    sub.add_parser("bayes", parents=[common], help="posterior scenario blocks")

    rr = sub.add_parser("rr-demo", parents=[common], help="rendition-splitting p-value demo")
    rr.add_argument("--no-split", action="store_true", help="show only the broad-category p-value")
    rr.add_argument(
        "--fractions",
        default=None,
        help="comma-separated rendition fractions for splitting A (default: 1/3,2/3)",
    )

    check = sub.add_parser("check", parents=[common], help="Monte Carlo oracle vs exact values")
    check.add_argument("--trials", type=int, default=None, help="override configured trial count")
    check.add_argument("--seed", type=int, default=None, help="override configured seed")
    check.add_argument(
        "--target",
        action="append",
        choices=CHECK_TARGETS,
        default=None,
        help="check only this target (repeatable; default: configured targets)",
    )
    check.add_argument("--perturb-exact", type=float, default=0.0, help=argparse.SUPPRESS)

    sub.add_parser("validate", parents=[common], help="parse config and referenced files")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "validate":
            return cmd_validate(args.config)
        if args.command == "rr-demo":
            fractions = None
            if args.fractions:
                try:
                    fractions = [Fraction(part.strip()) for part in args.fractions.split(",")]
                except (ValueError, ZeroDivisionError) as exc:
                    raise ConfigError(f"bad --fractions value: {exc}") from None
            try:
                return cmd_rr_demo(not args.no_split, fractions, args.format)
            except ValueError as exc:
                raise ConfigError(str(exc)) from None
        config = load_scenario_config(args.config)
        if args.command == "freq":
            return cmd_freq(config, args.format)
        if args.command == "bayes":
            return cmd_bayes(config, args.format)
        if args.command == "check":
            targets = args.target if args.target else list(config.check_targets) or list(CHECK_TARGETS)
            return cmd_check(config, targets, args.trials, args.seed, args.perturb_exact)
        raise ConfigError(f"unknown command {args.command!r}")
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
