"""Name-frequency catalogs and the probability queries built on them.

An onomasticon is a catalog of personal names with occurrence counts,
split by gender. It serves as the empirical null measure for everything
else in this package: the chance that a random burial bears a given name,
or any name from a target set, is read off these counts.

All probabilities are returned as exact ``fractions.Fraction`` values;
callers convert to float only when reporting.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import IO, Iterable

MALE = "male"
FEMALE = "female"
GENDERS = (MALE, FEMALE)

_GENDER_CODES = {"m": MALE, "f": FEMALE, MALE: MALE, FEMALE: FEMALE}


class OnomasticonFormatError(ValueError):
    """Raised for malformed catalog files; carries the offending line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


def parse_gender(code: str) -> str:
    try:
        return _GENDER_CODES[code.strip().lower()]
    except KeyError:
        raise ValueError(f"unknown gender code {code!r} (expected m or f)") from None


@dataclass(frozen=True)
class NameRecord:
    """One broad name category with its occurrence count.

    ``renditions`` optionally breaks the count into variant spellings;
    rendition counts must not exceed the broad count. Renditions are
    descriptive metadata only: no probability query in this module ever
    depends on them.
    """

    name: str
    gender: str
    count: int
    renditions: tuple[tuple[str, int], ...] = ()

    def __post_init__(self) -> None:
        if self.gender not in GENDERS:
            raise ValueError(f"gender must be one of {GENDERS}, got {self.gender!r}")
        if not self.name:
            raise ValueError("name must be nonempty")
        if self.count < 0:
            raise ValueError(f"count for {self.name!r} must be >= 0, got {self.count}")
        seen = set()
        rend_sum = 0
        for rname, rcount in self.renditions:
            if rcount < 0:
                raise ValueError(f"rendition count for {self.name!r}/{rname!r} must be >= 0")
            if rname in seen:
                raise ValueError(f"duplicate rendition {rname!r} for {self.name!r}")
            seen.add(rname)
            rend_sum += rcount
        if rend_sum > self.count:
            raise ValueError(
                f"rendition counts for {self.name!r} sum to {rend_sum}, "
                f"exceeding the broad count {self.count}"
            )


@dataclass(frozen=True)
class Onomasticon:
    """Immutable name catalog with per-gender totals.

    Totals are stored explicitly rather than derived by summation: a
    catalog normally lists only the names of interest, while the totals
    cover the whole population (so listed counts sum to at most the
    total). Missing names resolve to count 0 on query.
    """

    records: tuple[NameRecord, ...]
    male_total: int
    female_total: int
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.male_total <= 0 or self.female_total <= 0:
            raise ValueError("gender totals must be positive")
        index: dict[tuple[str, str], NameRecord] = {}
        sums = {MALE: 0, FEMALE: 0}
        for rec in self.records:
            key = (rec.gender, rec.name)
            if key in index:
                raise ValueError(f"duplicate record for {rec.name!r} ({rec.gender})")
            index[key] = rec
            sums[rec.gender] += rec.count
        if sums[MALE] > self.male_total:
            raise ValueError(
                f"male counts sum to {sums[MALE]}, exceeding male_total {self.male_total}"
            )
        if sums[FEMALE] > self.female_total:
            raise ValueError(
                f"female counts sum to {sums[FEMALE]}, exceeding female_total {self.female_total}"
            )
        object.__setattr__(self, "_index", index)

    def gender_total(self, gender: str) -> int:
        return self.male_total if gender == MALE else self.female_total

    def count(self, name: str, gender: str) -> int:
        """Occurrence count for a name, 0 when the name is not listed."""
        rec = self._index.get((gender, name))
        return rec.count if rec is not None else 0

    def record(self, name: str, gender: str) -> NameRecord | None:
        return self._index.get((gender, name))

    def names(self, gender: str) -> tuple[str, ...]:
        return tuple(rec.name for rec in self.records if rec.gender == gender)

    def gender_frequency(self, name: str, gender: str) -> Fraction:
        """Within-gender frequency count/total, independent of any ratio model."""
        return Fraction(self.count(name, gender), self.gender_total(gender))


@dataclass(frozen=True)
class RatioModel:
    """How a random draw splits between the genders.

    ``equal`` gives each gender share 1/2; ``empirical`` uses the catalog
    totals, male_total/(male_total+female_total) and the complement.
    """

    kind: str = "equal"

    def __post_init__(self) -> None:
        if self.kind not in ("equal", "empirical"):
            raise ValueError(f"ratio kind must be 'equal' or 'empirical', got {self.kind!r}")

    def shares(self, o: Onomasticon) -> tuple[Fraction, Fraction]:
        """(male share, female share); the two always sum to 1."""
        if self.kind == "equal":
            return Fraction(1, 2), Fraction(1, 2)
        total = o.male_total + o.female_total
        male = Fraction(o.male_total, total)
        return male, 1 - male

    def share(self, o: Onomasticon, gender: str) -> Fraction:
        male, female = self.shares(o)
        return male if gender == MALE else female


EQUAL_RATIO = RatioModel("equal")
EMPIRICAL_RATIO = RatioModel("empirical")


def name_probability(o: Onomasticon, name: str, gender: str, ratio: RatioModel) -> Fraction:
    """Probability that a single random draw bears this name.

    gender share * count / gender total; a name missing from the catalog
    contributes probability 0.
    """
    return ratio.share(o, gender) * o.gender_frequency(name, gender)


def target_set_nu(
    o: Onomasticon, names: Iterable[tuple[str, str]], ratio: RatioModel
) -> Fraction:
    """Probability that a single random draw lands in the target set.

    ``names`` is a collection of (name, gender) pairs. Per gender the
    listed counts are summed and divided by that gender's total, then the
    two are mixed by the ratio model's shares.
    """
    sums = {MALE: 0, FEMALE: 0}
    seen: set[tuple[str, str]] = set()
    for name, gender in names:
        if gender not in GENDERS:
            raise ValueError(f"gender must be one of {GENDERS}, got {gender!r}")
        if (name, gender) in seen:
            continue
        seen.add((name, gender))
        sums[gender] += o.count(name, gender)
    male_share, female_share = ratio.shares(o)
    return male_share * Fraction(sums[MALE], o.male_total) + female_share * Fraction(
        sums[FEMALE], o.female_total
    )


# ---------------------------------------------------------------------------
# File format
#
#   totals|<male_total>|<female_total>
#   <name>|<m|f>|<count>[|<rendition>:<count>;<rendition>:<count>...]
#
# '#' starts a comment line; blank lines are ignored.
# ---------------------------------------------------------------------------


def load_onomasticon(source: IO[str] | str) -> Onomasticon:
    """Parse a catalog from a text stream or string.

    The first data line must be the totals header. Errors report the
    1-based line number of the offending line.
    """
    if isinstance(source, str):
        lines = source.splitlines()
    else:
        lines = source.read().splitlines()

    totals: tuple[int, int] | None = None
    records: list[NameRecord] = []
    seen: set[tuple[str, str]] = set()

    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = [p.strip() for p in line.split("|")]
        if totals is None:
            if parts[0] != "totals" or len(parts) != 3:
                raise OnomasticonFormatError(
                    "expected header 'totals|<male_total>|<female_total>'", lineno
                )
            try:
                totals = (int(parts[1]), int(parts[2]))
            except ValueError:
                raise OnomasticonFormatError("totals must be integers", lineno) from None
            if totals[0] <= 0 or totals[1] <= 0:
                raise OnomasticonFormatError("totals must be positive", lineno)
            continue

        if len(parts) not in (3, 4):
            raise OnomasticonFormatError(
                "expected '<name>|<m|f>|<count>[|renditions]'", lineno
            )
        name = parts[0]
        try:
            gender = parse_gender(parts[1])
            count = int(parts[2])
        except ValueError as exc:
            raise OnomasticonFormatError(str(exc), lineno) from None
        renditions: list[tuple[str, int]] = []
        if len(parts) == 4 and parts[3]:
            for chunk in parts[3].split(";"):
                rname, sep, rcount = chunk.partition(":")
                if not sep:
                    raise OnomasticonFormatError(
                        f"bad rendition entry {chunk!r} (expected name:count)", lineno
                    )
                try:
                    renditions.append((rname.strip(), int(rcount)))
                except ValueError:
                    raise OnomasticonFormatError(
                        f"rendition count in {chunk!r} must be an integer", lineno
                    ) from None
        if (gender, name) in seen:
            raise OnomasticonFormatError(f"duplicate record for {name!r} ({gender})", lineno)
        seen.add((gender, name))
        try:
            records.append(
                NameRecord(name=name, gender=gender, count=count, renditions=tuple(renditions))
            )
        except ValueError as exc:
            raise OnomasticonFormatError(str(exc), lineno) from None

    if totals is None:
        raise OnomasticonFormatError("missing totals header")
    try:
        return Onomasticon(records=tuple(records), male_total=totals[0], female_total=totals[1])
    except ValueError as exc:
        raise OnomasticonFormatError(str(exc)) from None


def dump_onomasticon(o: Onomasticon) -> str:
    """Serialize a catalog to the text format accepted by load_onomasticon."""
    out = [f"totals|{o.male_total}|{o.female_total}"]
    for rec in o.records:
        code = "m" if rec.gender == MALE else "f"
        line = f"{rec.name}|{code}|{rec.count}"
        if rec.renditions:
            line += "|" + ";".join(f"{rn}:{rc}" for rn, rc in rec.renditions)
        out.append(line)
    return "\n".join(out) + "\n"
