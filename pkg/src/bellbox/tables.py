"""Joint probability tables for 2-setting / 2-outcome coincidence experiments.

A :class:`JointTable` holds the four outcome probabilities of one
coincidence measurement; an :class:`Experiment` bundles the four tables
belonging to the setting pairs AB, AB', A'B and A'B'.  The module also
provides expectation values, marginals, the marginal-distribution-law
(no-signaling) check and a factorizability test.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Mapping, Sequence

#: Default slack when deciding whether raw probabilities are normalized.
#: Published tables are often rounded, so their sum can miss 1 by a few
#: parts in a thousand.
DEFAULT_NORM_TOL = 0.01

_ENTRY_EPS = 1e-12


class TableError(ValueError):
    """Base class for probability-table construction errors."""


class NegativeEntryError(TableError):
    pass


class NotNormalizableError(TableError):
    pass


class SettingPair(Enum):
    """One of the four setting combinations of a CHSH-type experiment."""

    AB = "AB"
    AB_PRIME = "AB'"
    A_PRIME_B = "A'B"
    A_PRIME_B_PRIME = "A'B'"

    @property
    def label(self) -> str:
        return self.value

    @property
    def first(self) -> str:
        """Name of the first-side setting (A or A')."""
        return "A'" if self in (SettingPair.A_PRIME_B, SettingPair.A_PRIME_B_PRIME) else "A"

    @property
    def second(self) -> str:
        """Name of the second-side setting (B or B')."""
        return "B'" if self in (SettingPair.AB_PRIME, SettingPair.A_PRIME_B_PRIME) else "B"

    @property
    def outcome_labels(self) -> tuple[str, str, str, str]:
        """Cell labels in table order: 11, 12, 21, 22."""
        f, s = self.first, self.second
        return (f"{f}1{s}1", f"{f}1{s}2", f"{f}2{s}1", f"{f}2{s}2")

    @classmethod
    def from_label(cls, text: str) -> "SettingPair":
        for pair in cls:
            if pair.value == text:
                return pair
        raise ValueError(f"unknown setting pair {text!r}")


#: Display order for the four tables of an experiment.
PAIR_ORDER = (
    SettingPair.AB,
    SettingPair.AB_PRIME,
    SettingPair.A_PRIME_B,
    SettingPair.A_PRIME_B_PRIME,
)

#: Default side labels: settings A/A' on the first side, B/B' on the second.
DEFAULT_SIDES = (("A", "A'"), ("B", "B'"))


@dataclass(frozen=True)
class JointTable:
    """The 2x2 joint outcome probabilities of one coincidence measurement.

    Cell order is (11, 12, 21, 22): first index for the first side's
    outcome, second for the second side's.  Entries must be probabilities
    summing to 1 within :data:`DEFAULT_NORM_TOL` (build via
    :func:`normalize` to rescale raw values to an exact sum).
    """

    p11: float
    p12: float
    p21: float
    p22: float
    pair: SettingPair = SettingPair.AB

    def __post_init__(self) -> None:
        for label, value in zip(self.pair.outcome_labels, self.values):
            if not (-_ENTRY_EPS <= value <= 1.0 + _ENTRY_EPS):
                raise TableError(f"entry {label} = {value!r} is not a probability")
        total = sum(self.values)
        if abs(total - 1.0) > DEFAULT_NORM_TOL:
            raise NotNormalizableError(
                f"table {self.pair.label} sums to {total!r}, too far from 1"
            )

    @property
    def values(self) -> tuple[float, float, float, float]:
        return (self.p11, self.p12, self.p21, self.p22)

    @property
    def outcome_labels(self) -> tuple[str, str, str, str]:
        return self.pair.outcome_labels

    def transposed(self, pair: SettingPair | None = None) -> "JointTable":
        """Swap the roles of the two sides (cells 12 and 21 trade places)."""
        return JointTable(self.p11, self.p21, self.p12, self.p22, pair or self.pair)


def normalize(
    values: Sequence[float],
    pair: SettingPair = SettingPair.AB,
    tol: float = DEFAULT_NORM_TOL,
) -> JointTable:
    """Build a :class:`JointTable` from raw probabilities, rescaling to sum 1.

    Sums already within 1e-12 of 1 are taken as exact: rescaling by such
    a factor is a floating-point no-op that would only break bitwise
    file round-trips.

    Raises :class:`NegativeEntryError` for negative entries and
    :class:`NotNormalizableError` when the raw sum misses 1 by more than
    ``tol``.
    """
    vals = tuple(float(v) for v in values)
    if len(vals) != 4:
        raise TableError(f"expected 4 probabilities, got {len(vals)}")
    for label, value in zip(pair.outcome_labels, vals):
        if not math.isfinite(value):
            raise TableError(f"entry {label} = {value!r} is not finite")
        if value < 0:
            raise NegativeEntryError(f"entry {label} = {value!r} is negative")
    total = sum(vals)
    if abs(total - 1.0) > tol:
        raise NotNormalizableError(
            f"table {pair.label} sums to {total!r}; |sum - 1| exceeds tol={tol}"
        )
    if abs(total - 1.0) <= 1e-12:
        return JointTable(*vals, pair=pair)
    return JointTable(*(v / total for v in vals), pair=pair)


@dataclass(frozen=True)
class Experiment:
    """Four joint tables, one per setting pair, plus side labels."""

    tables: tuple[JointTable, JointTable, JointTable, JointTable]
    sides: tuple[tuple[str, str], tuple[str, str]] = DEFAULT_SIDES

    def __post_init__(self) -> None:
        pairs = tuple(t.pair for t in self.tables)
        if pairs != PAIR_ORDER:
            raise TableError(
                f"tables must appear in order {[p.label for p in PAIR_ORDER]}, "
                f"got {[p.label for p in pairs]}"
            )

    @classmethod
    def from_tables(
        cls,
        tables: Mapping[SettingPair, JointTable],
        sides: tuple[tuple[str, str], tuple[str, str]] = DEFAULT_SIDES,
    ) -> "Experiment":
        missing = [p.label for p in PAIR_ORDER if p not in tables]
        if missing:
            raise TableError(f"missing tables for setting pairs: {missing}")
        return cls(tuple(tables[p] for p in PAIR_ORDER), sides)

    def table(self, pair: SettingPair) -> JointTable:
        return self.tables[PAIR_ORDER.index(pair)]

    def swap_sides(self) -> "Experiment":
        """Relabel which side is 'first': transpose every table and swap
        the AB'/A'B roles accordingly."""
        mapping = {
            SettingPair.AB: self.table(SettingPair.AB),
            SettingPair.AB_PRIME: self.table(SettingPair.A_PRIME_B),
            SettingPair.A_PRIME_B: self.table(SettingPair.AB_PRIME),
            SettingPair.A_PRIME_B_PRIME: self.table(SettingPair.A_PRIME_B_PRIME),
        }
        swapped = {p: t.transposed(p) for p, t in mapping.items()}
        return Experiment.from_tables(swapped, sides=(self.sides[1], self.sides[0]))


def expectation_value(table: JointTable) -> float:
    """Correlation E = p11 - p12 - p21 + p22 for +-1 outcome values."""
    return table.p11 - table.p12 - table.p21 + table.p22


def marginals(table: JointTable) -> tuple[tuple[float, float], tuple[float, float]]:
    """Per-side outcome marginals: ((first1, first2), (second1, second2))."""
    first = (table.p11 + table.p12, table.p21 + table.p22)
    second = (table.p11 + table.p21, table.p12 + table.p22)
    return first, second


@dataclass(frozen=True)
class MarginalComparison:
    """One side's marginal under a fixed setting, compared across the two
    tables that share that setting."""

    side: str  # "first" or "second"
    setting: str  # e.g. "A", "A'", "B", "B'"
    pairs: tuple[SettingPair, SettingPair]
    marginal_a: tuple[float, float]
    marginal_b: tuple[float, float]
    differences: tuple[float, float]
    holds: bool


@dataclass(frozen=True)
class MarginalLawReport:
    comparisons: tuple[MarginalComparison, ...]
    tol: float
    holds: bool


def marginal_law_report(experiment: Experiment, tol: float = 1e-6) -> MarginalLawReport:
    """Check the marginal distribution law (no-signaling) on all four settings.

    For each side and each of that side's settings, the marginal computed
    from the two tables sharing the setting must agree within ``tol``.
    """
    plan = (
        ("first", 0, (SettingPair.AB, SettingPair.AB_PRIME)),
        ("first", 1, (SettingPair.A_PRIME_B, SettingPair.A_PRIME_B_PRIME)),
        ("second", 0, (SettingPair.AB, SettingPair.A_PRIME_B)),
        ("second", 1, (SettingPair.AB_PRIME, SettingPair.A_PRIME_B_PRIME)),
    )
    comparisons = []
    for side, which, (pa, pb) in plan:
        idx = 0 if side == "first" else 1
        ma = marginals(experiment.table(pa))[idx]
        mb = marginals(experiment.table(pb))[idx]
        diffs = (abs(ma[0] - mb[0]), abs(ma[1] - mb[1]))
        setting = experiment.sides[idx][which]
        comparisons.append(
            MarginalComparison(
                side=side,
                setting=setting,
                pairs=(pa, pb),
                marginal_a=ma,
                marginal_b=mb,
                differences=diffs,
                holds=max(diffs) <= tol,
            )
        )
    return MarginalLawReport(
        comparisons=tuple(comparisons),
        tol=tol,
        holds=all(c.holds for c in comparisons),
    )


@dataclass(frozen=True)
class Factors:
    """Normalized one-sided probabilities with a + a' = 1 and b + b' = 1."""

    a: float
    b: float
    a_prime: float
    b_prime: float


@dataclass(frozen=True)
class FactorizationVerdict:
    factorizable: bool
    factors: Factors | None
    residual: float


def factorization_test(table: JointTable, tol: float = 1e-9) -> FactorizationVerdict:
    """Decide whether the table is an outer product of one-sided probabilities.

    A normalized nonnegative 2x2 table factorizes as (a, a') x (b, b')
    exactly when its determinant p11*p22 - p12*p21 vanishes; the residual
    reported is the absolute determinant.  When factorizable, the unique
    normalized representative (a + a' = 1, b + b' = 1) is returned, read
    off the marginals.
    """
    det = table.p11 * table.p22 - table.p12 * table.p21
    residual = abs(det)
    if residual > tol:
        return FactorizationVerdict(False, None, residual)
    factors = Factors(
        a=table.p11 + table.p12,
        b=table.p11 + table.p21,
        a_prime=table.p21 + table.p22,
        b_prime=table.p12 + table.p22,
    )
    return FactorizationVerdict(True, factors, residual)


def outer_product_table(
    first: tuple[float, float],
    second: tuple[float, float],
    pair: SettingPair = SettingPair.AB,
) -> JointTable:
    """Table built from independent one-sided distributions."""
    (a, a2), (b, b2) = first, second
    return JointTable(a * b, a * b2, a2 * b, a2 * b2, pair)
