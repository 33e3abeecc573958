"""CHSH evaluation, bound constants, and experiment classification.

The classifier sorts an experiment into one of four classes according to
how strongly the CHSH inequality is violated and whether the marginal
distribution law holds:

* ``KOLMOGOROVIAN_COMPATIBLE`` - CHSH within the classical bound 2;
* ``NONLOCAL_BOX`` - violation at most the Tsirelson bound 2*sqrt(2),
  marginal law intact;
* ``NONLOCAL_NON_MARGINAL_BOX_1`` - violation at most 2*sqrt(2),
  marginal law broken;
* ``NONLOCAL_NON_MARGINAL_BOX_2`` - violation beyond 2*sqrt(2),
  marginal law broken.

A violation beyond the Tsirelson bound with intact marginals falls
outside these classes and raises :class:`AmbiguousClassError` rather
than guessing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Mapping

from .tables import Experiment, SettingPair, expectation_value, marginal_law_report


@dataclass(frozen=True)
class Bounds:
    """The three CHSH reference bounds (dimensionless)."""

    classical: float = 2.0
    tsirelson: float = 2.0 * math.sqrt(2.0)
    algebraic: float = 4.0

    def __post_init__(self) -> None:
        if not (self.classical < self.tsirelson < self.algebraic):
            raise ValueError("bounds must satisfy classical < tsirelson < algebraic")


BOUNDS = Bounds()

#: Term order of the CHSH combination E(A',B') + E(A',B) + E(A,B') - E(A,B).
CHSH_TERM_ORDER = (
    SettingPair.A_PRIME_B_PRIME,
    SettingPair.A_PRIME_B,
    SettingPair.AB_PRIME,
    SettingPair.AB,
)

#: Signs of the reference combination (minus on AB).
REFERENCE_SIGNS: Mapping[SettingPair, int] = {
    SettingPair.A_PRIME_B_PRIME: +1,
    SettingPair.A_PRIME_B: +1,
    SettingPair.AB_PRIME: +1,
    SettingPair.AB: -1,
}

# Variant enumeration: the single minus sign cycles over the four terms,
# reference pattern first; a global sign flip never changes the absolute
# value, so each pattern is scored by |sum|.
_MINUS_POSITIONS = (
    SettingPair.AB,
    SettingPair.AB_PRIME,
    SettingPair.A_PRIME_B,
    SettingPair.A_PRIME_B_PRIME,
)


class ZooClass(Enum):
    KOLMOGOROVIAN_COMPATIBLE = "KolmogorovianCompatible"
    NONLOCAL_BOX = "NonlocalBox"
    NONLOCAL_NON_MARGINAL_BOX_1 = "NonlocalNonMarginalBox1"
    NONLOCAL_NON_MARGINAL_BOX_2 = "NonlocalNonMarginalBox2"


class AmbiguousClassError(ValueError):
    """Raised when CHSH exceeds the Tsirelson bound while the marginal law
    holds: a configuration none of the named classes covers."""

    def __init__(self, chsh_max: float, tol: float):
        self.chsh_max = chsh_max
        self.tol = tol
        super().__init__(
            f"CHSH max {chsh_max:.6f} exceeds the Tsirelson bound while the "
            f"marginal law holds (tol={tol}); no named class applies"
        )


@dataclass(frozen=True)
class ChshResult:
    """CHSH value of an experiment.

    ``reference_combination`` is the reference combination
    E(A',B') + E(A',B) + E(A,B') - E(A,B); ``max_abs_over_variants`` is the
    largest absolute value over the eight sign patterns that place a single
    minus on one term (up to a global flip), with ``variant_signs`` the
    achieving pattern.
    """

    reference_combination: float
    max_abs_over_variants: float
    variant_signs: Mapping[SettingPair, int]


def chsh(experiment: Experiment) -> ChshResult:
    values = {pair: expectation_value(experiment.table(pair)) for pair in CHSH_TERM_ORDER}
    reference = sum(REFERENCE_SIGNS[pair] * values[pair] for pair in CHSH_TERM_ORDER)

    best_abs = -1.0
    best_signs: dict[SettingPair, int] = {}
    for minus_on in _MINUS_POSITIONS:
        signs = {pair: (-1 if pair is minus_on else 1) for pair in CHSH_TERM_ORDER}
        total = sum(signs[pair] * values[pair] for pair in CHSH_TERM_ORDER)
        if abs(total) > best_abs:
            best_abs = abs(total)
            if total < 0:  # fold in the global flip so the pattern scores +|total|
                signs = {pair: -s for pair, s in signs.items()}
            best_signs = signs
    return ChshResult(
        reference_combination=reference,
        max_abs_over_variants=best_abs,
        variant_signs=best_signs,
    )


def classify(experiment: Experiment, tol: float = 1e-6) -> ZooClass:
    """Classify an experiment by CHSH strength and marginal-law status.

    Raises :class:`AmbiguousClassError` for the unnamed corner (violation
    beyond Tsirelson with intact marginals).
    """
    s = chsh(experiment).max_abs_over_variants
    marginals_hold = marginal_law_report(experiment, tol).holds
    if s <= BOUNDS.classical + tol:
        return ZooClass.KOLMOGOROVIAN_COMPATIBLE
    if marginals_hold:
        if s <= BOUNDS.tsirelson + tol:
            return ZooClass.NONLOCAL_BOX
        raise AmbiguousClassError(s, tol)
    if s <= BOUNDS.tsirelson + tol:
        return ZooClass.NONLOCAL_NON_MARGINAL_BOX_1
    return ZooClass.NONLOCAL_NON_MARGINAL_BOX_2
