"""Built-in datasets and the Hilbert-space constructions that realize them.

Three datasets ship with the toolkit:

* ``animal-acts`` - coincidence probabilities from a survey on the
  concept combination *The Animal Acts* (exemplar pairs of *Animal* and
  *Acts*), which violates the CHSH bound at 2.4197;
* ``vessels`` - the connected-vessels-of-water thought experiment, a
  macroscopic system reaching the algebraic maximum CHSH = 4;
* ``vessels-separated`` - the same vessels with the connecting tube
  removed, which drops the CHSH combination back to the classical bound.

Each dataset that admits one comes with an explicit C^4 construction:
a state plus four measurements reproducing its probabilities.  The two
vessel constructions differ in where the entanglement sits (state vs.
measurements), which is the point of keeping both.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Mapping

from .bell import ZooClass
from .hilbert import (
    CANONICAL_ISO,
    COINCIDENCE_OUTCOMES,
    Isomorphism,
    Measurement,
    ModelVerdict,
    StateVector,
    operator_from_measurement,
    verify_model,
    verify_operator_model,
)
from .linalg import CMatrix, CVector, inner
from .tables import Experiment, JointTable, SettingPair, normalize

#: Entrywise tolerance when comparing against operator matrices that are
#: only known to three decimals.
ROUNDED_OPERATOR_TOL = 5e-2

#: Verification tolerance for the animal-acts model: expectation values
#: recomputed from three-decimal matrices and a three-decimal state.
ANIMAL_ACTS_MODEL_TOL = 0.03

#: Verification tolerance for the exact vessel constructions.
EXACT_MODEL_TOL = 1e-9


class InvalidTargetsError(ValueError):
    """Raised when target probabilities for a basis synthesis are invalid."""


@dataclass(frozen=True)
class Fixture:
    """A named reference experiment with its expected analysis results."""

    name: str
    experiment: Experiment
    expected_chsh: float
    chsh_tol: float
    expected_class: ZooClass


@dataclass(frozen=True)
class NamedModel:
    """A named Hilbert-space construction paired with a reference fixture.

    ``measurements`` holds labeled final-state bases when the construction
    provides them; the animal-acts model is known only through its
    operator matrices (their +-1 spectra are degenerate, so final states
    cannot be recovered), in which case ``measurements`` is ``None`` and
    verification compares expectation values instead of Born
    distributions.
    """

    name: str
    state: StateVector
    measurements: Mapping[SettingPair, Measurement] | None
    operators: Mapping[SettingPair, CMatrix]
    provenance: str
    fixture_name: str
    tolerance: float

    def verify(
        self,
        data: Experiment | None = None,
        tol: float | None = None,
        iso: Isomorphism = CANONICAL_ISO,
        product_tol: float | None = None,
    ) -> ModelVerdict:
        if data is None:
            data = get_fixture(self.fixture_name).experiment
        if tol is None:
            tol = self.tolerance
        if self.measurements is not None:
            return verify_model(
                self.state, self.measurements, data, tol, iso,
                product_tol if product_tol is not None else 1e-9,
            )
        return verify_operator_model(
            self.state, self.operators, data, tol, iso,
            product_tol if product_tol is not None else ROUNDED_OPERATOR_TOL,
        )


# ---------------------------------------------------------------------------
# animal-acts dataset and model
# ---------------------------------------------------------------------------

#: Survey probabilities per setting pair, in cell order 11, 12, 21, 22.
#: The A'B row sums to 0.999 as quoted (three-decimal rounding) and is
#: rescaled on construction.
ANIMAL_ACTS_PROBABILITIES: Mapping[SettingPair, tuple[float, float, float, float]] = {
    SettingPair.AB: (0.049, 0.630, 0.259, 0.062),
    SettingPair.AB_PRIME: (0.593, 0.025, 0.296, 0.086),
    SettingPair.A_PRIME_B: (0.778, 0.086, 0.086, 0.049),
    SettingPair.A_PRIME_B_PRIME: (0.148, 0.086, 0.099, 0.667),
}

#: State amplitudes as (modulus, phase in degrees).  The fourth amplitude
#: vanishes; its quoted phase is irrelevant and dropped.
ANIMAL_ACTS_STATE_POLAR = (
    (0.23, 13.93),
    (0.62, 16.72),
    (0.75, 9.69),
    (0.0, 0.0),
)

#: Operator matrices per setting pair, quoted to three decimals (hence
#: only comparable at ROUNDED_OPERATOR_TOL).
ANIMAL_ACTS_OPERATORS: Mapping[SettingPair, CMatrix] = {
    SettingPair.AB: CMatrix(
        [
            [0.952, -0.207 - 0.030j, 0.224 + 0.007j, 0.003 - 0.006j],
            [-0.207 + 0.030j, -0.930, 0.028 - 0.001j, -0.163 + 0.251j],
            [0.224 - 0.007j, 0.028 + 0.001j, -0.916, -0.193 + 0.266j],
            [0.003 + 0.006j, -0.163 - 0.251j, -0.193 - 0.266j, 0.895],
        ]
    ),
    SettingPair.AB_PRIME: CMatrix(
        [
            [-0.001, 0.587 + 0.397j, 0.555 + 0.434j, 0.035 + 0.0259j],
            [0.587 - 0.397j, -0.489, 0.497 + 0.0341j, -0.106 - 0.005j],
            [0.555 - 0.434j, 0.497 - 0.0341j, -0.503, 0.045 - 0.001j],
            [0.035 - 0.0259j, -0.106 + 0.005j, 0.045 + 0.001j, 0.992],
        ]
    ),
    SettingPair.A_PRIME_B: CMatrix(
        [
            [-0.587, 0.568 + 0.353j, 0.274 + 0.365j, 0.002 + 0.004j],
            [0.568 - 0.353j, 0.090, 0.681 + 0.263j, -0.110 - 0.007j],
            [0.274 - 0.365j, 0.681 - 0.263j, -0.484, 0.150 - 0.050j],
            [0.002 - 0.004j, -0.110 + 0.007j, 0.150 + 0.050j, 0.981],
        ]
    ),
    SettingPair.A_PRIME_B_PRIME: CMatrix(
        [
            [0.854, 0.385 + 0.243j, -0.035 - 0.164j, -0.115 - 0.146j],
            [0.385 - 0.243j, -0.700, 0.483 + 0.132j, -0.086 + 0.212j],
            [-0.035 + 0.164j, 0.483 - 0.132j, 0.542, 0.093 + 0.647j],
            [-0.115 + 0.146j, -0.086 - 0.212j, 0.093 - 0.647j, -0.697],
        ]
    ),
}


def animal_acts_state() -> StateVector:
    """The C^4 state of the animal-acts construction, normalized (the
    quoted moduli give a norm of 0.99990)."""
    amps = [m * cmath.exp(1j * math.radians(ph)) for m, ph in ANIMAL_ACTS_STATE_POLAR]
    return StateVector.of(amps, normalize=True)


def animal_acts_data() -> Fixture:
    tables = {
        pair: normalize(values, pair)
        for pair, values in ANIMAL_ACTS_PROBABILITIES.items()
    }
    return Fixture(
        name="animal-acts",
        experiment=Experiment.from_tables(tables),
        expected_chsh=2.4197,
        chsh_tol=2e-3,
        expected_class=ZooClass.NONLOCAL_NON_MARGINAL_BOX_1,
    )


def animal_acts_model() -> NamedModel:
    return NamedModel(
        name="animal-acts",
        state=animal_acts_state(),
        measurements=None,
        operators=dict(ANIMAL_ACTS_OPERATORS),
        provenance="concept-combination survey (Animal Acts)",
        fixture_name="animal-acts",
        tolerance=ANIMAL_ACTS_MODEL_TOL,
    )


# ---------------------------------------------------------------------------
# vessels of water: dataset and the two constructions
# ---------------------------------------------------------------------------


def vessels_data() -> Fixture:
    """Connected vessels: perfect anti-correlation for AB, perfect
    correlation for the other three setting pairs (CHSH = 4)."""
    tables = {
        SettingPair.AB: JointTable(0.0, 0.5, 0.5, 0.0, SettingPair.AB),
        SettingPair.AB_PRIME: JointTable(1.0, 0.0, 0.0, 0.0, SettingPair.AB_PRIME),
        SettingPair.A_PRIME_B: JointTable(1.0, 0.0, 0.0, 0.0, SettingPair.A_PRIME_B),
        SettingPair.A_PRIME_B_PRIME: JointTable(
            1.0, 0.0, 0.0, 0.0, SettingPair.A_PRIME_B_PRIME
        ),
    }
    return Fixture(
        name="vessels",
        experiment=Experiment.from_tables(tables),
        expected_chsh=4.0,
        chsh_tol=1e-12,
        expected_class=ZooClass.NONLOCAL_NON_MARGINAL_BOX_2,
    )


def vessels_separated_data(flipped: str = "A'B") -> Fixture:
    """Vessels with the tube removed: the anti-correlation for AB stays,
    and exactly one of the perfect correlations flips to anti-correlation.

    Either AB' or A'B can be the one that flips (both give CHSH = 2);
    ``flipped`` selects which, A'B by default.
    """
    if flipped not in ("A'B", "AB'"):
        raise ValueError(f"flipped must be \"A'B\" or \"AB'\", got {flipped!r}")
    anti = (0.0, 0.5, 0.5, 0.0)
    corr = (1.0, 0.0, 0.0, 0.0)
    tables = {}
    for pair in SettingPair:
        if pair is SettingPair.AB or pair.label == flipped:
            tables[pair] = JointTable(*anti, pair=pair)
        else:
            tables[pair] = JointTable(*corr, pair=pair)
    return Fixture(
        name="vessels-separated",
        experiment=Experiment.from_tables(tables),
        expected_chsh=2.0,
        chsh_tol=1e-12,
        expected_class=ZooClass.KOLMOGOROVIAN_COMPATIBLE,
    )


def _vessel_vectors(alpha: float, beta: float):
    a = math.sqrt(0.5) * cmath.exp(1j * alpha)
    b = math.sqrt(0.5) * cmath.exp(1j * beta)
    e0 = CVector([1, 0, 0, 0])
    e3 = CVector([0, 0, 0, 1])
    plus = CVector([0, a, b, 0])
    minus = CVector([0, a, -b, 0])
    return e0, e3, plus, minus


def vessels_model(
    alpha: float = 0.0, beta: float = 0.0, transparent: bool = True
) -> NamedModel:
    """Construction with the entanglement in the state.

    The state is (0, sqrt(.5) e^{i alpha}, sqrt(.5) e^{i beta}, 0) for
    transparent water (its sign-flipped partner for non-transparent); AB
    is read out in the canonical product basis, while AB', A'B and A'B'
    each contain the state itself among their final states and are
    therefore entangled measurements.  All probabilities, and the Bell
    operator expectation of 4, are independent of the phases.
    """
    e0, e3, plus, minus = _vessel_vectors(alpha, beta)
    state_vec, partner = (plus, minus) if transparent else (minus, plus)
    e1 = CVector([0, 1, 0, 0])
    e2 = CVector([0, 0, 1, 0])
    measurements = {
        SettingPair.AB: Measurement(SettingPair.AB, (e0, e1, e2, e3)),
        SettingPair.AB_PRIME: Measurement(
            SettingPair.AB_PRIME, (state_vec, partner, e0, e3)
        ),
        SettingPair.A_PRIME_B: Measurement(
            SettingPair.A_PRIME_B, (state_vec, e0, partner, e3)
        ),
        SettingPair.A_PRIME_B_PRIME: Measurement(
            SettingPair.A_PRIME_B_PRIME, (state_vec, e0, e3, partner)
        ),
    }
    operators = {
        pair: operator_from_measurement(m) for pair, m in measurements.items()
    }
    return NamedModel(
        name="vessels",
        state=StateVector(state_vec),
        measurements=measurements,
        operators=operators,
        provenance="connected vessels of water, entangled-state construction",
        fixture_name="vessels",
        tolerance=EXACT_MODEL_TOL,
    )


def vessels_alternative_model(alpha: float = 0.0, beta: float = 0.0) -> NamedModel:
    """Construction with the entanglement in a single measurement.

    The same vessel probabilities are reproduced from the product state
    (1, 0, 0, 0) with AB', A'B and A'B' all canonical (product)
    measurements; only AB is entangled, through the final states
    (sqrt(.5) e^{i alpha}, 0, 0, +- sqrt(.5) e^{i beta}).  Together with
    :func:`vessels_model` this shows that where the entanglement sits
    depends on the chosen tensor-product identification, not on the data.
    """
    a = math.sqrt(0.5) * cmath.exp(1j * alpha)
    b = math.sqrt(0.5) * cmath.exp(1j * beta)
    e = [CVector([1 if i == k else 0 for i in range(4)]) for k in range(4)]
    w_plus = CVector([a, 0, 0, b])
    w_minus = CVector([a, 0, 0, -b])
    measurements = {
        SettingPair.AB: Measurement(SettingPair.AB, (e[1], w_plus, w_minus, e[2])),
        SettingPair.AB_PRIME: Measurement(SettingPair.AB_PRIME, tuple(e)),
        SettingPair.A_PRIME_B: Measurement(SettingPair.A_PRIME_B, tuple(e)),
        SettingPair.A_PRIME_B_PRIME: Measurement(
            SettingPair.A_PRIME_B_PRIME, tuple(e)
        ),
    }
    operators = {
        pair: operator_from_measurement(m) for pair, m in measurements.items()
    }
    return NamedModel(
        name="vessels-alt",
        state=StateVector(e[0]),
        measurements=measurements,
        operators=operators,
        provenance="connected vessels of water, product-state construction",
        fixture_name="vessels",
        tolerance=EXACT_MODEL_TOL,
    )


# ---------------------------------------------------------------------------
# basis synthesis
# ---------------------------------------------------------------------------


def basis_from_probabilities(
    state: StateVector,
    targets: tuple[float, float, float, float],
    pair: SettingPair = SettingPair.AB,
    outcomes: tuple[float, float, float, float] = COINCIDENCE_OUTCOMES,
) -> Measurement:
    """Build an orthonormal basis whose Born probabilities in ``state``
    equal ``targets``.

    Let t be the unit vector with amplitudes sqrt(target_k).  A single
    reflection H sends ``state`` to -c t, where c is the unimodular phase
    aligning t with the state (the reflection across state + c t is
    always well conditioned, since |state + c t| >= sqrt(2)).  The
    returned basis vectors are -c H |k>, so every overlap <e_k|state>
    comes out real and nonnegative, equal to sqrt(target_k): the phase
    convention that makes the construction deterministic.
    """
    vals = tuple(float(x) for x in targets)
    if len(vals) != 4:
        raise InvalidTargetsError(f"expected 4 target probabilities, got {len(vals)}")
    if not all(math.isfinite(v) for v in vals):
        raise InvalidTargetsError(f"target probabilities must be finite: {vals}")
    if any(v < -1e-12 for v in vals):
        raise InvalidTargetsError(f"target probabilities must be nonnegative: {vals}")
    if abs(sum(vals) - 1.0) > 1e-9:
        raise InvalidTargetsError(f"target probabilities sum to {sum(vals)!r}, not 1")

    s = state.vector
    t = CVector([math.sqrt(max(v, 0.0)) for v in vals])
    overlap = inner(t, s)
    c = overlap / abs(overlap) if abs(overlap) > 0.0 else 1.0 + 0j
    w = s + t.scaled(c)
    wnorm2 = sum(abs(z) ** 2 for z in w)  # = 2 + 2|<t|s>| >= 2

    basis = []
    for k in range(4):
        column = [
            (1.0 if i == k else 0.0) - 2.0 * w[i] * w[k].conjugate() / wnorm2
            for i in range(4)
        ]
        basis.append(CVector(column).scaled(-c))
    return Measurement(pair, tuple(basis), outcomes)


# ---------------------------------------------------------------------------
# registries
# ---------------------------------------------------------------------------

FIXTURE_BUILDERS: Mapping[str, Callable[[], Fixture]] = {
    "animal-acts": animal_acts_data,
    "vessels": vessels_data,
    "vessels-separated": vessels_separated_data,
}

FIXTURE_NAMES = tuple(FIXTURE_BUILDERS)

MODEL_NAMES = ("animal-acts", "vessels", "vessels-alt")

#: Names accepted by the model command; vessels-separated has no
#: construction and yields a data-only report.
MODEL_COMMAND_NAMES = MODEL_NAMES + ("vessels-separated",)


def get_fixture(name: str) -> Fixture:
    try:
        builder = FIXTURE_BUILDERS[name]
    except KeyError:
        raise ValueError(
            f"unknown fixture {name!r}; choose from {sorted(FIXTURE_BUILDERS)}"
        ) from None
    return builder()


def get_model(name: str, alpha: float = 0.0, beta: float = 0.0) -> NamedModel:
    if name == "animal-acts":
        return animal_acts_model()
    if name == "vessels":
        return vessels_model(alpha, beta)
    if name == "vessels-alt":
        return vessels_alternative_model(alpha, beta)
    raise ValueError(f"unknown model {name!r}; choose from {sorted(MODEL_NAMES)}")
