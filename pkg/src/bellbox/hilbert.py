"""Hilbert-space layer: states, labeled measurements, operators, Born
probabilities, the Bell operator, and product/entanglement detection.

Entanglement is decided relative to an explicit identification of C^4
with C^2 (x) C^2: an :class:`Isomorphism` assigns each coordinate index a
cell of a 2x2 array.  A vector is a product vector when its reshaped 2x2
array has rank one (vanishing determinant), and an operator is a product
operator when its realignment has rank one.  Where the entanglement of a
construction sits can change with the isomorphism, which is why it is an
argument everywhere rather than a global convention.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence, Union

from .linalg import (
    DEFAULT_TOL,
    DIM,
    CMatrix,
    CVector,
    expectation,
    hermiticity_residual,
    inner,
    outer,
    quadratic_form,
)
from .tables import Experiment, JointTable, PAIR_ORDER, SettingPair

#: Orthonormality tolerance for measurement bases and unit states.
ORTHONORMAL_TOL = 1e-9

#: Conventional outcome values for a coincidence measurement: +1 on the
#: "same outcome" cells 11/22, -1 on the "opposite" cells 12/21.
COINCIDENCE_OUTCOMES = (1.0, -1.0, -1.0, 1.0)


@dataclass(frozen=True)
class Isomorphism:
    """Assignment of each C^4 coordinate to a cell of a 2x2 array."""

    name: str
    cells: tuple[tuple[int, int], tuple[int, int], tuple[int, int], tuple[int, int]]

    def __post_init__(self) -> None:
        if sorted(self.cells) != [(0, 0), (0, 1), (1, 0), (1, 1)]:
            raise ValueError(f"cells must be a bijection onto {{0,1}}^2: {self.cells}")


#: Index k goes to cell (k // 2, k % 2).
CANONICAL_ISO = Isomorphism("canonical", ((0, 0), (0, 1), (1, 0), (1, 1)))

#: Same with the off-diagonal cells exchanged (indices 1 and 2 swap roles).
SWAPPED_ISO = Isomorphism("swapped", ((0, 0), (1, 0), (0, 1), (1, 1)))

ISOMORPHISMS = {iso.name: iso for iso in (CANONICAL_ISO, SWAPPED_ISO)}


def isomorphism_by_name(name: str) -> Isomorphism:
    try:
        return ISOMORPHISMS[name]
    except KeyError:
        raise ValueError(
            f"unknown isomorphism {name!r}; choose from {sorted(ISOMORPHISMS)}"
        ) from None


@dataclass(frozen=True)
class StateVector:
    """A unit vector in C^4."""

    vector: CVector
    norm_tol: float = ORTHONORMAL_TOL

    def __post_init__(self) -> None:
        n = self.vector.norm()
        if abs(n - 1.0) > self.norm_tol:
            raise ValueError(f"state norm {n!r} is not 1 within {self.norm_tol}")

    @classmethod
    def of(cls, amplitudes: Sequence[object], normalize: bool = False) -> "StateVector":
        vec = CVector(amplitudes)
        if normalize:
            vec = vec.normalized()
        return cls(vec)


VectorLike = Union[CVector, StateVector]


def _vec(v: VectorLike) -> CVector:
    return v.vector if isinstance(v, StateVector) else v


@dataclass(frozen=True)
class Measurement:
    """Four labeled orthonormal final states with their outcome values.

    Final states are kept in table cell order (11, 12, 21, 22) for the
    measurement's setting pair; the operator representation is recovered
    from the spectral form when needed, never the other way round (the
    operators can have degenerate spectra).
    """

    pair: SettingPair
    final_states: tuple[CVector, CVector, CVector, CVector]
    outcomes: tuple[float, float, float, float] = COINCIDENCE_OUTCOMES
    labels: tuple[str, str, str, str] = field(default=())  # type: ignore[assignment]

    def __post_init__(self) -> None:
        if not self.labels:
            object.__setattr__(self, "labels", self.pair.outcome_labels)
        if len(set(self.labels)) != 4:
            raise ValueError(f"outcome labels must be unique: {self.labels}")
        for i in range(4):
            for j in range(i, 4):
                overlap = abs(inner(self.final_states[i], self.final_states[j]))
                want = 1.0 if i == j else 0.0
                if abs(overlap - want) > ORTHONORMAL_TOL:
                    raise ValueError(
                        f"final states {self.labels[i]},{self.labels[j]} are not "
                        f"orthonormal: |<i|j>| = {overlap!r}"
                    )


def born_probabilities(state: VectorLike, measurement: Measurement) -> JointTable:
    """Outcome probabilities |<final_k|state>|^2 as a joint table."""
    v = _vec(state)
    probs = [min(max(abs(inner(f, v)) ** 2, 0.0), 1.0) for f in measurement.final_states]
    return JointTable(*probs, pair=measurement.pair)


def operator_from_measurement(measurement: Measurement) -> CMatrix:
    """Self-adjoint operator in spectral form, sum of outcome * |f><f|."""
    total = CMatrix.zero()
    for value, state in zip(measurement.outcomes, measurement.final_states):
        total = total + outer(state, state).scaled(value)
    return total


def bell_operator(
    e_ab_prime: CMatrix,
    e_a_prime_b: CMatrix,
    e_ab: CMatrix,
    e_a_prime_b_prime: CMatrix,
) -> CMatrix:
    """The combination E_A'B' + E_A'B + E_AB' - E_AB."""
    return e_a_prime_b_prime + e_a_prime_b + e_ab_prime - e_ab


def bell_operator_from(operators: Mapping[SettingPair, CMatrix]) -> CMatrix:
    return bell_operator(
        e_ab_prime=operators[SettingPair.AB_PRIME],
        e_a_prime_b=operators[SettingPair.A_PRIME_B],
        e_ab=operators[SettingPair.AB],
        e_a_prime_b_prime=operators[SettingPair.A_PRIME_B_PRIME],
    )


Block = tuple[tuple[complex, complex], tuple[complex, complex]]


def reshape(v: VectorLike, iso: Isomorphism = CANONICAL_ISO) -> Block:
    """Arrange the four amplitudes into the 2x2 array chosen by ``iso``."""
    vec = _vec(v)
    cells = [[0j, 0j], [0j, 0j]]
    for k, (row, col) in enumerate(iso.cells):
        cells[row][col] = vec[k]
    return ((cells[0][0], cells[0][1]), (cells[1][0], cells[1][1]))


def _block_det(block: Block) -> complex:
    return block[0][0] * block[1][1] - block[0][1] * block[1][0]


def schmidt_coefficients(
    v: VectorLike, iso: Isomorphism = CANONICAL_ISO
) -> tuple[float, float]:
    """Singular values of the reshaped vector, in nonincreasing order.

    Closed form for a 2x2 array with squared Frobenius norm t and
    determinant modulus d: s+- = sqrt((t +- sqrt(t^2 - 4 d^2)) / 2).
    """
    block = reshape(v, iso)
    t = sum(abs(z) ** 2 for row in block for z in row)
    d = abs(_block_det(block))
    disc = math.sqrt(max(t * t - 4.0 * d * d, 0.0))
    s_large = math.sqrt(max((t + disc) / 2.0, 0.0))
    s_small = math.sqrt(max((t - disc) / 2.0, 0.0))
    return (s_large, s_small)


def is_product_vector(
    v: VectorLike, iso: Isomorphism = CANONICAL_ISO, tol: float = DEFAULT_TOL
) -> bool:
    """True when the vector is a tensor product under ``iso`` (the reshaped
    2x2 array has vanishing determinant)."""
    return abs(_block_det(reshape(v, iso))) <= tol


def realign(m: CMatrix, iso: Isomorphism = CANONICAL_ISO) -> CMatrix:
    """Index rearrangement whose rank-one property characterizes product
    operators: R[(i,i'),(j,j')] = M[(i,j),(i',j')] in iso coordinates."""
    rows = [[0j] * DIM for _ in range(DIM)]
    for k in range(DIM):
        rk, ck = iso.cells[k]
        for l in range(DIM):  # noqa: E741 - paired index with k
            rl, cl = iso.cells[l]
            rows[2 * rk + rl][2 * ck + cl] = m[k][l]
    return CMatrix(rows)


def max_minor_2x2(m: CMatrix) -> float:
    """Largest absolute 2x2 minor; zero exactly for rank <= 1 matrices."""
    best = 0.0
    for r1 in range(DIM):
        for r2 in range(r1 + 1, DIM):
            for c1 in range(DIM):
                for c2 in range(c1 + 1, DIM):
                    minor = m[r1][c1] * m[r2][c2] - m[r1][c2] * m[r2][c1]
                    if abs(minor) > best:
                        best = abs(minor)
    return best


def is_product_operator(
    m: CMatrix, iso: Isomorphism = CANONICAL_ISO, tol: float = DEFAULT_TOL
) -> bool:
    """True when ``m`` equals some A (x) B under ``iso``: every 2x2 minor
    of the realignment vanishes within ``tol``."""
    return max_minor_2x2(realign(m, iso)) <= tol


def is_entangled_measurement(
    measurement: Measurement,
    iso: Isomorphism = CANONICAL_ISO,
    tol: float = DEFAULT_TOL,
) -> bool:
    """A measurement is entangled when at least one final state is not a
    product vector under ``iso``."""
    return any(
        not is_product_vector(f, iso, tol) for f in measurement.final_states
    )


@dataclass(frozen=True)
class ModelVerdict:
    """Outcome of checking a Hilbert-space construction against data.

    ``residual_kind`` records what was compared per measurement:
    ``"probabilities"`` for full Born distributions (basis-backed models)
    or ``"expectations"`` for operator expectation values only (models
    known through their operators, whose degenerate spectra do not
    determine final states).
    """

    residual_kind: str
    residuals: Mapping[SettingPair, float]
    measurement_entangled: Mapping[SettingPair, bool]
    state_entangled: bool
    hermiticity_residuals: Mapping[SettingPair, float]
    chsh_from_model: float
    chsh_imag_residual: float
    tolerance: float
    passed: bool


def verify_model(
    state: StateVector,
    measurements: Mapping[SettingPair, Measurement],
    data: Experiment,
    tol: float,
    iso: Isomorphism = CANONICAL_ISO,
    product_tol: float = DEFAULT_TOL,
) -> ModelVerdict:
    """Check a basis-backed model: Born probabilities against the data
    tables, entanglement flags, and the model's CHSH value."""
    residuals = {}
    entangled = {}
    herm = {}
    operators = {}
    for pair in PAIR_ORDER:
        m = measurements[pair]
        predicted = born_probabilities(state, m)
        observed = data.table(pair)
        residuals[pair] = max(
            abs(p - o) for p, o in zip(predicted.values, observed.values)
        )
        entangled[pair] = is_entangled_measurement(m, iso, product_tol)
        op = operator_from_measurement(m)
        operators[pair] = op
        herm[pair] = hermiticity_residual(op)
    bell_op = bell_operator_from(operators)
    bell_value = quadratic_form(bell_op, state.vector)
    return ModelVerdict(
        residual_kind="probabilities",
        residuals=residuals,
        measurement_entangled=entangled,
        state_entangled=not is_product_vector(state, iso, product_tol),
        hermiticity_residuals=herm,
        chsh_from_model=bell_value.real,
        chsh_imag_residual=abs(bell_value.imag),
        tolerance=tol,
        passed=all(r <= tol for r in residuals.values()),
    )


def verify_operator_model(
    state: StateVector,
    operators: Mapping[SettingPair, CMatrix],
    data: Experiment,
    tol: float,
    iso: Isomorphism = CANONICAL_ISO,
    product_tol: float = DEFAULT_TOL,
) -> ModelVerdict:
    """Check an operator-backed model: expectation values <s|E|s> against
    the data expectations E = p11 - p12 - p21 + p22 per setting pair."""
    residuals = {}
    entangled = {}
    herm = {}
    for pair in PAIR_ORDER:
        op = operators[pair]
        observed = data.table(pair)
        data_expectation = (
            observed.p11 - observed.p12 - observed.p21 + observed.p22
        )
        residuals[pair] = abs(expectation(op, state.vector) - data_expectation)
        entangled[pair] = not is_product_operator(op, iso, product_tol)
        herm[pair] = hermiticity_residual(op)
    bell_value = quadratic_form(bell_operator_from(operators), state.vector)
    return ModelVerdict(
        residual_kind="expectations",
        residuals=residuals,
        measurement_entangled=entangled,
        state_entangled=not is_product_vector(state, iso, DEFAULT_TOL),
        hermiticity_residuals=herm,
        chsh_from_model=bell_value.real,
        chsh_imag_residual=abs(bell_value.imag),
        tolerance=tol,
        passed=all(r <= tol for r in residuals.values()),
    )
