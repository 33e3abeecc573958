import cmath
import math
import random

import pytest

from bellbox.hilbert import (
    CANONICAL_ISO,
    SWAPPED_ISO,
    Isomorphism,
    Measurement,
    StateVector,
    bell_operator,
    bell_operator_from,
    born_probabilities,
    is_entangled_measurement,
    is_product_operator,
    is_product_vector,
    isomorphism_by_name,
    max_minor_2x2,
    operator_from_measurement,
    realign,
    reshape,
    schmidt_coefficients,
    verify_model,
)
from bellbox.linalg import (
    CMatrix,
    CVector,
    expectation,
    hermiticity_residual,
    matmul,
    max_entry_difference,
)
from bellbox.models import (
    ANIMAL_ACTS_OPERATORS,
    animal_acts_model,
    animal_acts_state,
    vessels_alternative_model,
    vessels_data,
    vessels_model,
)
from bellbox.tables import PAIR_ORDER, SettingPair

from oracles import (
    alternative_ab_operator_reference,
    np_random_orthonormal_basis,
    np_second_singular_value,
    np_singular_values_2x2,
    product_operator,
    random_2x2_matrix,
    random_product_vector,
    random_unit_cvector,
    vessels_offdiag_operator_reference,
)

SQ = math.sqrt(0.5)


def vessel_state(alpha=0.0, beta=0.0) -> CVector:
    return CVector([0, SQ * cmath.exp(1j * alpha), SQ * cmath.exp(1j * beta), 0])


class TestStateVector:
    def test_unit_accepted(self):
        StateVector(CVector([0, SQ, SQ, 0]))

    def test_non_unit_rejected(self):
        with pytest.raises(ValueError):
            StateVector(CVector([1, 1, 0, 0]))

    def test_of_normalizes(self):
        s = StateVector.of([1, 1, 0, 0], normalize=True)
        assert abs(s.vector.norm() - 1.0) < 1e-12


class TestMeasurement:
    def test_labels_default_to_pair(self):
        m = Measurement(SettingPair.AB_PRIME, tuple(CVector([1 if i == k else 0 for i in range(4)]) for k in range(4)))
        assert m.labels == ("A1B'1", "A1B'2", "A2B'1", "A2B'2")

    def test_non_orthogonal_rejected(self):
        e0 = CVector([1, 0, 0, 0])
        mixed = CVector([SQ, SQ, 0, 0])
        e2 = CVector([0, 0, 1, 0])
        e3 = CVector([0, 0, 0, 1])
        with pytest.raises(ValueError):
            Measurement(SettingPair.AB, (e0, mixed, e2, e3))

    def test_duplicate_labels_rejected(self):
        basis = tuple(CVector([1 if i == k else 0 for i in range(4)]) for k in range(4))
        with pytest.raises(ValueError):
            Measurement(SettingPair.AB, basis, labels=("x", "x", "y", "z"))


class TestBornProbabilities:
    def test_vessel_state_in_canonical_basis(self):
        m = vessels_model().measurements[SettingPair.AB]
        table = born_probabilities(StateVector(vessel_state()), m)
        assert max(abs(p - q) for p, q in zip(table.values, (0, 0.5, 0.5, 0))) <= 1e-12

    def test_vessel_state_in_own_basis(self):
        model = vessels_model(alpha=0.8, beta=0.1)
        table = born_probabilities(model.state, model.measurements[SettingPair.AB_PRIME])
        assert max(abs(p - q) for p, q in zip(table.values, (1, 0, 0, 0))) <= 1e-12

    def test_canonical_state_canonical_basis(self):
        m = vessels_model().measurements[SettingPair.AB]
        table = born_probabilities(StateVector(CVector([1, 0, 0, 0])), m)
        assert table.values == (1.0, 0.0, 0.0, 0.0)

    def test_sums_to_one_for_random_pairs(self):
        rng = random.Random(314)
        for _ in range(50):
            state = StateVector(random_unit_cvector(rng))
            basis = np_random_orthonormal_basis(rng)
            m = Measurement(SettingPair.AB, tuple(basis))
            assert abs(sum(born_probabilities(state, m).values) - 1.0) <= 1e-9


class TestOperatorFromMeasurement:
    def canonical_measurement(self):
        basis = tuple(CVector([1 if i == k else 0 for i in range(4)]) for k in range(4))
        return Measurement(SettingPair.AB, basis)

    def test_canonical_basis_gives_diagonal(self):
        op = operator_from_measurement(self.canonical_measurement())
        assert max_entry_difference(op, CMatrix.diagonal([1, -1, -1, 1])) == 0

    def test_vessel_offdiagonal_operator_zero_phase_difference(self):
        model = vessels_model(alpha=0.4, beta=0.4)  # equal phases
        op = model.operators[SettingPair.AB_PRIME]
        want = CMatrix(
            [
                [-1, 0, 0, 0],
                [0, 0, 1, 0],
                [0, 1, 0, 0],
                [0, 0, 0, 1],
            ]
        )
        assert max_entry_difference(op, want) <= 1e-12

    def test_vessel_offdiagonal_operators_general_phases(self):
        model = vessels_model(alpha=1.3, beta=-0.2)
        for pair in (SettingPair.AB_PRIME, SettingPair.A_PRIME_B):
            got = model.operators[pair]
            want = vessels_offdiag_operator_reference(1.3, -0.2, (1, -1, -1, 1))
            assert max_entry_difference(got, want) <= 1e-12

    def test_alternative_ab_operator_matches_reference(self):
        model = vessels_alternative_model(alpha=0.9, beta=2.2)
        got = model.operators[SettingPair.AB]
        want = alternative_ab_operator_reference(0.9, 2.2, (1, -1, -1, 1))
        assert max_entry_difference(got, want) <= 1e-12

    def test_hermitian_and_involutive_for_unit_outcomes(self):
        rng = random.Random(2718)
        for _ in range(25):
            basis = np_random_orthonormal_basis(rng)
            m = Measurement(SettingPair.AB, tuple(basis))
            op = operator_from_measurement(m)
            assert hermiticity_residual(op) <= 1e-12
            squared = matmul(op, op)
            assert max_entry_difference(squared, CMatrix.identity()) <= 1e-9

    def test_spectral_form_consistent_with_born_rule(self):
        rng = random.Random(1618)
        for _ in range(25):
            basis = np_random_orthonormal_basis(rng)
            outcomes = tuple(rng.uniform(-2, 2) for _ in range(4))
            m = Measurement(SettingPair.AB, tuple(basis), outcomes)
            state = StateVector(random_unit_cvector(rng))
            op = operator_from_measurement(m)
            via_born = sum(
                o * p for o, p in zip(outcomes, born_probabilities(state, m).values)
            )
            assert abs(expectation(op, state.vector) - via_born) <= 1e-9


class TestBellOperator:
    def test_vessel_middle_block(self):
        alpha, beta = 0.7, -0.3
        model = vessels_model(alpha, beta)
        bell = bell_operator_from(model.operators)
        phase = cmath.exp(1j * (alpha - beta))
        assert abs(bell[1][1] - 2) <= 1e-12
        assert abs(bell[2][2] - 2) <= 1e-12
        assert abs(bell[1][2] - 2 * phase) <= 1e-12
        assert abs(bell[2][1] - 2 * phase.conjugate()) <= 1e-12
        assert abs(bell[3][3]) <= 1e-12
        for k in (1, 2):
            assert abs(bell[0][k]) <= 1e-12 and abs(bell[k][0]) <= 1e-12
            assert abs(bell[3][k]) <= 1e-12 and abs(bell[k][3]) <= 1e-12

    def test_zero_inputs(self):
        z = CMatrix.zero()
        assert bell_operator(z, z, z, z) == z

    def test_alternative_model_combination_expectation(self):
        model = vessels_alternative_model(alpha=0.2, beta=1.9)
        bell = bell_operator_from(model.operators)
        assert abs(expectation(bell, model.state.vector) - 4.0) <= 1e-12

    def test_argument_order(self):
        # combination must be A'B' + A'B + AB' - AB
        ab = CMatrix.diagonal([1, 0, 0, 0])
        abp = CMatrix.diagonal([0, 1, 0, 0])
        apb = CMatrix.diagonal([0, 0, 1, 0])
        apbp = CMatrix.diagonal([0, 0, 0, 1])
        combo = bell_operator(
            e_ab_prime=abp, e_a_prime_b=apb, e_ab=ab, e_a_prime_b_prime=apbp
        )
        assert combo == CMatrix.diagonal([-1, 1, 1, 1])


class TestReshape:
    def test_canonical_layout(self):
        block = reshape(CVector([1, 2, 3, 4]))
        assert block == ((1 + 0j, 2 + 0j), (3 + 0j, 4 + 0j))

    def test_vessel_state_is_offdiagonal(self):
        block = reshape(vessel_state(0.5, 1.5))
        assert block[0][0] == 0 and block[1][1] == 0
        assert abs(block[0][1]) > 0.1 and abs(block[1][0]) > 0.1

    def test_single_amplitude_lands_in_one_cell(self):
        for iso in (CANONICAL_ISO, SWAPPED_ISO):
            block = reshape(CVector([1, 0, 0, 0]), iso)
            nonzero = [z for row in block for z in row if z != 0]
            assert nonzero == [1 + 0j]

    def test_swapped_layout_transposes_middle(self):
        block = reshape(CVector([1, 2, 3, 4]), SWAPPED_ISO)
        assert block == ((1 + 0j, 3 + 0j), (2 + 0j, 4 + 0j))


class TestSchmidt:
    def test_product_vector(self):
        assert schmidt_coefficients(CVector([1, 0, 0, 0])) == (1.0, 0.0)

    def test_balanced_superposition(self):
        s1, s2 = schmidt_coefficients(CVector([0, SQ, SQ, 0]))
        assert abs(s1 - SQ) <= 1e-12 and abs(s2 - SQ) <= 1e-12

    def test_rank_one_all_ones(self):
        s1, s2 = schmidt_coefficients(CVector([0.5, 0.5, 0.5, 0.5]))
        assert abs(s1 - 1.0) <= 1e-12 and abs(s2) <= 1e-12

    def test_against_numpy_svd(self):
        rng = random.Random(42)
        for _ in range(100):
            v = random_unit_cvector(rng)
            for iso in (CANONICAL_ISO, SWAPPED_ISO):
                ours = schmidt_coefficients(v, iso)
                ref = np_singular_values_2x2(reshape(v, iso))
                assert abs(ours[0] - ref[0]) <= 1e-9
                assert abs(ours[1] - ref[1]) <= 1e-9
                assert abs(ours[0] ** 2 + ours[1] ** 2 - 1.0) <= 1e-9


class TestProductVector:
    def test_canonical_basis_vector(self):
        assert is_product_vector(CVector([0, 1, 0, 0]))

    def test_vessel_state_not_product(self):
        assert not is_product_vector(vessel_state(0.2, 0.9))

    def test_survey_state_not_product(self):
        state = animal_acts_state()
        assert not is_product_vector(state, CANONICAL_ISO, tol=1e-3)
        block = reshape(state)
        det = block[0][0] * block[1][1] - block[0][1] * block[1][0]
        assert abs(abs(det) - 0.465) <= 0.01

    def test_random_product_vectors(self):
        rng = random.Random(7)
        for iso in (CANONICAL_ISO, SWAPPED_ISO):
            for _ in range(200):
                v = random_product_vector(rng, iso.cells)
                assert is_product_vector(v, iso, tol=1e-9)

    def test_balanced_superpositions_are_not_product(self):
        candidates = [
            CVector([0, SQ, SQ, 0]),
            CVector([0, SQ, -SQ, 0]),
            CVector([SQ, 0, 0, SQ]),
            CVector([SQ, 0, 0, -SQ]),
        ]
        for v in candidates:
            assert not is_product_vector(v)
            assert max(abs(c - SQ) for c in schmidt_coefficients(v)) <= 1e-12


class TestProductOperator:
    def test_diagonal_sign_matrix_is_product(self):
        # equals diag(1,-1) (x) diag(1,-1)
        m = CMatrix.diagonal([1, -1, -1, 1])
        assert is_product_operator(m)
        z = [[1, 0], [0, -1]]
        assert max_entry_difference(m, product_operator(z, z, CANONICAL_ISO.cells)) == 0

    def test_vessel_offdiagonal_operator_not_product(self):
        op = vessels_offdiag_operator_reference(0.0, 0.0, (1, -1, -1, 1))
        assert not is_product_operator(op)

    def test_identity_is_product(self):
        assert is_product_operator(CMatrix.identity())

    def test_random_kron_products(self):
        rng = random.Random(12)
        for iso in (CANONICAL_ISO, SWAPPED_ISO):
            for _ in range(100):
                a, b = random_2x2_matrix(rng), random_2x2_matrix(rng)
                m = product_operator(a, b, iso.cells)
                assert is_product_operator(m, iso, tol=1e-9)
                assert np_second_singular_value(realign(m, iso)) <= 1e-9

    def test_realign_rank_matches_numpy(self):
        rng = random.Random(13)
        for _ in range(50):
            m = CMatrix(
                [
                    [complex(rng.gauss(0, 1), rng.gauss(0, 1)) for _ in range(4)]
                    for _ in range(4)
                ]
            )
            r = realign(m)
            # minor-based and singular-value-based rank-1 detection agree
            assert (max_minor_2x2(r) <= 1e-9) == (np_second_singular_value(r) <= 1e-9)

    def test_vessel_bell_operator_not_product(self):
        bell = bell_operator_from(vessels_model(0.3, 0.8).operators)
        assert not is_product_operator(bell)

    def test_quoted_survey_operators_not_product(self):
        for op in ANIMAL_ACTS_OPERATORS.values():
            assert not is_product_operator(op, tol=5e-2)


class TestEntangledMeasurement:
    def test_vessel_product_readout(self):
        model = vessels_model(0.6, 0.1)
        assert not is_entangled_measurement(model.measurements[SettingPair.AB])

    def test_vessel_entangled_readouts(self):
        model = vessels_model(0.6, 0.1)
        for pair in (
            SettingPair.AB_PRIME,
            SettingPair.A_PRIME_B,
            SettingPair.A_PRIME_B_PRIME,
        ):
            assert is_entangled_measurement(model.measurements[pair])

    def test_alternative_model_canonical_measurements_product(self):
        model = vessels_alternative_model(0.4, 0.7)
        assert not is_entangled_measurement(model.measurements[SettingPair.AB_PRIME])
        assert is_entangled_measurement(model.measurements[SettingPair.AB])


class TestIsomorphism:
    def test_bijection_enforced(self):
        with pytest.raises(ValueError):
            Isomorphism("bad", ((0, 0), (0, 0), (1, 0), (1, 1)))

    def test_lookup_by_name(self):
        assert isomorphism_by_name("canonical") is CANONICAL_ISO
        assert isomorphism_by_name("swapped") is SWAPPED_ISO
        with pytest.raises(ValueError):
            isomorphism_by_name("diagonal")

    def test_entanglement_location_under_both_isomorphisms(self):
        # the product-state construction keeps its state product and its
        # AB final states entangled under either identification
        state = CVector([1, 0, 0, 0])
        w2 = CVector([SQ * cmath.exp(0.4j), 0, 0, SQ * cmath.exp(-0.9j)])
        for iso in (CANONICAL_ISO, SWAPPED_ISO):
            assert is_product_vector(state, iso)
            assert not is_product_vector(w2, iso)


class TestVerifyModel:
    def test_vessel_model_against_data(self):
        verdict = verify_model(
            vessels_model(0.0, 0.0).state,
            vessels_model(0.0, 0.0).measurements,
            vessels_data().experiment,
            tol=1e-9,
        )
        assert verdict.passed
        assert verdict.residual_kind == "probabilities"
        assert abs(verdict.chsh_from_model - 4.0) <= 1e-12
        assert verdict.chsh_imag_residual <= 1e-12
        assert verdict.state_entangled

    def test_alternative_model_against_data(self):
        model = vessels_alternative_model(0.0, 0.0)
        verdict = verify_model(
            model.state, model.measurements, vessels_data().experiment, tol=1e-9
        )
        assert verdict.passed
        entangled = [p for p in PAIR_ORDER if verdict.measurement_entangled[p]]
        assert entangled == [SettingPair.AB]
        assert not verdict.state_entangled

    def test_survey_model_against_data(self):
        verdict = animal_acts_model().verify(tol=0.03)
        assert verdict.passed
        assert verdict.residual_kind == "expectations"
        assert all(r <= 1e-3 for r in verdict.hermiticity_residuals.values())
        assert verdict.state_entangled
        assert all(verdict.measurement_entangled.values())

    def test_failing_verification_reported(self):
        # vessel construction against the separated data cannot match
        from bellbox.models import vessels_separated_data

        model = vessels_model(0.0, 0.0)
        verdict = verify_model(
            model.state,
            model.measurements,
            vessels_separated_data().experiment,
            tol=1e-9,
        )
        assert not verdict.passed
        assert max(verdict.residuals.values()) > 0.4
