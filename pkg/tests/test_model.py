"""Tests for the QUBO/Ising/polynomial core types and conversions."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qubols import (
    DimensionError,
    IsingProblem,
    PseudoBooleanPolynomial,
    QuboProblem,
    SampleRecord,
    SampleSet,
    UnsupportedDegreeError,
    ising_energy,
    ising_to_qubo,
    poly_energy,
    qubo_energy,
    qubo_to_ising,
)

from conftest import Q2_DENSE, all_bitstrings, dense_energy_oracle


class TestQuboProblem:
    def test_single_diagonal_entry(self):
        q = QuboProblem(num_vars=1, coefficients={(0, 0): 26.0})
        assert qubo_energy(q, [1]) == 26.0

    def test_all_zero_bits_give_zero(self):
        q = QuboProblem(num_vars=3, coefficients={(0, 1): 4.0, (2, 2): -1.0})
        assert qubo_energy(q, [0, 0, 0]) == 0.0

    def test_reference_matrix_ground_energy(self):
        q = QuboProblem.from_dense(Q2_DENSE)
        assert qubo_energy(q, [0, 0, 1, 0, 0, 1, 0, 0]) == -26.0

    def test_absent_pair_reads_zero(self):
        q = QuboProblem(num_vars=4, coefficients={(0, 1): 2.0})
        assert q.coefficient(2, 3) == 0.0
        assert q.coefficient(1, 0) == 2.0  # order-insensitive lookup

    def test_keys_canonicalized_and_zeros_dropped(self):
        q = QuboProblem(num_vars=3, coefficients={(2, 0): 1.5, (0, 2): -1.5, (1, 1): 3.0})
        assert (0, 2) not in q.coefficients
        assert q.coefficients == {(1, 1): 3.0}

    def test_out_of_range_key_rejected(self):
        with pytest.raises(DimensionError):
            QuboProblem(num_vars=2, coefficients={(0, 2): 1.0})

    def test_length_mismatch_rejected(self):
        q = QuboProblem(num_vars=2, coefficients={(0, 0): 1.0})
        with pytest.raises(DimensionError):
            qubo_energy(q, [1])

    def test_nonfinite_offset_rejected(self):
        with pytest.raises(ValueError):
            QuboProblem(num_vars=1, coefficients={}, offset=math.inf)

    def test_energy_insertion_order_invariant(self):
        a = QuboProblem(num_vars=3, coefficients={(0, 1): 2.0, (1, 2): -1.0, (0, 0): 0.5})
        b = QuboProblem(num_vars=3, coefficients={(0, 0): 0.5, (1, 2): -1.0, (0, 1): 2.0})
        for bits in all_bitstrings(3):
            assert qubo_energy(a, bits) == qubo_energy(b, bits)


class TestPolynomial:
    def test_constant_term(self):
        p = PseudoBooleanPolynomial(num_vars=2, terms={(): 5.0})
        assert poly_energy(p, [0, 0]) == 5.0

    def test_single_cubic_monomial(self):
        p = PseudoBooleanPolynomial(num_vars=3, terms={(0, 1, 2): -1.0})
        assert poly_energy(p, [1, 1, 1]) == -1.0
        assert poly_energy(p, [1, 1, 0]) == 0.0

    def test_linear_plus_quadratic(self):
        p = PseudoBooleanPolynomial(num_vars=2, terms={(0,): 1.0, (0, 1): 2.0})
        assert poly_energy(p, [1, 1]) == 3.0

    def test_idempotent_insertion(self):
        # q^2 = q: a repeated index collapses at insertion
        a = PseudoBooleanPolynomial(num_vars=3, terms={(1, 1, 2): 4.0})
        b = PseudoBooleanPolynomial(num_vars=3, terms={(1, 2): 4.0})
        assert a.terms == b.terms

    def test_degree_cap(self):
        with pytest.raises(UnsupportedDegreeError):
            PseudoBooleanPolynomial(num_vars=6, terms={(0, 1, 2, 3, 4): 1.0})

    def test_length_mismatch(self):
        p = PseudoBooleanPolynomial(num_vars=3, terms={(0,): 1.0})
        with pytest.raises(DimensionError):
            poly_energy(p, [1, 0])

    @given(
        st.lists(
            st.tuples(
                st.lists(st.integers(min_value=0, max_value=5), min_size=0, max_size=4),
                st.floats(min_value=-10, max_value=10, allow_nan=False),
            ),
            max_size=8,
        )
    )
    @settings(max_examples=60, deadline=None)
    def test_duplicate_indices_collapse(self, raw_terms):
        with_dups = {}
        without = {}
        for key, coeff in raw_terms:
            with_dups[tuple(key + key[:1])] = coeff  # repeat one index
            without[tuple(key)] = coeff
        a = PseudoBooleanPolynomial(num_vars=6, terms=with_dups)
        b = PseudoBooleanPolynomial(num_vars=6, terms=without)
        assert a.terms == b.terms


class TestIsingConversion:
    def test_single_linear_term(self):
        q = QuboProblem(num_vars=1, coefficients={(0, 0): 2.0})
        ising = qubo_to_ising(q)
        # 2x = s + 1 and H = -h s + offset, so h = -1, offset = 1
        assert ising.h == (-1.0,)
        assert ising.J == {}
        assert ising.offset == 1.0

    def test_constant_problem(self):
        q = QuboProblem(num_vars=2, coefficients={}, offset=7.0)
        ising = qubo_to_ising(q)
        assert ising.h == (0.0, 0.0)
        assert ising.J == {}
        assert ising.offset == 7.0

    def test_inverse_of_single_linear(self):
        ising = IsingProblem(num_vars=1, h=(-1.0,), J={}, offset=1.0)
        q = ising_to_qubo(ising)
        assert q.coefficients == {(0, 0): 2.0}
        assert q.offset == 0.0

    def test_zero_ising_round_trip(self):
        ising = IsingProblem(num_vars=3)
        q = ising_to_qubo(ising)
        assert q.coefficients == {}
        assert q.offset == 0.0

    def test_energy_table_equality_random_6_vars(self):
        import random

        rng = random.Random(20240817)
        coeffs = {}
        for i in range(6):
            for j in range(i, 6):
                coeffs[(i, j)] = rng.uniform(-5, 5)
        q = QuboProblem(num_vars=6, coefficients=coeffs, offset=rng.uniform(-3, 3))
        ising = qubo_to_ising(q)
        back = ising_to_qubo(ising)
        for bits in all_bitstrings(6):
            spins = tuple(2 * b - 1 for b in bits)
            expected = qubo_energy(q, bits)
            assert ising_energy(ising, spins) == pytest.approx(expected, abs=1e-9)
            assert qubo_energy(back, bits) == pytest.approx(expected, abs=1e-9)

    def test_reference_matrix_round_trip_all_256(self):
        q = QuboProblem.from_dense(Q2_DENSE)
        back = ising_to_qubo(qubo_to_ising(q))
        for bits in all_bitstrings(8):
            expected = dense_energy_oracle(Q2_DENSE, 0.0, bits)
            assert qubo_energy(back, bits) == pytest.approx(expected, abs=1e-9)

    def test_round_trip_exhaustive_12_vars(self):
        import random

        rng = random.Random(12)
        coeffs = {
            (i, j): rng.randint(-9, 9)
            for i in range(12)
            for j in range(i, 12)
            if rng.random() < 0.5
        }
        q = QuboProblem(num_vars=12, coefficients=coeffs, offset=3.0)
        back = ising_to_qubo(qubo_to_ising(q))
        for bits in all_bitstrings(12):
            assert abs(qubo_energy(back, bits) - qubo_energy(q, bits)) <= 1e-9

    @given(st.integers(min_value=1, max_value=6), st.integers(min_value=0, max_value=2**31))
    @settings(max_examples=40, deadline=None)
    def test_round_trip_preserves_energy(self, n, seed):
        import random

        rng = random.Random(seed)
        coeffs = {
            (i, j): rng.uniform(-4, 4) for i in range(n) for j in range(i, n)
        }
        q = QuboProblem(num_vars=n, coefficients=coeffs, offset=rng.uniform(-2, 2))
        back = ising_to_qubo(qubo_to_ising(q))
        for bits in all_bitstrings(n):
            assert qubo_energy(back, bits) == pytest.approx(qubo_energy(q, bits), abs=1e-9)


class TestSampleSet:
    def _set(self):
        return SampleSet(
            num_vars=2,
            records=(
                SampleRecord((0, 1), -1.0, 3),
                SampleRecord((1, 0), -1.0, 5),
                SampleRecord((1, 1), 2.0, 1),
            ),
        )

    def test_ground_extraction_nonempty(self):
        ground = self._set().ground()
        assert len(ground) == 2
        # sorted by descending occurrences
        assert ground.records[0].bits == (1, 0)

    def test_ground_of_empty_raises(self):
        s = SampleSet(num_vars=1, records=())
        with pytest.raises(ValueError):
            s.ground()

    def test_occurrence_total(self):
        assert self._set().total_occurrences() == 9

    def test_nonpositive_occurrences_rejected(self):
        with pytest.raises(ValueError):
            SampleSet(num_vars=1, records=(SampleRecord((0,), 0.0, 0),))
