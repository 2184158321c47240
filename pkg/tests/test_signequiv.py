import itertools

import numpy as np
import pytest

from absnorm import (
    EquivalenceWitness,
    InconsistencyCertificate,
    as_matrix,
    is_nonnegative,
    sign_equivalent_to_abs,
)

SHARP = np.array([[1.0, 1.0], [-1.0, -1.0]])
HADAMARD = np.array([[1.0, 1.0], [1.0, -1.0]])


def reconstruct(witness, a):
    d = witness.left.phases
    e = witness.right.phases
    return d[:, None] * np.abs(a) * e[None, :]


def brute_force_equivalent(a):
    """Exhaustive search over all sign-diagonal pairs (real matrices)."""
    n = a.shape[0]
    absa = np.abs(a)
    for d in itertools.product((1.0, -1.0), repeat=n):
        for e in itertools.product((1.0, -1.0), repeat=n):
            if np.array_equal(np.outer(d, e) * absa, a):
                return True
    return False


class TestExamples:
    def test_sharp_matrix_witness(self):
        result = sign_equivalent_to_abs(SHARP)
        assert isinstance(result, EquivalenceWitness)
        assert np.array_equal(result.left.phases, [1.0, -1.0])
        assert np.array_equal(result.right.phases, [1.0, 1.0])
        assert np.array_equal(reconstruct(result, SHARP), SHARP)

    def test_nonnegative_identity_witness(self):
        a = np.array([[0.5, 2.0], [0.0, 1.0]])
        result = sign_equivalent_to_abs(a)
        assert isinstance(result, EquivalenceWitness)
        assert np.array_equal(result.left.phases, [1.0, 1.0])
        assert np.array_equal(result.right.phases, [1.0, 1.0])

    def test_hadamard_cycle(self):
        result = sign_equivalent_to_abs(HADAMARD)
        assert isinstance(result, InconsistencyCertificate)
        assert result.cycle == (("r", 0), ("c", 0), ("r", 1), ("c", 1))
        assert result.phase_product == pytest.approx(-1.0)
        # The DERIVED claim: no assignment among all 16 works.
        assert not brute_force_equivalent(HADAMARD)

    def test_cycle_visits_nonzero_entries(self):
        result = sign_equivalent_to_abs(HADAMARD)
        verts = list(result.cycle)
        for s in range(0, len(verts), 2):
            _, r = verts[s]
            _, c = verts[s + 1]
            _, r_next = verts[(s + 2) % len(verts)]
            assert HADAMARD[r, c] != 0
            assert HADAMARD[r_next, c] != 0


class TestSoundness:
    def test_planted_real(self):
        rng = np.random.default_rng(0)
        for _ in range(50):
            n = int(rng.integers(1, 7))
            b = np.abs(rng.standard_normal((n, n)))
            b[rng.random((n, n)) < 0.3] = 0.0
            d = rng.choice([-1.0, 1.0], n)
            e = rng.choice([-1.0, 1.0], n)
            a = np.outer(d, e) * b
            result = sign_equivalent_to_abs(a)
            assert isinstance(result, EquivalenceWitness)
            assert np.max(np.abs(reconstruct(result, a) - a)) == 0.0

    def test_planted_complex(self):
        rng = np.random.default_rng(1)
        for _ in range(50):
            n = int(rng.integers(1, 6))
            b = np.abs(rng.standard_normal((n, n)))
            b[rng.random((n, n)) < 0.3] = 0.0
            d = np.exp(2j * np.pi * rng.random(n))
            e = np.exp(2j * np.pi * rng.random(n))
            a = d[:, None] * b * e[None, :]
            result = sign_equivalent_to_abs(as_matrix(a, field="complex"))
            assert isinstance(result, EquivalenceWitness)
            top = np.max(np.abs(a)) or 1.0
            assert np.max(np.abs(reconstruct(result, a) - a)) <= 1e-9 * top

    def test_witness_scaling_is_unimodular(self):
        result = sign_equivalent_to_abs(SHARP)
        assert np.all(np.abs(np.abs(result.left.phases) - 1) < 1e-12)
        assert np.all(np.abs(np.abs(result.right.phases) - 1) < 1e-12)

    def test_complex_inconsistency_cycle(self):
        theta = 0.7
        a = np.array([[1.0, 1.0], [1.0, np.exp(1j * theta)]])
        result = sign_equivalent_to_abs(a)
        assert isinstance(result, InconsistencyCertificate)
        assert abs(result.phase_product - np.exp(1j * theta)) < 1e-12

    def test_complex_phase_within_tolerance_accepted(self):
        # Entry phases perturbed well below tol still factor.
        a = np.array([[1.0, 1.0], [1.0, 1.0 * np.exp(1e-12j)]])
        result = sign_equivalent_to_abs(a, tol=1e-6)
        assert isinstance(result, EquivalenceWitness)


class TestInvariance:
    def test_verdict_stable_under_diagonal_scaling(self):
        rng = np.random.default_rng(2)
        for base in (SHARP, HADAMARD):
            verdict = isinstance(sign_equivalent_to_abs(base), EquivalenceWitness)
            for _ in range(20):
                d1 = rng.choice([-1.0, 1.0], 2)
                d2 = rng.choice([-1.0, 1.0], 2)
                scaled = d1[:, None] * base * d2[None, :]
                assert (
                    isinstance(sign_equivalent_to_abs(scaled), EquivalenceWitness)
                    == verdict
                )

    def test_disconnected_components_resolved_independently(self):
        a = np.zeros((4, 4))
        a[0, 1] = -3.0
        a[2, 3] = 5.0
        result = sign_equivalent_to_abs(a)
        assert isinstance(result, EquivalenceWitness)
        assert np.array_equal(reconstruct(result, a), a)

    def test_zero_matrix(self):
        result = sign_equivalent_to_abs(np.zeros((3, 3)))
        assert isinstance(result, EquivalenceWitness)
        assert np.array_equal(result.left.phases, np.ones(3))


class TestIsNonnegative:
    def test_positive(self):
        assert is_nonnegative([[1, 1], [1, 1]])

    def test_mixed_signs(self):
        assert not is_nonnegative([[1, -1], [0, 2]])

    def test_complex_with_zero_imag(self):
        assert is_nonnegative(as_matrix(np.array([[1 + 0j]]), field="complex"))
        assert not is_nonnegative(np.array([[1j]]))


class TestValidation:
    def test_tol_range(self):
        with pytest.raises(ValueError):
            sign_equivalent_to_abs(SHARP, tol=0.0)
        with pytest.raises(ValueError):
            sign_equivalent_to_abs(SHARP, tol=1e-3)
