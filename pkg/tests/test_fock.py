import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dsteleport.errors import CutoffMismatchError, RegisterMismatchError
from dsteleport.fock import (
    DEFAULT_PRUNE,
    DensityOperator,
    StateVector,
    add_density,
    difference_norm,
    fidelity_pure_mixed,
    partial_trace,
    partial_trace_pure,
    superpose,
    tensor_density,
    tensor_product,
)


def random_state(rng, mode_count=2, n_max=3, terms=5):
    amps = {}
    for _ in range(terms):
        occ = tuple(int(rng.integers(0, n_max + 1)) for _ in range(mode_count))
        amps[occ] = complex(rng.normal(), rng.normal())
    return StateVector.from_amplitudes(mode_count, n_max, amps)


def random_hermitian(rng, mode_count=2, n_max=2, terms=6):
    entries = {}
    for _ in range(terms):
        r = tuple(int(rng.integers(0, n_max + 1)) for _ in range(mode_count))
        c = tuple(int(rng.integers(0, n_max + 1)) for _ in range(mode_count))
        v = complex(rng.normal(), rng.normal())
        entries[(r, c)] = entries.get((r, c), 0j) + v
        entries[(c, r)] = entries.get((c, r), 0j) + v.conjugate()
    partition = tuple("I" if i % 2 == 0 else "II" for i in range(mode_count))
    return DensityOperator(mode_count, n_max, partition, entries)


class TestTensorProduct:
    def test_basis_state_product(self):
        one = StateVector.basis_state((1,), n_max=3)
        zero = StateVector.basis_state((0,), n_max=3)
        prod = tensor_product(one, zero)
        assert prod.amplitudes == {(1, 0): 1.0 + 0j}

    def test_linearity(self):
        plus = StateVector.from_amplitudes(
            1, 3, {(0,): 1 / math.sqrt(2), (1,): 1 / math.sqrt(2)}
        )
        zero = StateVector.basis_state((0,), n_max=3)
        prod = tensor_product(plus, zero)
        assert prod.amplitudes[(0, 0)] == pytest.approx(1 / math.sqrt(2))
        assert prod.amplitudes[(1, 0)] == pytest.approx(1 / math.sqrt(2))

    def test_norm_is_product_of_norms(self):
        # oracle: direct summation over the dense product of amplitudes
        rng = np.random.default_rng(11)
        for _ in range(25):
            a = random_state(rng)
            b = random_state(rng, mode_count=1)
            dense = 0.0
            for amp_a in a.amplitudes.values():
                for amp_b in b.amplitudes.values():
                    dense += abs(amp_a * amp_b) ** 2
            prod = tensor_product(a, b)
            assert prod.norm() == pytest.approx(math.sqrt(dense), abs=1e-12)
            assert prod.norm() == pytest.approx(a.norm() * b.norm(), abs=1e-12)

    def test_cutoff_mismatch_rejected(self):
        a = StateVector.basis_state((0,), n_max=3)
        b = StateVector.basis_state((0,), n_max=4)
        with pytest.raises(CutoffMismatchError):
            tensor_product(a, b)


class TestPartialTrace:
    def test_product_state(self):
        psi = tensor_product(
            StateVector.basis_state((0,), n_max=5),
            StateVector.basis_state((5,), n_max=5),
        )
        rho = DensityOperator.from_pure(psi, ("I", "II"))
        reduced = partial_trace(rho, keep="I")
        assert reduced.entries == {((0,), (0,)): 1.0 + 0j}

    def test_squeezed_marginal_is_thermal(self):
        # oracle: sum the squared Schmidt coefficients of the expansion directly
        q = 0.4
        n_max = 25
        amps = {(n, n): math.sqrt(1 - q) * math.sqrt(q) ** n for n in range(n_max + 1)}
        psi = StateVector.from_amplitudes(2, n_max, amps)
        rho = partial_trace_pure(psi, ("I", "II"), keep="I")
        for n in range(n_max + 1):
            schmidt_weight = abs(amps[(n, n)]) ** 2
            assert rho.entries[((n,), (n,))].real == pytest.approx(
                schmidt_weight, abs=1e-15
            )
            assert rho.entries[((n,), (n,))].real == pytest.approx(
                (1 - q) * q**n, abs=1e-12
            )

    def test_trace_preserved_on_random_inputs(self):
        rng = np.random.default_rng(12)
        for _ in range(100):
            rho = random_hermitian(rng)
            reduced = partial_trace(rho, keep="I")
            assert reduced.trace() == pytest.approx(rho.trace(), abs=1e-12)
            assert reduced.hermiticity_defect() < 1e-12

    def test_linearity(self):
        rng = np.random.default_rng(13)
        for _ in range(100):
            r1 = random_hermitian(rng)
            r2 = random_hermitian(rng)
            x, y = 0.7, -0.3
            combined = partial_trace(add_density(r1.scaled(x), r2.scaled(y)), keep="I")
            separate = add_density(
                partial_trace(r1, keep="I").scaled(x),
                partial_trace(r2, keep="I").scaled(y),
            )
            keys = set(combined.entries) | set(separate.entries)
            for k in keys:
                assert combined.entries.get(k, 0j) == pytest.approx(
                    separate.entries.get(k, 0j), abs=1e-12
                )

    def test_tensor_then_trace_recovers_factor(self):
        rng = np.random.default_rng(14)
        psi_a = random_state(rng, mode_count=1, n_max=2).normalized()
        psi_b = random_state(rng, mode_count=1, n_max=2).normalized()
        rho_a = DensityOperator.from_pure(psi_a, ("I",))
        rho_b = DensityOperator.from_pure(psi_b, ("II",))
        back = partial_trace(tensor_density(rho_a, rho_b), keep="I")
        for k, v in rho_a.entries.items():
            assert back.entries.get(k, 0j) == pytest.approx(v, abs=1e-12)

    def test_pure_route_matches_density_route(self):
        rng = np.random.default_rng(15)
        psi = random_state(rng, mode_count=3, n_max=2, terms=8).normalized()
        partition = ("I", "II", "I")
        via_pure = partial_trace_pure(psi, partition, keep="I")
        via_rho = partial_trace(DensityOperator.from_pure(psi, partition), keep="I")
        keys = set(via_pure.entries) | set(via_rho.entries)
        for k in keys:
            assert via_pure.entries.get(k, 0j) == pytest.approx(
                via_rho.entries.get(k, 0j), abs=1e-12
            )

    def test_empty_region_rejected(self):
        psi = StateVector.basis_state((1, 0), n_max=2)
        rho = DensityOperator.from_pure(psi, ("I", "I"))
        with pytest.raises(ValueError):
            partial_trace(rho, keep="I")
        with pytest.raises(ValueError):
            partial_trace(rho, keep="II")


class TestFidelity:
    def test_identical_states(self):
        psi = StateVector.basis_state((0,), n_max=2)
        rho = DensityOperator.from_pure(psi, ("I",))
        assert fidelity_pure_mixed(psi, rho) == pytest.approx(1.0, abs=1e-14)

    def test_orthogonal_states(self):
        psi = StateVector.basis_state((0,), n_max=2)
        phi = StateVector.basis_state((1,), n_max=2)
        rho = DensityOperator.from_pure(phi, ("I",))
        assert fidelity_pure_mixed(psi, rho) == 0.0

    def test_thermal_ground_weight(self):
        q = 0.25
        n_max = 60
        entries = {((n,), (n,)): complex((1 - q) * q**n) for n in range(n_max + 1)}
        rho = DensityOperator(1, n_max, ("I",), entries)
        psi = StateVector.basis_state((0,), n_max=n_max)
        assert fidelity_pure_mixed(psi, rho) == pytest.approx(0.75, abs=1e-12)

    def test_matches_overlap_squared_for_pure_pairs(self):
        rng = np.random.default_rng(16)
        for _ in range(50):
            psi = random_state(rng).normalized()
            phi = random_state(rng).normalized()
            rho = DensityOperator.from_pure(phi, ("I", "II"))
            assert fidelity_pure_mixed(psi, rho) == pytest.approx(
                abs(psi.overlap(phi)) ** 2, abs=1e-12
            )

    def test_register_mismatch_rejected(self):
        psi = StateVector.basis_state((0,), n_max=2)
        rho = DensityOperator.from_pure(StateVector.basis_state((0, 0), n_max=2), ("I", "II"))
        with pytest.raises(RegisterMismatchError):
            fidelity_pure_mixed(psi, rho)

    def test_unnormalized_state_rejected(self):
        psi = StateVector.from_amplitudes(1, 2, {(0,): 0.5})
        rho = DensityOperator.from_pure(StateVector.basis_state((0,), n_max=2), ("I",))
        with pytest.raises(ValueError):
            fidelity_pure_mixed(psi, rho)


@st.composite
def amplitude_maps(draw):
    n_entries = draw(st.integers(1, 6))
    amps = {}
    for _ in range(n_entries):
        occ = (draw(st.integers(0, 3)), draw(st.integers(0, 3)))
        re = draw(st.floats(-5, 5, allow_nan=False))
        im = draw(st.floats(-5, 5, allow_nan=False))
        amps[occ] = complex(re, im)
    return amps


class TestNormalization:
    @settings(deadline=None)
    @given(amplitude_maps())
    def test_normalize_idempotent(self, amps):
        state = StateVector.from_amplitudes(2, 3, amps)
        if state.norm() == 0.0:
            return
        once = state.normalized()
        twice = once.normalized()
        assert abs(once.norm() - 1.0) < 1e-12
        assert difference_norm(once, twice) < 1e-12

    def test_prune_threshold(self):
        state = StateVector.from_amplitudes(
            1, 2, {(0,): 1.0, (1,): 1e-20}, prune=DEFAULT_PRUNE
        )
        assert (1,) not in state.amplitudes

    def test_occupation_validation(self):
        with pytest.raises(ValueError):
            StateVector.from_amplitudes(1, 2, {(3,): 1.0})
        with pytest.raises(RegisterMismatchError):
            StateVector.from_amplitudes(2, 2, {(0,): 1.0})


class TestDensityInvariants:
    def test_library_built_state_is_physical(self):
        rng = np.random.default_rng(17)
        psi = superpose(
            [(0.6, random_state(rng, terms=4).normalized()),
             (0.8j, random_state(rng, terms=4).normalized())]
        ).normalized()
        rho = DensityOperator.from_pure(psi, ("I", "II"))
        assert abs(rho.trace() - 1.0) < 1e-10
        assert rho.hermiticity_defect() < 1e-12
        assert rho.min_eigenvalue() >= -1e-10

    def test_partition_length_validated(self):
        with pytest.raises(RegisterMismatchError):
            DensityOperator(2, 2, ("I",), {})
