import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import kron_xxz
from xxzge.errors import CapacityError, DegenerateGroundSpaceError, DomainError
from xxzge.spin import (
    ProductState,
    StateVector,
    build_xxz,
    diagonal_readout,
    energy_expectation,
    ground_state,
    named_product,
    overlap,
    product_to_statevector,
    rotate_product_y,
    shift_permutation,
    site_bits,
)


def random_product(rng, n):
    z = rng.standard_normal((n, 2)) + 1j * rng.standard_normal((n, 2))
    return ProductState(z / np.linalg.norm(z, axis=1, keepdims=True))


angles = st.floats(-2 * np.pi, 2 * np.pi, allow_nan=False)


class TestBuild:
    def test_neel_diagonal_at_heisenberg_point(self):
        h = build_xxz(4, 1.0)
        assert h.matrix[5, 5] == -4

    def test_two_sites_double_counts_bond(self):
        h = build_xxz(2, 0.0)
        vals, vecs = np.linalg.eigh(h.matrix)
        assert vals[0] == pytest.approx(-4)
        singlet = np.array([0, 1, -1, 0]) / np.sqrt(2)
        assert abs(np.vdot(singlet, vecs[:, 0])) == pytest.approx(1)

    @pytest.mark.parametrize("gamma", [-2.0, -0.5, 0.0, 1.0, 2.5])
    def test_spin_flip_symmetry(self, gamma):
        m = build_xxz(4, gamma).matrix
        flip = np.arange(16) ^ 0b1111
        np.testing.assert_array_equal(m[np.ix_(flip, flip)], m)

    @pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
    @pytest.mark.parametrize("gamma,b_z", [(-2, 1e-3), (0, 0), (0.7, 0.2), (3, 0)])
    def test_matches_kronecker_assembly(self, n, gamma, b_z):
        np.testing.assert_allclose(
            build_xxz(n, gamma, b_z).matrix, kron_xxz(n, gamma, b_z), atol=1e-13
        )

    def test_size_limits(self):
        with pytest.raises(DomainError):
            build_xxz(1, 0.0)
        with pytest.raises(CapacityError):
            build_xxz(13, 0.0)
        with pytest.raises(DomainError):
            build_xxz(4, 0.0, -1e-3)


@pytest.mark.parametrize("n", range(2, 13))
def test_hamiltonian_invariants(n):
    perm = shift_permutation(n)
    sz = (1 - 2 * site_bits(n)).sum(axis=0)
    for gamma in (-2, -1, 0, 1, 3):
        for b_z in (0, 1e-3):
            m = build_xxz(n, gamma, b_z).matrix
            assert np.max(np.abs(m - m.conj().T)) < 1e-14
            assert not np.any(m.imag)
            # [H, Sz]_ab = H_ab (sz_b - sz_a)
            assert np.max(np.abs(m * (sz[None, :] - sz[:, None]))) < 1e-12
            # T H T^-1 = H  <=>  H[perm[a], perm[b]] == H[a, b]
            assert np.max(np.abs(m[np.ix_(perm, perm)] - m)) < 1e-12


def test_shift_permutation_moves_last_bit_to_front():
    assert shift_permutation(4)[0b0001] == 0b1000
    assert shift_permutation(4)[0b0101] == 0b1010
    assert np.array_equal(np.sort(shift_permutation(5)), np.arange(32))


class TestGroundState:
    def test_ferromagnet_with_field(self):
        sol = ground_state(build_xxz(4, -2.0, 1e-3))
        assert sol.energy == pytest.approx(-8.004, abs=1e-12)
        assert abs(sol.state.amplitudes[15]) == pytest.approx(1, abs=1e-12)

    def test_xy_point(self):
        assert ground_state(build_xxz(4, 0.0)).energy == pytest.approx(-4 * np.sqrt(2), abs=1e-12)

    def test_heisenberg_point(self):
        assert ground_state(build_xxz(4, 1.0)).energy == pytest.approx(-8, abs=1e-12)

    def test_degenerate_without_field_is_an_error(self):
        with pytest.raises(DegenerateGroundSpaceError, match="b_z"):
            ground_state(build_xxz(4, -2.0, 0.0))

    @pytest.mark.parametrize("gamma", [-1.5, -0.3, 0.0, 1.0, 2.0])
    def test_phase_and_rayleigh_quotient(self, gamma):
        h = build_xxz(4, gamma, 1e-3 if gamma < -1 else 0.0)
        sol = ground_state(h)
        a = sol.state.amplitudes
        lead = int(np.flatnonzero(np.abs(a) >= np.abs(a).max() - 1e-12)[0])
        assert a[lead].imag == 0 and a[lead].real > 0
        assert energy_expectation(h, sol.state) == pytest.approx(sol.energy, abs=1e-10)
        assert sol.gap > 0

    @pytest.mark.parametrize("n,gamma", [(4, 0.3), (6, 1.0), (6, -0.5), (8, 2.0)])
    def test_variational_bound(self, n, gamma):
        h = build_xxz(n, gamma)
        e0 = ground_state(h).energy
        rng = np.random.default_rng(1234 + n)
        for _ in range(100):
            psi = product_to_statevector(random_product(rng, n))
            assert e0 <= energy_expectation(h, psi) + 1e-12

    def test_energy_continuous_at_first_order_point(self):
        # field small enough that its shift stays far below the tolerance
        left = ground_state(build_xxz(4, -1 - 1e-6, 1e-7)).energy
        right = ground_state(build_xxz(4, -1 + 1e-6)).energy
        assert abs(left - right) < 1e-4
        assert left == pytest.approx(-4, abs=1e-4)


class TestOverlap:
    def test_plus_minus_with_all_down(self):
        assert overlap(named_product("plus_minus", 4), StateVector.basis("1111")) == pytest.approx(0.25)

    def test_identity(self):
        assert overlap(named_product("neel", 4), StateVector.basis("0101")) == pytest.approx(1)

    def test_cat_component(self):
        phi1 = (StateVector.basis("0101").amplitudes + StateVector.basis("1010").amplitudes) / np.sqrt(2)
        assert overlap(named_product("neel", 4), StateVector(phi1)) == pytest.approx(1 / np.sqrt(2))

    def test_site_mismatch(self):
        with pytest.raises(DomainError):
            overlap(named_product("neel", 4), StateVector.basis("01"))

    def test_agrees_with_dense_inner_product(self):
        rng = np.random.default_rng(7)
        for n in (2, 3, 5):
            psi = random_product(rng, n)
            z = rng.standard_normal(2**n) + 1j * rng.standard_normal(2**n)
            g = StateVector(z / np.linalg.norm(z))
            dense = np.vdot(product_to_statevector(psi).amplitudes, g.amplitudes)
            assert overlap(psi, g) == pytest.approx(dense, abs=1e-14)
            assert abs(overlap(psi, g)) <= 1 + 1e-12


class TestProducts:
    def test_neel_is_index_five(self):
        amps = product_to_statevector(named_product("neel", 4)).amplitudes
        expected = np.zeros(16)
        expected[5] = 1
        np.testing.assert_array_equal(amps, expected)

    def test_uniform_superposition(self):
        s = 1 / np.sqrt(2)
        amps = product_to_statevector(ProductState([[s, s], [s, s]])).amplitudes
        np.testing.assert_allclose(amps, 0.5, atol=1e-15)

    @given(st.integers(0, 2**32 - 1), st.integers(1, 8))
    def test_norm_preserved(self, seed, n):
        psi = random_product(np.random.default_rng(seed), n)
        amps = product_to_statevector(psi).amplitudes
        assert np.linalg.norm(amps) == pytest.approx(1, abs=1e-12)

    def test_named_products(self):
        s = 1 / np.sqrt(2)
        assert int(np.argmax(np.abs(product_to_statevector(named_product("all_ones", 4)).amplitudes))) == 15
        np.testing.assert_allclose(
            named_product("plus_minus", 4).locals, [[s, s], [s, -s], [s, s], [s, -s]]
        )
        with pytest.raises(DomainError):
            named_product("neel", 5)
        with pytest.raises(DomainError):
            named_product("ghz", 4)

    def test_invalid_locals(self):
        with pytest.raises(DomainError):
            ProductState([[1, 1], [0, 1]])
        with pytest.raises(DomainError):
            StateVector([1, 1, 0, 0])


class TestRotation:
    def test_zero_angle(self):
        psi = named_product("neel", 4)
        np.testing.assert_array_equal(rotate_product_y(psi, 0.0).locals, psi.locals)

    def test_quarter_turn_gives_plus_minus(self):
        rotated = rotate_product_y(named_product("neel", 4), np.pi / 2)
        target = named_product("plus_minus", 4)
        for a, b in zip(rotated.locals, target.locals):
            assert abs(np.vdot(a, b)) == pytest.approx(1, abs=1e-15)
        g = ground_state(build_xxz(4, -0.5)).state
        assert abs(overlap(rotated, g)) == pytest.approx(abs(overlap(target, g)), abs=1e-15)

    @given(angles, angles)
    @settings(max_examples=50)
    def test_composition(self, b1, b2):
        psi = named_product("neel", 4)
        two = rotate_product_y(rotate_product_y(psi, b1), b2)
        np.testing.assert_allclose(two.locals, rotate_product_y(psi, b1 + b2).locals, atol=1e-12)

    def test_overlap_flat_at_heisenberg_point(self):
        g = ground_state(build_xxz(4, 1.0)).state
        neel = named_product("neel", 4)
        vals = [abs(overlap(rotate_product_y(neel, b), g)) for b in np.linspace(0, 2 * np.pi, 50)]
        assert max(vals) - min(vals) < 1e-9


class TestDiagonalReadout:
    @pytest.mark.parametrize("gamma", [-0.9, 0.4, 1.0, 3.0])
    def test_matches_overlap(self, gamma):
        g = ground_state(build_xxz(4, gamma)).state
        neel = named_product("neel", 4)
        for beta in (0.0, np.pi / 2, 1.1):
            expected = abs(overlap(rotate_product_y(neel, beta), g)) ** 2
            assert diagonal_readout(g, beta, 0b0101) == pytest.approx(expected, abs=1e-12)

    def test_candidate_readouts(self):
        g = ground_state(build_xxz(4, -2.0, 1e-3)).state
        assert diagonal_readout(g, 0.0, 0b1111) == pytest.approx(1, abs=1e-12)
        assert diagonal_readout(g, np.pi / 2, 0b0101) == pytest.approx(1 / 16, abs=1e-12)
        assert diagonal_readout(g, 0.0, 0b0101) == pytest.approx(0, abs=1e-12)
