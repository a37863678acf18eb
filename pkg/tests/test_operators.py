from math import comb, pi

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from becmbqc import closed_forms as cf
from becmbqc import dense
from becmbqc.errors import ValidationError
from becmbqc.fock import (
    Register,
    apply_pair_phase,
    apply_site_operator,
    contract_site,
    fidelity,
    init_product,
)
from becmbqc.operators import (
    LOGICAL_ONE,
    LOGICAL_ZERO,
    MINUS,
    PLUS,
    CoherentSpec,
    EdgeGate,
    GateKind,
    StokesAxis,
    coherent_state,
    edge_phase_table,
    expm_hermitian,
    fock_ket,
    hadamard_bec,
    lcz,
    lcz_phase,
    legacy_cz,
    rcz,
    rcz_phase,
    stokes_matrix,
    zz_evolution,
)
from conftest import random_site

h = 1 / np.sqrt(2)
PAULI = {
    "x": np.array([[0, 1], [1, 0]]),
    "y": np.array([[0, -1j], [1j, 0]]),
    "z": np.array([[1, 0], [0, -1]]),
}


def plus_pair(n1, n2):
    return init_product([(n1, coherent_state(n1, PLUS)), (n2, coherent_state(n2, PLUS))])


class TestStates:
    def test_coherent_n1(self):
        np.testing.assert_allclose(coherent_state(1, PLUS), [h, h])

    def test_coherent_n2_binomial(self):
        np.testing.assert_allclose(coherent_state(2, PLUS), [0.5, h, 0.5], atol=1e-15)

    def test_coherent_all_a_mode(self):
        np.testing.assert_allclose(coherent_state(3, LOGICAL_ZERO), [0, 0, 0, 1])

    @pytest.mark.parametrize("n", range(0, 12))
    def test_coherent_normalized(self, n):
        spec = CoherentSpec(0.6, 0.8j)
        assert abs(np.linalg.norm(coherent_state(n, spec)) - 1) < 1e-12

    def test_coherent_matches_brute_expansion(self):
        spec = CoherentSpec(0.6 * np.exp(0.3j), 0.8 * np.exp(-1.1j))
        for n in range(7):
            np.testing.assert_allclose(
                coherent_state(n, spec), dense.coherent(n, spec.alpha, spec.beta), atol=1e-14
            )

    def test_unnormalized_spec_rejected(self):
        with pytest.raises(ValidationError):
            CoherentSpec(1.0, 1.0)

    def test_fock_ket(self):
        np.testing.assert_array_equal(fock_ket(1, 0), [1, 0])
        np.testing.assert_array_equal(fock_ket(4, 2), [0, 0, 1, 0, 0])
        with pytest.raises(ValidationError):
            fock_ket(3, 4)

    def test_fock_overlap_with_coherent(self):
        a, b = 0.6, 0.8j
        psi = coherent_state(5, CoherentSpec(a, b))
        for k in range(6):
            expected = np.sqrt(comb(5, k)) * a**k * b ** (5 - k)
            assert abs(np.vdot(fock_ket(5, k), psi) - expected) < 1e-14


class TestStokes:
    def test_n1_paulis_in_a_first_order(self):
        # reversing the k index puts the a-mode boson first
        for axis in "xyz":
            m = stokes_matrix(1, axis)[::-1, ::-1]
            np.testing.assert_allclose(m, PAULI[axis])

    @pytest.mark.parametrize("n", range(1, 17))
    def test_commutators(self, n):
        x, y, z = (stokes_matrix(n, a) for a in StokesAxis)
        for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
            assert np.max(np.abs(a @ b - b @ a - 2j * c)) < 1e-12 * max(1, n * n)

    @pytest.mark.parametrize("n", range(1, 17))
    def test_casimir(self, n):
        x, y, z = (stokes_matrix(n, a) for a in StokesAxis)
        assert np.max(np.abs(x @ x + y @ y + z @ z - n * (n + 2) * np.eye(n + 1))) < 1e-10

    @pytest.mark.parametrize("n", range(0, 8))
    def test_hermitian(self, n):
        for a in StokesAxis:
            m = stokes_matrix(n, a)
            np.testing.assert_allclose(m, m.conj().T)

    @pytest.mark.parametrize("n", range(1, 7))
    def test_match_mode_operator_construction(self, n):
        ref = dense.stokes(n)
        for a in "xyz":
            np.testing.assert_allclose(stokes_matrix(n, a), ref[a], atol=1e-12)

    def test_sz_on_fock(self):
        for n in range(6):
            for k in range(n + 1):
                out = stokes_matrix(n, "z") @ fock_ket(n, k)
                np.testing.assert_allclose(out, (2 * k - n) * fock_ket(n, k))

    def test_sz_through_register(self):
        r = init_product([(4, fock_ket(4, 3))])
        out = apply_site_operator(r, 0, stokes_matrix(4, "z"))
        np.testing.assert_allclose(out.amplitudes, 2 * fock_ket(4, 3))


class TestHadamard:
    def test_n1_closed_form(self):
        # exp(-i 3pi/4 sigma_y) in (a, b) order, rewritten in k order (b, a)
        c, s = np.cos(3 * pi / 4), np.sin(3 * pi / 4)
        u_ab = np.array([[c, -s], [s, c]])
        u_k = u_ab[::-1, ::-1]
        np.testing.assert_allclose(hadamard_bec(1), u_k, atol=1e-14)
        assert np.allclose(np.abs(hadamard_bec(1)), h)

    def test_n1_on_plus(self):
        np.testing.assert_allclose(hadamard_bec(1) @ [h, h], [0, -1], atol=1e-14)

    @pytest.mark.parametrize("n", range(1, 17))
    def test_maps_plus_minus_to_logical(self, n):
        u = hadamard_bec(n)
        f0 = abs(np.vdot(coherent_state(n, LOGICAL_ZERO), u @ coherent_state(n, PLUS))) ** 2
        f1 = abs(np.vdot(coherent_state(n, LOGICAL_ONE), u @ coherent_state(n, MINUS))) ** 2
        assert f0 > 1 - 1e-9 and f1 > 1 - 1e-9

    @pytest.mark.parametrize("n", range(1, 17))
    def test_relative_sign_is_n_parity(self, n):
        u = hadamard_bec(n)
        a = (u @ coherent_state(n, PLUS))[n]
        b = (u @ coherent_state(n, MINUS))[0]
        assert abs(a - (-1) ** n) < 1e-9
        assert abs(b - 1) < 1e-9

    @pytest.mark.parametrize("n", [1, 2, 5, 16, 64])
    def test_unitary(self, n):
        u = hadamard_bec(n)
        assert np.max(np.abs(u.conj().T @ u - np.eye(n + 1))) < 1e-10

    @pytest.mark.parametrize("n", range(1, 7))
    def test_matches_scipy_expm(self, n):
        np.testing.assert_allclose(hadamard_bec(n), dense.hadamard(n), atol=1e-10)

    def test_expm_rejects_non_hermitian(self):
        with pytest.raises(ValidationError):
            expm_hermitian(np.array([[0, 1], [0, 0]]), 1.0)

    def test_needs_particles(self):
        with pytest.raises(ValidationError):
            hadamard_bec(0)


class TestPhases:
    def test_rcz_values(self):
        assert abs(rcz_phase(1, 0, 2, pi / 4) - 1) < 1e-15
        assert abs(rcz_phase(1, 1, 2, pi / 4) + 1) < 1e-15

    def test_lcz_n1_is_qubit_cz(self):
        table = edge_phase_table(EdgeGate(GateKind.LCZ, 0, 1), 1, 1)
        np.testing.assert_allclose(np.diag(table.reshape(-1)), np.diag([1, 1, 1, -1]), atol=1e-15)

    def test_lcz_symmetric(self):
        for a in range(5):
            for b in range(5):
                assert lcz_phase(a, b, 0.37) == lcz_phase(b, a, 0.37)

    def test_edge_validation(self):
        with pytest.raises(ValidationError):
            EdgeGate(GateKind.RCZ, 1, 1)

    @pytest.mark.parametrize("n", range(1, 11))
    def test_rcz_grouped_form(self, n):
        assert fidelity(rcz(plus_pair(n, n), 0, 1), cf.rcz_grouped(n, n)) > 1 - 1e-9

    @pytest.mark.parametrize("n", range(1, 11))
    def test_lcz_both_groupings(self, n):
        out = lcz(plus_pair(n, n), 0, 1)
        assert fidelity(out, cf.lcz_grouped(n, n, 2)) > 1 - 1e-9
        assert fidelity(out, cf.lcz_grouped(n, n, 1)) > 1 - 1e-9

    def test_rcz_and_lcz_at_n1_differ_by_local_diagonal(self):
        r = rcz(plus_pair(1, 1), 0, 1)
        # rcz = (-1)^{k_from} * lcz at N = 1
        comp = apply_site_operator(r, 0, np.diag([1, -1]))
        l = lcz(plus_pair(1, 1), 0, 1)
        assert fidelity(comp, l) > 1 - 1e-12
        cz = np.diag([1, 1, 1, -1]) @ np.full(4, 0.5)
        assert abs(abs(np.vdot(cz, l.amplitudes)) ** 2 - 1) < 1e-12


class TestAgainstHamiltonians:
    """Closed-form phase tables against exponentiated explicit Hamiltonians."""

    @pytest.mark.parametrize("n1", range(1, 5))
    @pytest.mark.parametrize("n2", range(1, 5))
    @pytest.mark.parametrize("kind", ["rcz", "lcz"])
    def test_gate_operator(self, kind, n1, n2):
        t = pi / 4
        fast = edge_phase_table(EdgeGate(GateKind(kind), 0, 1, t), n1, n2).reshape(-1)
        slow = dense.gate_unitary((n1, n2), kind, 0, 1, t, method="expm")
        assert np.max(np.abs(np.diag(fast) - slow)) < 1e-9

    @pytest.mark.parametrize("n", range(1, 5))
    def test_legacy_operator(self, n):
        fast = edge_phase_table(EdgeGate(GateKind.RCZ, 0, 1, pi / (4 * n)), n, n).reshape(-1)
        slow = dense.gate_unitary((n, n), "rcz", 0, 1, pi / (4 * n), method="expm")
        assert np.max(np.abs(np.diag(fast) - slow)) < 1e-9

    @pytest.mark.parametrize("n", range(1, 5))
    def test_equal_n_is_specialization(self, n):
        # H1 written with a single N equals H1' with N1 = N2 = N
        s = dense.stokes(n)["z"]
        one = np.eye(n + 1)
        h1 = -np.kron(s, s) + n * np.kron(s, one) - n * np.kron(one, s) + n * n * np.eye((n + 1) ** 2)
        np.testing.assert_allclose(h1, dense.h1_prime((n, n), 0, 1), atol=1e-12)

    def test_orientation_swaps_sites(self):
        a = dense.gate_unitary((2, 3), "rcz", 1, 0)
        r = init_product([(2, coherent_state(2, PLUS)), (3, coherent_state(3, MINUS))])
        np.testing.assert_allclose(rcz(r, 1, 0).amplitudes, a @ r.amplitudes, atol=1e-9)


class TestZZAndLegacy:
    def test_zz_zero_time(self):
        r = plus_pair(3, 2)
        np.testing.assert_allclose(zz_evolution(r, 0, 1, 0.0).amplitudes, r.amplitudes)

    @pytest.mark.parametrize("n", [1, 2, 3])
    @pytest.mark.parametrize("t", [pi / 4, 0.3, 1.7])
    def test_zz_grouped_form(self, n, t):
        assert fidelity(zz_evolution(plus_pair(n, n), 0, 1, t), cf.zz_grouped(n, n, t)) > 1 - 1e-9

    def test_zz_matches_dense(self):
        r = plus_pair(2, 3)
        slow = dense.gate_unitary((2, 3), "zz", 0, 1, 0.41) @ r.amplitudes
        np.testing.assert_allclose(zz_evolution(r, 0, 1, 0.41).amplitudes, slow, atol=1e-10)

    def test_zz_n1_is_entangling(self):
        out = zz_evolution(plus_pair(1, 1), 0, 1, pi / 4)
        rho = out.tensor() @ out.tensor().conj().T
        assert abs(np.trace(rho @ rho).real - 0.5) < 1e-12

    def test_legacy_n1_is_rcz(self):
        r = plus_pair(1, 1)
        np.testing.assert_allclose(legacy_cz(r, 0, 1).amplitudes, rcz(r, 0, 1).amplitudes)

    def test_legacy_n2_norm(self):
        assert abs(legacy_cz(plus_pair(2, 2), 0, 1).norm() - 1) < 1e-12

    def test_legacy_unequal_rejected(self):
        with pytest.raises(ValidationError):
            legacy_cz(plus_pair(2, 3), 0, 1)

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_legacy_grouped_form_orientation(self, n):
        # the printed grouped form carries site 1's phase from site 2's index,
        # so it matches the 2 -> 1 orientation only
        ref = cf.legacy_grouped(n)
        forward = fidelity(legacy_cz(plus_pair(n, n), 0, 1), ref)
        backward = fidelity(legacy_cz(plus_pair(n, n), 1, 0), ref)
        assert backward > 1 - 1e-9
        assert forward < 1 - 1e-3


@settings(max_examples=30, deadline=None)
@given(
    seed=st.integers(0, 2**32 - 1),
    kind=st.sampled_from(["rcz", "lcz"]),
    t=st.floats(0, 2 * pi),
)
def test_gate_commutes_with_projection_elsewhere(seed, kind, t):
    g = np.random.default_rng(seed)
    dims = (2, 3, 2)
    r = init_product([(n, random_site(g, n)) for n in dims])
    v = random_site(g, 2)
    gate = EdgeGate(GateKind(kind), 0, 1, t)
    table = edge_phase_table(gate, 2, 3)
    first_gate = contract_site(apply_pair_phase(r, 0, 1, table), 2, v)
    first_proj = apply_pair_phase(contract_site(r, 2, v), 0, 1, table)
    np.testing.assert_allclose(first_gate.amplitudes, first_proj.amplitudes, atol=1e-12)
