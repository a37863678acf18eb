from itertools import product
from math import pi

import numpy as np
import pytest

from becmbqc import dense
from becmbqc.errors import ValidationError
from becmbqc.measure import LogicalState
from becmbqc.protocols import (
    eq34_eq35,
    fit_local_correction,
    logical_cz_gadget,
    logical_cz_pattern,
    oracle_protocol1,
    protocol1,
    protocol2,
    undo_byproduct,
)

ANGLES = [0.0, 0.4, 1.9, 3.3, 5.1]
SIGNS = list(product((+1, -1), repeat=2))


class TestOracles:
    def test_plus_plus_even_n2_phi_zero(self):
        # x = N2 pi / 2 = pi: the outcome is |0~> up to phase
        np.testing.assert_allclose(abs(oracle_protocol1(2, 0.0, 0.0).amplitudes), [1, 0], atol=1e-15)

    def test_plus_plus_odd_n2_phi_zero(self):
        np.testing.assert_allclose(abs(oracle_protocol1(1, 0.0, 0.0).amplitudes), [0, 1], atol=1e-15)

    def test_minus_minus_form(self):
        phi, theta, n2 = 0.7, 1.3, 3
        x = (phi + n2 * pi) / 2
        ref = LogicalState.from_amplitudes([1j * np.sin(x), -np.exp(-1j * theta) * np.cos(x)])
        assert oracle_protocol1(n2, phi, theta, -1, -1).fidelity(ref) == pytest.approx(1.0)

    def test_minus_minus_agrees_with_shift_rule(self):
        for phi, theta in product(ANGLES, ANGLES):
            a = oracle_protocol1(4, phi, theta, -1, -1)
            b = oracle_protocol1(4, phi + pi, theta + pi, +1, +1)
            assert a.fidelity(b) > 1 - 1e-12

    def test_sign_aliases(self):
        a = oracle_protocol1(2, 0.3, 0.2, "-", "plus")
        b = oracle_protocol1(2, 0.3, 0.2, -1, +1)
        np.testing.assert_allclose(a.amplitudes, b.amplitudes)
        with pytest.raises(ValidationError):
            oracle_protocol1(2, 0.3, 0.2, 0, +1)

    def test_shifted_printed_forms(self):
        x = (0.5 + 3 * pi) / 2
        np.testing.assert_allclose(
            eq34_eq35(3, 0.5, 0.0, +1), [np.sin(x), -1j * np.cos(x)]
        )
        with pytest.raises(ValidationError):
            eq34_eq35(1, 0.0, 0.0)

    def test_cz_pattern(self):
        np.testing.assert_allclose(logical_cz_pattern(0, 0).amplitudes, [0.5, 0.5, 0.5, -0.5])
        np.testing.assert_allclose(logical_cz_pattern(1, 0).amplitudes, [0.5, -0.5, 0.5, 0.5])


@pytest.mark.parametrize("n2", [2, 4])
@pytest.mark.parametrize("sign3,sign2", SIGNS)
def test_mixed_sign_table_matches_bruteforce(n2, sign3, sign2):
    for n1, n3 in [(2, 2), (3, 1), (1, 4)]:
        for phi, theta in product(ANGLES, ANGLES):
            amps, weight = dense.protocol1(n1, n2, n3, phi, theta, sign3, sign2)
            if weight < 1e-12:
                continue
            brute = undo_byproduct(LogicalState.from_amplitudes(amps), [n1 % 2])
            assert brute.fidelity(oracle_protocol1(n2, phi, theta, sign3, sign2)) > 1 - 1e-9


class TestProtocol1:
    @pytest.mark.parametrize("n1,n2,n3", [(1, 1, 1), (2, 3, 1), (4, 2, 5), (3, 3, 3)])
    @pytest.mark.parametrize("sign3,sign2", SIGNS)
    def test_matches_bruteforce_and_accounts_probability(self, n1, n2, n3, sign3, sign2):
        phi, theta = 0.9, 2.2
        rep = protocol1(n1, n2, n3, phi, theta, sign3, sign2)
        amps, weight = dense.protocol1(n1, n2, n3, phi, theta, sign3, sign2)
        assert rep.outcome.fidelity(LogicalState.from_amplitudes(amps)) > 1 - 1e-9
        assert rep.branch_probability == pytest.approx(weight, rel=1e-9)
        assert rep.max_leak < 1e-10
        assert rep.outcome.residual < 1e-10

    @pytest.mark.parametrize("n", range(1, 7))
    def test_byproduct_corrected_matches_oracle(self, n):
        for phi, theta in product(ANGLES, ANGLES):
            rep = protocol1(n, n, n, phi, theta)
            assert rep.fidelity_byproduct_corrected > 1 - 1e-9
            assert rep.extras["fidelity_before_hadamard_vs_closed_form"] > 1 - 1e-9

    @pytest.mark.parametrize("n1", range(1, 7))
    def test_fitted_correction_is_predicted_byproduct(self, n1):
        rep = protocol1(n1, 3, 2, 1.1, 0.6)
        assert rep.hadamard_byproduct == [n1 % 2]
        assert rep.local_correction == pytest.approx([float(n1 % 2)], abs=1e-9)

    def test_even_n1_raw_agreement(self):
        rep = protocol1(2, 5, 3, 0.3, 4.0, -1, +1)
        assert rep.fidelity_vs_oracle > 1 - 1e-9

    def test_odd_n1_needs_correction(self):
        rep = protocol1(3, 2, 2, pi / 2, 0.0)
        assert rep.fidelity_vs_oracle < 0.5
        assert rep.fidelity_byproduct_corrected > 1 - 1e-9

    def test_sampled_run_is_deterministic(self):
        a = protocol1(2, 3, 2, 0.5, 0.5, seed=42)
        b = protocol1(2, 3, 2, 0.5, 0.5, seed=42)
        assert a.as_dict() == b.as_dict()
        assert all(br.sampled for br in a.branches)

    def test_rejects_empty_site(self):
        with pytest.raises(ValidationError):
            protocol1(0, 1, 1, 0.0, 0.0)


class TestProtocol2:
    @pytest.mark.parametrize("n1,n2,n3", [(2, 3, 2), (1, 4, 3)])
    def test_zero_removal_is_protocol1(self, n1, n2, n3):
        a = protocol2(n1, n2, n3, 0.7, 1.4, removal_count=0)
        b = protocol1(n1, n2, n3, 0.7, 1.4)
        assert a.outcome.fidelity(b.outcome) > 1 - 1e-12

    @pytest.mark.parametrize("m", [1, 2])
    @pytest.mark.parametrize("n1", [1, 2])
    def test_mode_a_matches_shifted_outcome(self, m, n1):
        for phi, theta in product(ANGLES[1:], ANGLES[1:]):
            rep = protocol2(n1, 4, 3, phi, theta, removal_count=m, removal_mode="a")
            assert rep.fidelity_byproduct_corrected > 1 - 1e-9
            assert rep.max_leak < 1e-10

    @pytest.mark.parametrize("n1", [1, 2])
    def test_mode_b_matches_unshifted_outcome(self, n1):
        for phi, theta in product(ANGLES[1:], ANGLES[1:]):
            rep = protocol2(n1, 4, 3, phi, theta, removal_count=1, removal_mode="b")
            assert rep.extras["fidelity_vs_unshifted_oracle_byproduct_corrected"] > 1 - 1e-9

    def test_matches_label(self):
        rep = protocol2(2, 3, 2, 0.4, 0.2, removal_count=1, removal_mode="a")
        assert rep.extras["matches"] == "shifted"

    def test_invalid_removal(self):
        with pytest.raises(ValidationError):
            protocol2(1, 2, 1, 0.0, 0.0, removal_count=2)
        with pytest.raises(ValidationError):
            protocol2(1, 2, 1, 0.0, 0.0, removal_count=1, removal_mode="x")


class TestLogicalCZ:
    @pytest.mark.parametrize("n", range(1, 6))
    @pytest.mark.parametrize("s1,s2", list(product((0, 1), repeat=2)))
    def test_against_bruteforce(self, n, s1, s2):
        rep = logical_cz_gadget(n, s1, s2)
        assert rep.extras["fidelity_vs_bruteforce"] > 1 - 1e-9
        assert rep.extras["fidelity_after_local_correction"] > 1 - 1e-9
        assert rep.max_leak < 1e-10
        assert rep.outcome.residual < 1e-10

    @pytest.mark.parametrize("n", [2, 4, 6])
    def test_even_n_verbatim(self, n):
        for s1, s2 in product((0, 1), repeat=2):
            assert logical_cz_gadget(n, s1, s2).fidelity_vs_oracle > 1 - 1e-9

    @pytest.mark.parametrize("n", [1, 3, 5])
    def test_odd_n_correction_is_zz(self, n):
        rep = logical_cz_gadget(n, 0, 0)
        assert rep.local_correction == pytest.approx([1.0, 1.0])
        assert rep.fidelity_byproduct_corrected > 1 - 1e-9

    def test_branch_probabilities_sum_to_one(self):
        total = sum(logical_cz_gadget(2, a, b).branch_probability for a, b in product((0, 1), repeat=2))
        assert total == pytest.approx(1.0, abs=1e-9)

    def test_bad_outcome(self):
        with pytest.raises(ValidationError):
            logical_cz_gadget(2, 2, 0)


def test_fit_local_correction_recovers_phases():
    target = LogicalState.from_amplitudes([1, 1j, -1, 0.5])
    a = target.amplitudes.reshape(2, 2).copy()
    a[1, :] *= np.exp(-0.7j)
    a[:, 1] *= np.exp(-1.9j)
    phases, fid = fit_local_correction(LogicalState.from_amplitudes(a), target)
    assert phases == pytest.approx([0.7 / pi, 1.9 / pi])
    assert fid == pytest.approx(1.0)
