"""Tests of the merge pipeline against an independent statevector oracle."""

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ghzline import (
    DensityMatrix,
    MemoryParams,
    NoiseParams,
    ProtocolOutcome,
    PureState,
    click_prob,
    dark_count_depolarization,
    dephasing_prob,
    detection_prob,
    expected_coherence_near,
    run_pipeline,
    source_pair_state,
    stabilizer_suite,
    storage_times,
    target_state,
)
from util import make_cfg

OUTCOMES = (+1, -1)


def ideal_post_measurement(outcome):
    """Statevector route: two pairs, merge CZ, project qubit 2 in Y.

    Works on raw amplitude arrays (qubit 0 = most significant bit) so it
    shares no code with the density-matrix engine.
    """
    plus = np.array([1.0, 1.0]) / np.sqrt(2.0)
    chi = np.kron(plus, plus) * np.array([1.0, 1.0, 1.0, -1.0])
    psi = np.kron(chi, chi).astype(complex)
    for i in range(16):
        if ((i >> 2) & 1) and ((i >> 1) & 1):
            psi[i] = -psi[i]
    e = np.array([1.0, outcome * 1.0j]) / np.sqrt(2.0)
    t = np.tensordot(psi.reshape(2, 2, 2, 2), e.conj(), axes=([2], [0]))
    vec = t.reshape(8)
    return vec / np.linalg.norm(vec)


class TestSourcePair:
    def test_matches_cz_on_plus_plus(self):
        expected = DensityMatrix.from_pure([0.5, 0.5, 0.5, -0.5])
        assert np.allclose(source_pair_state().data, expected.data, atol=1e-15)

    def test_is_valid(self):
        source_pair_state().validate()


class TestTargetState:
    @pytest.mark.parametrize("outcome", OUTCOMES)
    def test_unit_norm(self, outcome):
        amps = target_state(outcome).amplitudes
        assert np.linalg.norm(amps) == pytest.approx(1.0, abs=1e-12)

    def test_branches_are_conjugates(self):
        plus = target_state(+1).amplitudes
        minus = target_state(-1).amplitudes
        assert np.allclose(minus, plus.conj(), atol=1e-12)

    @pytest.mark.parametrize("outcome", OUTCOMES)
    def test_matches_circuit_oracle(self, outcome):
        oracle = ideal_post_measurement(outcome)
        overlap = abs(np.vdot(oracle, target_state(outcome).amplitudes))
        assert overlap == pytest.approx(1.0, abs=1e-12)

    def test_rejects_bad_outcome(self):
        with pytest.raises(ValueError):
            target_state(0)


class TestStabilizerSuite:
    @pytest.mark.parametrize("outcome", OUTCOMES)
    def test_eight_elements_with_identity(self, outcome):
        suite = stabilizer_suite(outcome)
        assert len(suite) == 8
        assert sum(1 for p in suite if set(p.factors) == {"I"}) == 1

    @pytest.mark.parametrize("outcome", OUTCOMES)
    def test_all_stabilize_target(self, outcome):
        rho = DensityMatrix.from_pure(target_state(outcome))
        for pauli in stabilizer_suite(outcome):
            assert rho.expectation(pauli) == pytest.approx(1.0, abs=1e-12)

    @pytest.mark.parametrize("outcome", OUTCOMES)
    def test_all_stabilize_circuit_oracle(self, outcome):
        rho = DensityMatrix.from_pure(ideal_post_measurement(outcome))
        for pauli in stabilizer_suite(outcome):
            assert rho.expectation(pauli) == pytest.approx(1.0, abs=1e-12)

    @pytest.mark.parametrize("outcome", OUTCOMES)
    def test_forms_a_group(self, outcome):
        mats = [p.matrix() for p in stabilizer_suite(outcome)]
        eye = np.eye(8)
        for a in mats:
            # involutions that pairwise commute
            assert np.allclose(a @ a, eye, atol=1e-12)
            for b in mats:
                assert np.allclose(a @ b, b @ a, atol=1e-12)
        product = eye
        for a in mats:
            product = product @ a
        assert np.allclose(product, eye, atol=1e-12)

    def test_rejects_bad_outcome(self):
        with pytest.raises(ValueError):
            stabilizer_suite(2)


class TestNoiseParams:
    def test_defaults_to_noiseless(self):
        noise = NoiseParams()
        assert noise.channel_depol == 0.0 and noise.gate_fail == 0.0

    @pytest.mark.parametrize("kwargs", [
        {"channel_depol": -0.1},
        {"channel_depol": 1.1},
        {"gate_fail": -0.1},
        {"gate_fail": 1.0001},
    ])
    def test_rejects_out_of_range(self, kwargs):
        with pytest.raises(ValueError):
            NoiseParams(**kwargs)


class TestNoiselessPipeline:
    @pytest.mark.parametrize("outcome", OUTCOMES)
    def test_unit_fidelity(self, outcome):
        result = run_pipeline(make_cfg(), outcome=outcome)
        assert isinstance(result, ProtocolOutcome)
        assert result.fidelity == pytest.approx(1.0, abs=1e-10)
        assert result.outcome_prob == pytest.approx(0.5, abs=1e-10)
        assert result.outcome == outcome
        assert not result.used_memory

    def test_outcome_probabilities_sum_to_one(self):
        cfg = make_cfg()
        total = sum(run_pipeline(cfg, outcome=o).outcome_prob for o in OUTCOMES)
        assert total == pytest.approx(1.0, abs=1e-12)

    @pytest.mark.parametrize("outcome", OUTCOMES)
    def test_reports_stabilizer_expectations(self, outcome):
        result = run_pipeline(make_cfg(), outcome=outcome)
        assert [p for p, _ in result.stabilizer_expectations] == list(
            stabilizer_suite(outcome)
        )
        for pauli, value in result.stabilizer_expectations:
            assert value == pytest.approx(result.rho_out.expectation(pauli), abs=1e-14)
            assert value == pytest.approx(1.0, abs=1e-10)

    @pytest.mark.parametrize("outcome", OUTCOMES)
    def test_output_matches_circuit_oracle(self, outcome):
        result = run_pipeline(make_cfg(), outcome=outcome)
        expected = DensityMatrix.from_pure(ideal_post_measurement(outcome))
        assert np.allclose(result.rho_out.data, expected.data, atol=1e-12)

    def test_output_state_is_valid(self):
        run_pipeline(make_cfg()).rho_out.validate()


class TestNoisyPipeline:
    def test_full_channel_depolarization_pins_fidelity(self):
        # both transit qubits fully scrambled: only the ZXX-type checks on
        # B's qubit survive, leaving 1/8 overlap with the target
        result = run_pipeline(make_cfg(), NoiseParams(channel_depol=1.0))
        assert result.fidelity == pytest.approx(0.125, abs=1e-12)

    def test_full_gate_failure_factorizes(self):
        result = run_pipeline(make_cfg(), NoiseParams(gate_fail=1.0))
        assert result.outcome_prob == pytest.approx(0.5, abs=1e-12)

    def test_fidelity_decreases_in_channel_noise(self):
        cfg = make_cfg()
        fids = [run_pipeline(cfg, NoiseParams(channel_depol=a)).fidelity
                for a in (0.0, 0.1, 0.2, 0.4)]
        assert all(hi > lo for hi, lo in zip(fids, fids[1:]))

    def test_fidelity_decreases_in_gate_noise(self):
        cfg = make_cfg()
        fids = [run_pipeline(cfg, NoiseParams(gate_fail=f)).fidelity
                for f in (0.0, 0.1, 0.2, 0.4)]
        assert all(hi > lo for hi, lo in zip(fids, fids[1:]))

    @given(depol=st.floats(min_value=0.0, max_value=1.0, allow_nan=False),
           fail=st.floats(min_value=0.0, max_value=1.0, allow_nan=False))
    def test_output_always_valid(self, depol, fail):
        result = run_pipeline(make_cfg(), NoiseParams(depol, fail))
        result.rho_out.validate()
        assert 0.0 <= result.fidelity <= 1.0 + 1e-12

    @pytest.mark.parametrize("depol", [0.05, 0.2, 0.6])
    def test_branches_degrade_symmetrically_under_transit_noise(self, depol):
        cfg = make_cfg()
        noise = NoiseParams(channel_depol=depol)
        plus = run_pipeline(cfg, noise, outcome=+1)
        minus = run_pipeline(cfg, noise, outcome=-1)
        assert plus.fidelity == pytest.approx(minus.fidelity, abs=1e-10)
        assert plus.outcome_prob + minus.outcome_prob == pytest.approx(1.0, abs=1e-10)

    def test_dark_counts_reduce_fidelity(self):
        clean = run_pipeline(make_cfg(), NoiseParams(0.05, 0.05))
        dark = run_pipeline(make_cfg(dark_a=0.01, dark_b=0.01, dark_c=0.01),
                            NoiseParams(0.05, 0.05))
        assert dark.fidelity < clean.fidelity

    def test_mirrored_memoryless_segments_agree(self):
        noise = NoiseParams(0.05, 0.1)
        cfg = make_cfg(eta_a=0.4, eta_c=0.7, dark_a=0.002, dark_c=0.004,
                       trans_ab=0.3, trans_bc=0.6, len_ab=20.0, len_bc=120.0)
        mirror = make_cfg(eta_a=0.7, eta_c=0.4, dark_a=0.004, dark_c=0.002,
                          trans_ab=0.6, trans_bc=0.3, len_ab=120.0, len_bc=20.0)
        for outcome in OUTCOMES:
            a = run_pipeline(cfg, noise, outcome=outcome)
            b = run_pipeline(mirror, noise, outcome=outcome)
            assert a.fidelity == pytest.approx(b.fidelity, abs=1e-12)
            assert a.outcome_prob == pytest.approx(b.outcome_prob, abs=1e-12)


class TestMemoryBranch:
    def test_ideal_memory_matches_memoryless(self):
        noise = NoiseParams(0.1, 0.05)
        cfg = make_cfg(dark_a=0.001, dark_b=0.002, dark_c=0.001,
                       memory=MemoryParams(1.0, 1e12))
        plain = run_pipeline(cfg, noise, use_memory=False)
        stored = run_pipeline(cfg, noise, use_memory=True)
        assert stored.used_memory
        assert np.max(np.abs(plain.rho_out.data - stored.rho_out.data)) <= 1e-10
        assert stored.fidelity == pytest.approx(plain.fidelity, abs=1e-10)

    def test_short_t2_reduces_fidelity(self):
        cfg_fast = make_cfg(len_ab=10.0, len_bc=90.0, memory=MemoryParams(0.9, 1e-3))
        cfg_slow = make_cfg(len_ab=10.0, len_bc=90.0, memory=MemoryParams(0.9, 2.5))
        fast = run_pipeline(cfg_fast, use_memory=True)
        slow = run_pipeline(cfg_slow, use_memory=True)
        assert fast.fidelity < slow.fidelity

    def test_retrieval_efficiency_feeds_dark_count_junk(self):
        # lower retrieval means a larger junk fraction at B once darks exist
        noise = NoiseParams()
        lossy = make_cfg(dark_b=0.01, memory=MemoryParams(0.5, 1e12))
        clean = make_cfg(dark_b=0.01, memory=MemoryParams(1.0, 1e12))
        assert (run_pipeline(lossy, noise, use_memory=True).fidelity
                < run_pipeline(clean, noise, use_memory=True).fidelity)

    def test_measured_and_kept_qubits_are_not_interchangeable(self):
        # swapping which stored qubit sits near changes the fidelity (the
        # measured qubit folds its dephasing into the outcome mix) but not
        # the outcome probability
        noise = NoiseParams(0.05, 0.1)
        cfg = make_cfg(len_ab=10.0, len_bc=150.0, memory=MemoryParams(0.9, 0.003))
        mirror = make_cfg(len_ab=150.0, len_bc=10.0, memory=MemoryParams(0.9, 0.003))
        a = run_pipeline(cfg, noise, use_memory=True)
        b = run_pipeline(mirror, noise, use_memory=True)
        assert a.outcome_prob == pytest.approx(b.outcome_prob, abs=1e-12)
        assert abs(a.fidelity - b.fidelity) > 1e-5

    def test_requires_memory_parameters(self):
        with pytest.raises(ValueError, match="memory"):
            run_pipeline(make_cfg(), use_memory=True)

    def test_manual_wiring_reproduces_pipeline(self):
        # rebuild the documented step order by hand for a far-side-A layout
        noise = NoiseParams(0.08, 0.15)
        cfg = make_cfg(eta_a=0.9, eta_b=0.7, eta_c=0.8,
                       dark_a=0.001, dark_b=0.003, dark_c=0.002,
                       trans_ab=0.4, trans_bc=0.9, len_ab=120.0, len_bc=30.0,
                       memory=MemoryParams(0.85, 0.01))
        times = storage_times(cfg)
        assert times.far_node == "A"

        rho = source_pair_state().tensor(source_pair_state())
        rho = rho.depolarize(0, noise.channel_depol)
        rho = rho.depolarize(3, noise.channel_depol)
        rho = rho.dephase(2, 0.5 * (1.0 - expected_coherence_near(cfg)))
        rho = rho.dephase(1, dephasing_prob(times.t_far, cfg.memory.t2))
        rho = rho.noisy_cz(1, 2, noise.gate_fail)
        for qubit, node in ((0, "A"), (1, "B"), (2, "B"), (3, "C")):
            params = {"A": cfg.node_a, "B": cfg.node_b, "C": cfg.node_c}[node]
            xi = detection_prob(cfg, node, with_memory=node == "B")
            xi_click = click_prob(xi, params.dark_count_prob)
            alpha = dark_count_depolarization(xi, xi_click, params.dark_count_prob)
            rho = rho.depolarize(qubit, alpha)
        prob, expected = rho.measure(2, "Y", +1)

        result = run_pipeline(cfg, noise, use_memory=True)
        assert result.outcome_prob == pytest.approx(prob, abs=1e-14)
        assert np.max(np.abs(result.rho_out.data - expected.data)) <= 1e-14

    def test_rejects_bad_outcome(self):
        with pytest.raises(ValueError):
            run_pipeline(make_cfg(), outcome=3)
