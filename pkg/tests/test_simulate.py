"""Tests for the unified circuit-execution front end."""

import numpy as np
import pytest

from quditsim.builders import (
    build_deutsch_jozsa,
    build_ghz_chain,
    build_random_clifford_circuit,
)
from quditsim.circuit import Circuit
from quditsim.errors import DimensionError
from quditsim.simulate import counts_key, records_to_counts, run_circuit


class TestCountsKeys:
    """Outcome labeling."""

    def test_digit_concatenation(self):
        assert counts_key((1, 0, 2), 3) == "102"
        assert counts_key((0,), 5) == "0"

    def test_large_d_uses_dashes(self):
        assert counts_key((10, 0, 12), 13) == "10-0-12"

    def test_counts_sorted_numerically(self):
        class Rec:
            def __init__(self, outcome):
                self.outcome = outcome

        records = [[Rec(2), Rec(0)], [Rec(0), Rec(1)], [Rec(2), Rec(0)]]
        counts = records_to_counts(records, 3)
        assert list(counts) == ["01", "20"]
        assert counts["20"] == 2


class TestMethodRouting:
    """Backend selection and dimension gating."""

    def test_tableau_on_odd_prime(self):
        c = build_ghz_chain(2, 3, measure=True)
        result = run_circuit(c, shots=50, seed=0, method="tableau")
        assert result.method == "tableau"
        assert result.shots == 50

    def test_tableau_routes_composite_to_weyl(self):
        c = Circuit(1, 4)
        c.add_gate("F", 0)
        c.add_gate("M", 0)
        result = run_circuit(c, shots=20, seed=0, method="tableau")
        # the requested name is echoed even when the Weyl path serves it
        assert result.method == "tableau"
        assert all(rec[0].outcome in range(4) for rec in result.records)

    def test_frames_rejects_composite(self):
        c = Circuit(1, 4)
        c.add_gate("M", 0)
        with pytest.raises(DimensionError):
            run_circuit(c, shots=5, seed=0, method="frames")

    def test_unknown_method(self):
        c = build_ghz_chain(2, 3, measure=True)
        with pytest.raises(ValueError):
            run_circuit(c, shots=1, seed=0, method="magic")


class TestRecords:
    """Per-shot record structure."""

    def test_records_shape_and_fields(self):
        c = build_ghz_chain(2, 3, measure=True)
        result = run_circuit(c, shots=10, seed=1, method="tableau")
        assert len(result.records) == 10
        for rec in result.records:
            assert len(rec) == 2
            assert [r.seq for r in rec] == [0, 1]
            assert [r.qudit for r in rec] == [0, 1]
            assert rec[1].deterministic  # second GHZ readout is pinned
            assert not rec[0].deterministic

    def test_deterministic_flags_dense(self):
        c = build_ghz_chain(2, 3, measure=True)
        result = run_circuit(c, shots=10, seed=2, method="statevector")
        for rec in result.records:
            assert not rec[0].deterministic
            assert rec[1].deterministic
            assert rec[0].outcome == rec[1].outcome

    def test_deterministic_flags_frames(self):
        c = build_ghz_chain(2, 3, measure=True)
        result = run_circuit(c, shots=10, seed=3, method="frames")
        for rec in result.records:
            assert not rec[0].deterministic
            assert rec[1].deterministic
            assert rec[0].outcome == rec[1].outcome

    def test_reset_not_a_record_slot(self):
        c = Circuit(2, 3)
        c.add_gate("F", 0)
        c.add_gate("M", 0)
        c.add_gate("RESET", 0)
        c.add_gate("M", 0)
        for method in ("tableau", "statevector", "frames"):
            result = run_circuit(c, shots=5, seed=4, method=method)
            for rec in result.records:
                assert [r.seq for r in rec] == [0, 1]
                assert rec[1].outcome == 0


class TestCrossBackendAgreement:
    """All three backends sample the same distribution."""

    def marginals(self, result, slot, d):
        freqs = np.zeros(d)
        for rec in result.records:
            freqs[rec[slot].outcome] += 1
        return freqs / len(result.records)

    @pytest.mark.parametrize("d", [3, 5])
    def test_marginal_agreement(self, d):
        for seed in range(3):
            rng = np.random.default_rng(seed)
            c = build_random_clifford_circuit(3, d, 25, rng)
            for j in range(3):
                c.add_gate("M", j)
            results = {m: run_circuit(c, shots=4000, seed=seed + 10, method=m)
                       for m in ("tableau", "statevector", "frames")}
            for slot in range(3):
                base = self.marginals(results["tableau"], slot, d)
                for m in ("statevector", "frames"):
                    other = self.marginals(results[m], slot, d)
                    assert 0.5 * np.abs(base - other).sum() < 0.08, (d, seed, m, slot)

    def test_deutsch_jozsa_all_methods(self):
        for d in (3, 5):
            for constant in (True, False):
                c = build_deutsch_jozsa(d, constant=constant)
                want = 0 if constant else d - 1
                for m in ("tableau", "statevector", "frames"):
                    result = run_circuit(c, shots=30, seed=5, method=m)
                    for rec in result.records:
                        assert rec[0].outcome == want, (d, constant, m)
                        assert rec[0].deterministic


class TestDeterminismAndCounts:
    """Seeded reproducibility and the counts table."""

    def test_same_seed_identical_results(self):
        rng = np.random.default_rng(7)
        c = build_random_clifford_circuit(3, 3, 30, rng, noise=("d", 0.05))
        for j in range(3):
            c.add_gate("M", j)
        for m in ("tableau", "statevector", "frames"):
            a = run_circuit(c, shots=200, seed=99, method=m)
            b = run_circuit(c, shots=200, seed=99, method=m)
            assert a.outcome_tuples() == b.outcome_tuples(), m
            assert a.counts == b.counts

    def test_counts_totals(self):
        c = build_ghz_chain(2, 3, measure=True)
        result = run_circuit(c, shots=300, seed=8, method="tableau")
        assert sum(result.counts.values()) == 300
        assert set(result.counts) <= {"00", "11", "22"}

    def test_seed_echoed(self):
        c = build_ghz_chain(2, 3, measure=True)
        result = run_circuit(c, shots=1, seed=1234, method="tableau")
        assert result.seed == 1234
        assert result.dimension == 3
        assert result.num_qudits == 2


class TestNoiseIntegration:
    """N1 instructions inside full runs."""

    def test_certain_flip_changes_outcome(self):
        c = Circuit(1, 3)
        c.add_gate("N1", 0, noise_channel="f", prob=1.0)
        c.add_gate("M", 0)
        for m in ("tableau", "statevector", "frames"):
            result = run_circuit(c, shots=400, seed=9, method=m)
            outs = [rec[0].outcome for rec in result.records]
            assert 0 not in outs, m
            freqs = np.bincount(outs, minlength=3)[1:] / 400
            assert (np.abs(freqs - 0.5) < 0.08).all(), m

    def test_depolarizing_marginal(self):
        c = Circuit(1, 3)
        c.add_gate("N1", 0, noise_channel="d", prob=0.1)
        c.add_gate("M", 0)
        result = run_circuit(c, shots=20000, seed=10, method="tableau")
        outs = [rec[0].outcome for rec in result.records]
        freqs = np.bincount(outs, minlength=3) / 20000
        # X^a Z^b errors: 6 of 8 shift the outcome, uniformly over {1, 2}
        assert freqs[0] == pytest.approx(0.925, abs=0.01)
        assert freqs[1] == pytest.approx(0.0375, abs=0.01)
        assert freqs[2] == pytest.approx(0.0375, abs=0.01)
