import itertools
import json

import pytest

from latticework import QQ, GF, LatticeBasis, is_strict_bl_map, oracle_type_via_diagonalization, parse_scalar
from latticework import matrix as mx
from latticework.errors import InvariantViolation, SingularMatrix, UnknownSuite
from latticework.harness import SUITES, TrialConfig, gen, jsonio, replay, run_suite

P = parse_scalar


def broken(expected, got):
    return False


class TestConfig:
    @pytest.mark.parametrize("kw", [{"trials": 0}, {"dim_max": 0}, {"window": 0}])
    def test_validation(self, kw):
        with pytest.raises(InvariantViolation):
            TrialConfig(**kw)

    def test_field_by_name(self):
        assert TrialConfig(field="Fp:5").field is GF(5)


class TestGenerators:
    @pytest.mark.parametrize("kind", ["lattice", "flag", "borel_element", "parabolic_element", "strict_extension"])
    def test_deterministic(self, kind):
        cfg = TrialConfig(seed=7)
        enc = lambda x: repr(x) if not hasattr(x, "matrix") else jsonio.lattice_to_json(x)
        first = [enc(x) for x in itertools.islice(gen(kind, cfg), 5)]
        second = [enc(x) for x in itertools.islice(gen(kind, cfg), 5)]
        assert first == second

    def test_lattices_invertible(self):
        for lat in itertools.islice(gen("lattice", TrialConfig(seed=3)), 30):
            assert not mx.det(lat.matrix).is_zero()

    def test_extensions_are_strict(self):
        for e in itertools.islice(gen("strict_extension", TrialConfig(seed=2, field=GF(5))), 30):
            assert is_strict_bl_map(e.incl, e.S, e.V)
            assert is_strict_bl_map(e.proj, e.V, e.Q)

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            next(gen("torus", TrialConfig()))


class TestOracle:
    def test_examples(self):
        assert oracle_type_via_diagonalization(mx.diagonal_t(QQ, (2, 0))) == (2, 0)
        assert oracle_type_via_diagonalization([[P("1"), P("t^-1")], [P("0"), P("1")]]) == (1, -1)

    def test_singular(self):
        with pytest.raises(SingularMatrix):
            oracle_type_via_diagonalization([[P("1"), P("1")], [P("1"), P("1")]])


class TestSuites:
    def test_cartan_seed_one(self):
        rep = run_suite("cartan_oracle", TrialConfig(seed=1, trials=100))
        assert rep.passed and rep.trials == 100

    def test_extension_dominance(self):
        assert run_suite("extension_dominance", TrialConfig(trials=40)).passed

    @pytest.mark.parametrize("name", sorted(SUITES))
    def test_every_suite_small(self, name):
        rep = run_suite(name, TrialConfig(seed=11, trials=15, dim_max=3))
        assert rep.passed, rep.failures[:1]

    def test_broken_comparator_fails(self):
        rep = run_suite("cartan_oracle", TrialConfig(trials=5), comparator=broken)
        assert len(rep.failures) == 5
        assert not rep.passed

    def test_report_is_json(self):
        rep = run_suite("tate_anchors", TrialConfig())
        data = json.loads(json.dumps(rep.to_json()))
        assert data["passed"] and data["trials"] == 11

    def test_minuscule_control_note(self):
        rep = run_suite("minuscule_bijection", TrialConfig(trials=3))
        assert any("does not survive" in note for note in rep.notes)

    def test_unknown_suite(self):
        with pytest.raises(UnknownSuite):
            run_suite("nope")

    def test_order_independent_trials(self):
        # Trial i depends only on (seed, suite, i), not on how many trials run.
        a = run_suite("cartan_oracle", TrialConfig(trials=8), comparator=broken)
        b = run_suite("cartan_oracle", TrialConfig(trials=3), comparator=broken)
        assert a.failures[:3] == b.failures


class TestReplay:
    @pytest.mark.parametrize("name", ["cartan_oracle", "bb_rees_roundtrip", "goodness_two_ways", "extension_dominance"])
    def test_serialized_failures_replay(self, name):
        rep = run_suite(name, TrialConfig(trials=4, dim_max=3), comparator=broken)
        for failure in json.loads(json.dumps(rep.to_json()))["failures"]:
            if failure["input"] is None:
                continue
            passed, expected, got = replay(name, failure["input"], "Q")
            assert passed
            assert json.loads(json.dumps(expected)) == failure["expected"]
            assert not replay(name, failure["input"], "Q", comparator=broken)[0]

    def test_replay_over_f5(self):
        rep = run_suite("cartan_oracle", TrialConfig(trials=3, field=GF(5)), comparator=broken)
        for failure in rep.failures:
            assert replay("cartan_oracle", failure["input"], GF(5))[0]
