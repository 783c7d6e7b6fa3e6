"""Checks for the verification harness: registry semantics, deterministic
trial seeding, report schema and byte-stability, skip/finding bookkeeping,
the satellite and sensitivity runners, and the command-line interface."""

import hashlib
import json

import pytest

import rotorlab.lab as lab
from rotorlab.cli import main as cli_main
from rotorlab.diagram import braid_closure, from_pd_text, orient, to_pd_text
from rotorlab.invariants import ResourceError, bracket, homfly
from rotorlab.lab import (AXIS, CheckSpec, LabError, THEOREMS, TrialRecord,
                          VerificationReport, orientation_sensitivity,
                          report_json_bytes, run_check, run_satellite_check,
                          search_counterexample, trial_seed)
from rotorlab.poly import parse_poly, poly_from_json, radical
from rotorlab.rotor import SatelliteSpec


# ---------------------------------------------------------------------------
# per-trial seeds
# ---------------------------------------------------------------------------


class TestTrialSeed:
    def test_frozen_values(self):
        # FROZEN: first 8 bytes of SHA-256("master|label|index"), big-endian.
        assert trial_seed(0, "4.2a", 0) == 7428898626957316598
        assert trial_seed(7, "4.2a", 3) == 10255783800318820332
        assert trial_seed(7, "4.1a", 3) == 15385862573357699354

    def test_matches_documented_formula(self):
        digest = hashlib.sha256(b"11|4.8a|5").digest()
        assert trial_seed(11, "4.8a", 5) == int.from_bytes(digest[:8], "big")

    def test_distinct_across_coordinates(self):
        seeds = {trial_seed(m, lbl, i)
                 for m in (0, 1) for lbl in ("4.1a", "4.2a") for i in range(4)}
        assert len(seeds) == 16


# ---------------------------------------------------------------------------
# theorem registry
# ---------------------------------------------------------------------------


class TestRegistry:
    def test_labels(self):
        assert set(THEOREMS) == {"3.1-bound", "4.1a", "4.1b", "4.2a", "4.2b",
                                 "4.2c", "4.4", "4.5", "4.8a", "4.8b", "4.8c",
                                 "4.8-modular"}

    def test_modular_flags(self):
        modular = {lbl for lbl, t in THEOREMS.items() if t.modular}
        assert modular == {"4.2a", "4.2b", "4.2c", "4.8-modular"}

    def test_oriented_flags(self):
        oriented = {lbl for lbl, t in THEOREMS.items() if t.oriented}
        assert oriented == {"3.1-bound", "4.1b", "4.2c", "4.8a", "4.8b",
                            "4.8c", "4.8-modular"}

    def test_assertion_windows(self):
        assert THEOREMS["4.1a"].asserts(7) and not THEOREMS["4.1a"].asserts(8)
        assert THEOREMS["4.1b"].asserts(5) and not THEOREMS["4.1b"].asserts(6)
        assert THEOREMS["4.8a"].asserts(5) and not THEOREMS["4.8a"].asserts(6)
        assert THEOREMS["4.8b"].asserts(7) and not THEOREMS["4.8b"].asserts(8)
        assert THEOREMS["4.2a"].asserts(12)
        assert not THEOREMS["3.1-bound"].asserts(2)

    def test_unknown_label(self):
        with pytest.raises(LabError, match="unknown theorem"):
            CheckSpec("4.99", 2).validate()

    def test_fixed_n(self):
        with pytest.raises(LabError, match="only for"):
            CheckSpec("4.4", 4, 2).validate()
        CheckSpec("4.4", 3, 2).validate()

    def test_type1_families_pin_k(self):
        with pytest.raises(LabError, match="type-1"):
            CheckSpec("4.1a", 3, 2).validate()
        with pytest.raises(LabError, match="type-1"):
            CheckSpec("4.8a", 3, 2).validate()

    def test_parallel_families_pin_k(self):
        with pytest.raises(LabError, match="type-2"):
            CheckSpec("4.4", 3, 1).validate()
        with pytest.raises(LabError, match="type-2"):
            CheckSpec("4.8c", 3, 1).validate()

    def test_generalized_families_accept_any_k(self):
        CheckSpec("4.2a", 3, 2).validate()
        CheckSpec("4.8-modular", 2, 3).validate()

    def test_spec_json_roundtrip(self):
        spec = CheckSpec("4.2b", 2, 1, 5, 2, 9, 42)
        assert CheckSpec.from_json(spec.to_json()) == spec


# ---------------------------------------------------------------------------
# run_check: counts, schema, determinism
# ---------------------------------------------------------------------------


SMALL = CheckSpec("4.2a", 4, 1, 4, 2, 4, 7)


class TestRunCheck:
    def test_counts_and_modulus(self):
        rep = run_check(SMALL)
        assert rep.theorem == "4.2a"
        assert rep.asserting is True
        assert rep.n_star == radical(4) == 2
        assert rep.counts["total"] == 4
        assert rep.counts["equal"] + rep.counts["unequal"] \
            + rep.counts["skipped"] == 4
        assert rep.passed
        assert len(rep.trials) == 4
        assert [t.index for t in rep.trials] == [0, 1, 2, 3]

    def test_trial_records_carry_replay_data(self):
        rep = run_check(SMALL)
        for t in rep.trials:
            assert t.seed == trial_seed(7, "4.2a", t.index)
            if t.status == "ok":
                assert t.modulus == 2
                assert "bracket" in t.invariants
                assert "left_reduced" in t.invariants["bracket"]
                assert "crossings" in t.instance["rotor"]
                assert "crossings" in t.instance["stator"]

    def test_report_bytes_stable_across_runs(self):
        a = run_check(SMALL).json_bytes()
        b = run_check(SMALL).json_bytes()
        assert a == b

    def test_report_bytes_stable_across_workers(self):
        a = run_check(SMALL).json_bytes()
        c = run_check(SMALL, workers=2).json_bytes()
        assert a == c

    def test_seed_changes_report(self):
        other = CheckSpec("4.2a", 4, 1, 4, 2, 4, 8)
        assert run_check(SMALL).json_bytes() != run_check(other).json_bytes()

    def test_canonical_json_form(self):
        raw = run_check(SMALL).json_bytes()
        assert raw.endswith(b"\n")
        obj = json.loads(raw)
        assert obj["schema"] == "rotorlab.report/1"
        assert obj["axis"] == AXIS == 3
        assert obj["offset"] == 0
        assert "wall_time" not in obj
        assert raw == report_json_bytes(obj)

    def test_oriented_trials_record_writhe_safe_invariants(self):
        rep = run_check(CheckSpec("4.2c", 2, 1, 4, 1, 2, 5))
        for t in rep.trials:
            if t.status == "ok":
                assert set(t.invariants) == {"homfly", "kauffman_f",
                                             "conway", "jones"}

    def test_resource_guard_skips_not_fails(self, monkeypatch):
        def explode(d):
            raise ResourceError("node budget exhausted")
        monkeypatch.setitem(lab._INVARIANTS, "bracket", explode)
        rep = run_check(SMALL)
        assert rep.counts["skipped"] == 4
        assert rep.counts["unequal"] == 0
        assert rep.passed
        assert all("resource guard" in t.note for t in rep.trials)

    def test_asserted_inequality_fails_report(self, monkeypatch):
        def unequal(tag, left, right, modulus):
            return {"left": "0", "right": "1", "equal": False}
        monkeypatch.setattr(lab, "_compare", unequal)
        rep = run_check(SMALL)
        assert rep.counts["unequal"] == 4
        assert not rep.passed
        assert rep.findings == (0, 1, 2, 3)
        assert "FAIL" in rep.summary()
        for t in rep.trials:
            assert "left" in t.instance and "right" in t.instance

    def test_unasserted_inequality_reported_not_failed(self, monkeypatch):
        def unequal(tag, left, right, modulus):
            return {"left": "0", "right": "1", "equal": False}
        monkeypatch.setattr(lab, "_compare", unequal)
        rep = search_counterexample(4, budget=3, trials=2, seed=3)
        assert rep.counts["unequal"] == 2
        assert rep.findings == (0, 1)
        assert rep.passed
        assert "REPORTED" in rep.summary()


# ---------------------------------------------------------------------------
# satellite and search runners
# ---------------------------------------------------------------------------


class TestSatelliteRunner:
    def test_jones_ratio_recorded_every_trial(self):
        rep = run_satellite_check(SatelliteSpec("2-cable", twists=1),
                                  trials=3, seed=9)
        assert rep.theorem == "4.5"
        assert rep.passed
        for t in rep.trials:
            if t.status == "ok":
                assert t.jones_ratio is not None
                parse_poly(t.jones_ratio, ("A",))
                assert t.invariants["bracket"]["equal"]
                assert "satellite" in t.instance
                assert t.instance["satellite"]["pattern"] == "2-cable"

    def test_whitehead_runner(self):
        rep = run_satellite_check(SatelliteSpec("whitehead", clasp_sign=-1),
                                  trials=2, seed=4)
        assert rep.passed
        for t in rep.trials:
            if t.status == "ok":
                assert t.instance["sites"]

    def test_unknown_pattern(self):
        with pytest.raises(LabError, match="pattern"):
            run_satellite_check(SatelliteSpec("3-cable"), trials=1, seed=0)


class TestSearch:
    def test_structure(self):
        rep = search_counterexample(6, budget=4, trials=3, seed=1,
                                    invariant="jones")
        assert rep.theorem == "search/jones"
        assert rep.asserting is False
        assert rep.n_star is None
        for t in rep.trials:
            if t.status == "ok":
                assert set(t.invariants) == {"jones"}

    def test_unknown_invariant(self):
        with pytest.raises(LabError, match="unknown invariant"):
            search_counterexample(3, budget=2, trials=1, seed=0,
                                  invariant="alexander-briggs")

    def test_deterministic(self):
        a = search_counterexample(5, budget=3, trials=3, seed=2).json_bytes()
        b = search_counterexample(5, budget=3, trials=3, seed=2).json_bytes()
        assert a == b


class TestSensitivity:
    def test_variants_recorded(self):
        rep = orientation_sensitivity(2, trials=2, seed=5, budget=3)
        assert rep.asserting is True
        assert rep.passed
        for t in rep.trials:
            if t.status == "ok":
                for tag in ("homfly", "kauffman_f", "conway"):
                    entry = t.invariants[tag]
                    assert entry["baseline"]["equal"]
                    assert entry["all_reversed"]["equal"]
                    assert set(entry) <= {"baseline", "all_reversed", "mixed"}

    def test_large_n_never_asserts(self):
        rep = orientation_sensitivity(6, trials=1, seed=5, budget=2)
        assert rep.asserting is False
        assert rep.passed


# ---------------------------------------------------------------------------
# assembly bookkeeping
# ---------------------------------------------------------------------------


def _record(index, equal, status="ok"):
    return TrialRecord(index=index, seed=index, status=status, equal=equal,
                       modulus=None, invariants={}, instance={})


class TestAssembly:
    def test_findings_follow_unequal_indices(self):
        records = [_record(0, True), _record(1, False),
                   _record(2, None, "skipped"), _record(3, False)]
        rep = lab._assemble("4.1a", CheckSpec("4.1a", 2), True, None,
                            records, 0.0)
        assert rep.counts == {"total": 4, "equal": 1, "unequal": 2,
                              "skipped": 1}
        assert rep.findings == (1, 3)
        assert not rep.passed

    def test_non_asserting_never_fails(self):
        rep = lab._assemble("3.1-bound", CheckSpec("3.1-bound", 9), False,
                            None, [_record(0, False)], 0.0)
        assert rep.passed


# ---------------------------------------------------------------------------
# command-line interface
# ---------------------------------------------------------------------------


TREFOIL_PD = "X[1,2,4,3] X[3,4,6,5] X[5,6,2,1]"


class TestCLI:
    def test_verify_writes_canonical_report(self, tmp_path, capsys):
        out = tmp_path / "report.json"
        code = cli_main(["verify", "--theorem", "4.2a", "--n", "4",
                         "--k", "1", "--budget", "4", "--trials", "3",
                         "--seed", "7", "--out", str(out)])
        assert code == 0
        assert "PASS" in capsys.readouterr().out
        expected = run_check(CheckSpec("4.2a", 4, 1, 4, 2, 3, 7)).json_bytes()
        assert out.read_bytes() == expected

    def test_verify_quiet(self, capsys):
        code = cli_main(["verify", "--theorem", "4.1a", "--n", "2",
                         "--budget", "2", "--trials", "1", "--quiet"])
        assert code == 0
        assert capsys.readouterr().out == ""

    def test_verify_exit_1_on_assertion_failure(self, monkeypatch, capsys):
        def unequal(tag, left, right, modulus):
            return {"left": "0", "right": "1", "equal": False}
        monkeypatch.setattr(lab, "_compare", unequal)
        code = cli_main(["verify", "--theorem", "4.1a", "--n", "2",
                         "--budget", "2", "--trials", "1"])
        assert code == 1
        assert "FAIL" in capsys.readouterr().out

    def test_usage_errors_exit_2(self, capsys):
        assert cli_main(["verify", "--theorem", "4.99", "--n", "2"]) == 2
        assert cli_main(["verify", "--theorem", "4.4", "--n", "5",
                         "--k", "2"]) == 2
        assert cli_main(["bracket", "/nonexistent/file.pd"]) == 2
        err = capsys.readouterr().err
        assert "rotorlab: error" in err

    def test_satellite_pattern_flag(self, tmp_path):
        out = tmp_path / "sat.json"
        code = cli_main(["verify", "--theorem", "4.5", "--n", "3",
                         "--pattern", "whitehead", "--clasp-sign", "-1",
                         "--trials", "2", "--seed", "3", "--budget", "1",
                         "--fundamental-budget", "1", "--quiet",
                         "--out", str(out)])
        assert code == 0
        obj = json.loads(out.read_bytes())
        ok = [t for t in obj["trials"] if t["status"] == "ok"]
        assert ok and all("jones_ratio" in t for t in ok)

    def test_pattern_flag_needs_45(self, capsys):
        code = cli_main(["verify", "--theorem", "4.1a", "--n", "2",
                         "--pattern", "2-cable", "--trials", "1"])
        assert code == 2
        assert "4.5" in capsys.readouterr().err

    def test_search_exit_0(self, capsys):
        code = cli_main(["search", "--n", "6", "--invariant", "jones",
                         "--trials", "2", "--seed", "1", "--budget", "3"])
        assert code == 0
        assert "REPORTED" in capsys.readouterr().out

    def test_sensitivity_command(self, capsys):
        code = cli_main(["sensitivity", "--n", "2", "--trials", "1",
                         "--seed", "5", "--budget", "2"])
        assert code == 0
        assert "PASS" in capsys.readouterr().out

    def test_invariant_commands_match_library(self, tmp_path, capsys):
        pd = tmp_path / "trefoil.pd"
        pd.write_text(TREFOIL_PD)
        d = from_pd_text(TREFOIL_PD)
        assert cli_main(["bracket", str(pd)]) == 0
        assert capsys.readouterr().out.strip() == str(bracket(d).poly)
        assert cli_main(["homfly", str(pd)]) == 0
        assert capsys.readouterr().out.strip() == str(homfly(orient(d)).poly)

    def test_invariant_json_output(self, tmp_path, capsys):
        pd = tmp_path / "trefoil.pd"
        pd.write_text(TREFOIL_PD)
        assert cli_main(["jones", str(pd), "--json"]) == 0
        obj = json.loads(capsys.readouterr().out)
        assert obj["invariant"] == "jones"
        poly = poly_from_json(obj["poly"])
        assert str(poly) == obj["text"]

    def test_invariant_accepts_diagram_json(self, tmp_path, capsys):
        d = braid_closure([1, 1], 2)
        f = tmp_path / "hopf.json"
        from rotorlab.diagram import diagram_to_json
        f.write_text(json.dumps(diagram_to_json(d)))
        assert cli_main(["bracket", str(f)]) == 0
        assert capsys.readouterr().out.strip() == str(bracket(d).poly)

    def test_invariant_cache_flag(self, tmp_path, capsys):
        pd = tmp_path / "trefoil.pd"
        pd.write_text(TREFOIL_PD)
        cache = tmp_path / "cache.log"
        assert cli_main(["bracket", str(pd), "--cache", str(cache)]) == 0
        first = capsys.readouterr().out
        assert cache.exists() and cache.stat().st_size > 0
        assert cli_main(["bracket", str(pd), "--cache", str(cache)]) == 0
        assert capsys.readouterr().out == first

    def test_tangle_input_is_usage_error(self, tmp_path, capsys):
        from rotorlab.diagram import diagram_to_json, tangle
        f = tmp_path / "tangle.json"
        f.write_text(json.dumps(diagram_to_json(tangle([], (1, 1)))))
        assert cli_main(["bracket", str(f)]) == 2

    def test_rotor_build_and_rotant_roundtrip(self, tmp_path, capsys):
        from rotorlab.diagram import (canonical_key, diagram_from_json,
                                      diagram_to_json)
        from rotorlab.rotor import RotorSpec, crossing_fundamental
        spec = tmp_path / "rotor.json"
        spec.write_text(json.dumps(RotorSpec(3, 1,
                                             crossing_fundamental()).to_json()))
        assert cli_main(["rotor", "build", str(spec)]) == 0
        rotor = diagram_from_json(json.loads(capsys.readouterr().out))
        assert len(rotor.crossings) == 3
        assert len(rotor.boundary) == 6
        assert cli_main(["rotor", "rotant", str(spec)]) == 0
        rotant = diagram_from_json(json.loads(capsys.readouterr().out))
        # flipping twice about the same axis restores the rotor exactly
        inst = tmp_path / "flipped.json"
        inst.write_text(json.dumps({**diagram_to_json(rotant),
                                    "n": 3, "k": 1}))
        assert cli_main(["rotor", "rotant", str(inst)]) == 0
        back = diagram_from_json(json.loads(capsys.readouterr().out))
        assert canonical_key(back) == canonical_key(rotor)
        assert back == rotor

    def test_rotor_compose_emits_pd_text(self, tmp_path, capsys):
        from rotorlab.rotor import RotorSpec, crossing_fundamental
        inst = tmp_path / "instance.json"
        inst.write_text(json.dumps({
            "rotor": RotorSpec(3, 1, crossing_fundamental()).to_json(),
            "stator": {"kind": "arbitrary", "m": 6, "budget": 2, "seed": 5},
        }))
        assert cli_main(["rotor", "compose", str(inst)]) == 0
        closed = from_pd_text(capsys.readouterr().out.strip())
        assert closed.boundary == ()
        assert len(closed.crossings) >= 3

    def test_rotor_cable(self, tmp_path, capsys):
        inst = tmp_path / "cable.json"
        inst.write_text(json.dumps({
            "base": TREFOIL_PD,
            "satellite": {"pattern": "whitehead", "clasp_sign": 1},
        }))
        assert cli_main(["rotor", "cable", str(inst)]) == 0
        doubled = from_pd_text(capsys.readouterr().out.strip())
        assert len(doubled.crossings) == 4 * 3 + 2

    def test_rotor_parallel_build(self, tmp_path, capsys):
        inst = tmp_path / "parallel.json"
        inst.write_text(json.dumps({
            "parallel": {"pairing": [[0, 3], [1, 4], [2, 5]],
                         "chirality": 1, "twists": [0, 0, 0]}}))
        assert cli_main(["rotor", "build", str(inst)]) == 0
        from rotorlab.diagram import diagram_from_json
        rotor = diagram_from_json(json.loads(capsys.readouterr().out))
        assert len(rotor.boundary) == 12
        assert len(rotor.crossings) == 12
