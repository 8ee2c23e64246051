import csv
import io
import json

import pytest

import podolsky
from podolsky.cli import COMMANDS, DEFAULTS, run


def invoke(*argv):
    out, err = io.StringIO(), io.StringIO()
    status = run(list(argv), stdout=out, stderr=err)
    return status, out.getvalue(), err.getvalue()


def report(*argv):
    status, out, err = invoke(*argv)
    assert status == 0, err
    return json.loads(out)


def test_constants_json():
    doc = report("constants")
    assert doc["results"]["hbar_c"] == pytest.approx(197.3269804)
    assert doc["provenance"]["constants_version"] == "CODATA-2018"


def test_bessel_csv():
    status, out, _ = invoke("bessel", "--x", "1", "800")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert float(rows[0]["i0"]) == pytest.approx(1.26606587775)
    assert rows[1]["i0"] == "inf" and float(rows[1]["i0_scaled"]) > 0


def test_bessel_repeated_x_accumulates():
    _, out, _ = invoke("bessel", "--x", "0.5", "--x", "2")
    assert [float(r["x"]) for r in csv.DictReader(io.StringIO(out))] == [0.5, 2.0]


def test_mass():
    doc = report("mass", "--a", "0.033cm")
    assert doc["results"]["mass_kg"] == pytest.approx(1.06e-39, rel=1e-2)
    assert doc["config"]["a"] == "0.033cm"


def test_sweep_default_axes():
    status, out, _ = invoke("sweep", "--beam", "H+")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 10_000
    eps = sorted({float(r["epsilon"]) for r in rows})
    phi = sorted({float(r["delta_phi_rad"]) for r in rows})
    assert eps[0] == pytest.approx(0.001) and eps[-1] == pytest.approx(0.999)
    assert phi[0] == pytest.approx(1e-4) and phi[-1] == pytest.approx(1e-2)
    assert list(rows[0]) == ["epsilon", "delta_phi_rad", "a_m", "status"]


def test_profile_first_row():
    status, out, _ = invoke("profile", "--beam", "H+", "--a", "0.069cm", "--epsilon", "0.5",
                            "--samples", "100", "--v-total", "4e5")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 100
    assert list(rows[0]) == ["r_m", "phi_V", "E_V_per_m"]
    assert float(rows[0]["r_m"]) == 0.0
    assert float(rows[0]["phi_V"]) == pytest.approx(0.5 * 4e5, rel=1e-12)


def test_point_charge_profile():
    status, out, _ = invoke("profile", "--a", "2fm", "--point-charge", "--samples", "5")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert float(rows[0]["phi_per_fm"]) == pytest.approx(-0.5)


def test_estimate_and_phase():
    doc = report("estimate", "--beam", "H+", "--delta-phi", "1e-2", "--one-minus-epsilon", "1e-8")
    assert doc["results"]["a_cm"] == pytest.approx(0.069, rel=0.03)
    doc = report("phase", "--beam", "Cs+", "--a", "0.05cm", "--epsilon", "0.5")
    assert doc["results"]["delta_phi_rad"] > 0


def test_hydrogen_modes():
    bound = report("hydrogen", "--sigma-rel", "8.83e-8")["results"]
    assert bound["a_max_fm"] == pytest.approx(5.56, rel=5e-3)
    prof = report("hydrogen", "--a", "5.56fm")["results"]
    assert prof["E_star_eV"] == pytest.approx(-13.6057, abs=1e-3)
    assert prof["E_star_quadrature_eV"] == pytest.approx(prof["E_star_eV"], rel=1e-8)
    status, out, _ = invoke("hydrogen", "--a", "5fm", "--format", "csv")
    assert status == 0 and out.startswith("mode,")


def test_oracle_outputs():
    status, out, _ = invoke("oracle", "--a", "2.7cm", "--epsilon", "0.5", "--steps", "2000")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert list(rows[0]) == ["r_m", "phi_numeric_V", "phi_closed_V", "rel_err"]
    assert max(float(r["rel_err"]) for r in rows) < 1e-6
    doc = report("oracle", "--a", "2.7cm", "--epsilon", "0.5", "--steps", "2000", "--format", "json")
    assert doc["results"]["reduction_rel_err"] < 1e-12
    assert doc["results"]["helmholtz_residual_k0"] < 1e-6


def test_byte_identical_reruns(tmp_path):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"beam": "Cs+", "n_epsilon": 7, "n_phi": 5, "format": "json"}))
    first = invoke("sweep", "--config", str(cfg))
    second = invoke("sweep", "--config", str(cfg))
    assert first[0] == 0 and first[1] == second[1]
    assert json.loads(first[1])["config"]["beam"] == "Cs+"


def test_flags_override_config(tmp_path):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"a": "1cm"}))
    doc = report("mass", "--config", str(cfg), "--a", "2cm")
    assert doc["results"]["a_m"] == pytest.approx(0.02)


def test_unknown_config_key_rejected(tmp_path):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"a": "1cm", "colour": "blue"}))
    status, _, err = invoke("mass", "--config", str(cfg))
    assert status == 1 and "colour" in err


def test_output_file(tmp_path):
    target = tmp_path / "m.json"
    status, out, _ = invoke("mass", "--a", "1mm", "-o", str(target))
    assert status == 0 and out == ""
    assert json.loads(target.read_text())["results"]["a_m"] == pytest.approx(1e-3)


@pytest.mark.parametrize("argv", [[], ["mass"], ["nope"], ["mass", "--a", "1cm", "--bogus"],
                                  ["estimate", "--delta-phi", "1e-2"]])
def test_usage_errors_exit_1(argv):
    assert invoke(*argv)[0] == 1


@pytest.mark.parametrize("argv", [
    ["estimate", "--delta-phi", "1e-2", "--one-minus-epsilon", "1e-300"],
    ["mass", "--a=-1cm"],
    ["hydrogen", "--sigma-rel", "-1"],
    ["profile", "--a", "1cm", "--epsilon", "2"],
])
def test_domain_errors_exit_2(argv):
    status, _, err = invoke(*argv)
    assert status == 2 and err


def test_dispatch_covers_every_operation():
    operations = {
        "length_to_inverse_energy", "PhysicalConstants",
        "bessel_i0", "bessel_i1", "bessel_k0", "bessel_k1",
        "bessel_i0_scaled", "bessel_i1_scaled", "bessel_k0_scaled", "bessel_k1_scaled",
        "cylinder_potential", "cylinder_field", "general_solution_value", "point_charge_potential",
        "integrate_radial", "check_modified_helmholtz",
        "phase_difference", "phase_difference_asymptotic", "estimate_a", "photon_mass", "sweep",
        "energy", "energy_quadrature", "stationarity_roots", "minimize", "bound_a",
    }
    reachable = {op for _, ops in COMMANDS.values() for op in ops}
    assert operations <= reachable
    assert all(hasattr(podolsky, op) for op in reachable)
    assert set(COMMANDS) == set(DEFAULTS)
