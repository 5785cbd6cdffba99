import csv
import io
import json
import subprocess
import sys

import pytest

from qesdot.cli import RunConfig, main, parse_json_solutions, scan_rows
from qesdot.spectrum import qes_point
from qesdot.units import derive_scales, material


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_solve_gaas_ground():
    code, text = run("solve", "-j", "1", "-m", "0", "--material", "gaas", "--omega0-mev", "4")
    assert code == 0
    (row,) = rows(text)
    assert float(row["b_tesla"]) == pytest.approx(5.065, rel=1e-3)
    assert row["status"] == "ok"


def test_solve_weak_confinement_two_rows():
    code, text = run("solve", "-j", "3", "-m", "0", "--material", "gaas", "--omega0-mev", "0.5")
    r = rows(text)
    assert code == 0
    assert [x["n_r"] for x in r] == ["0", "1"]


def test_solve_weak_confinement_both_feasible():
    code, text = run("solve", "-j", "3", "-m", "0", "--omega0-mev", "0.2")
    assert code == 0 and [x["status"] for x in rows(text)] == ["ok", "ok"]


def test_solve_no_field_exit_2():
    code, text = run("solve", "-j", "1", "-m", "1", "--material", "gaas", "--omega0-mev", "4")
    assert code == 2
    assert rows(text)[0]["status"] == "no-qes-field"


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "-j", "0", "-m", "0"],
        ["solve", "-j", "1", "--material", "nope"],
        ["solve", "-j", "1", "--mstar", "0.067"],
        ["solve", "-j", "1", "--mode", "bogus"],
        ["solve"],
        ["solve", "-j", "1", "--epsilon", "0.5", "--mstar", "0.1"],
        ["scan", "-j", "1", "--mode", "paper"],
    ],
)
def test_invalid_input_exit_3(argv):
    assert run(*argv)[0] == 3


def test_json_roundtrip():
    code, text = run("solve", "-j", "3", "-m", "1", "--omega0-mev", "0.1", "--format", "json")
    sols = parse_json_solutions(text)
    params = material("gaas", 0.1)
    assert sols == [qes_point(3, 1, n, params) for n in range(2)]
    data = json.loads(text)
    assert {"j", "m", "n_r", "eta", "omega_ha", "omega_c_ha", "b_tesla", "e_r_ha",
            "dot_size_nm", "coeffs"} <= set(data[0])


def test_csv_uses_6g():
    _, text = run("solve", "-j", "1", "-m", "0")
    assert rows(text)[0]["omega_c_ha"] == format(qes_point(1, 0, 0, material("gaas", 4)).omega_c_ha, ".6g")


def test_custom_material_flags():
    code, text = run("solve", "-j", "1", "--mstar", "0.067", "--epsilon", "12.4", "--omega0-mev", "4")
    assert code == 0 and float(rows(text)[0]["b_tesla"]) == pytest.approx(5.065, rel=1e-3)


def test_config_file_and_override(tmp_path):
    cfg = tmp_path / "dot.cfg"
    cfg.write_text("# GaAs, weak dot\nmaterial = gaas\nomega0_meV = 0.5\nmode=physical\n")
    code, text = run("solve", "-j", "3", "--config", str(cfg))
    assert [x["status"] for x in rows(text)] == ["no-qes-field", "ok"]
    code, text = run("solve", "-j", "3", "--config", str(cfg), "--omega0-mev", "0.1")
    assert [x["status"] for x in rows(text)] == ["ok", "ok"]


def test_bad_config_file(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("colour = blue\n")
    assert run("solve", "-j", "1", "--config", str(cfg))[0] == 3
    assert run("solve", "-j", "1", "--config", str(tmp_path / "missing.cfg"))[0] == 3


def test_paper_table_rows():
    code, text = run("table", "--mode", "paper")
    r = rows(text)
    assert code == 0 and len(r) == 27
    assert list(r[0]) == ["j", "m", "n_r", "omega_c", "e_r"]
    got = {(x["j"], x["m"], x["n_r"]): x for x in r}
    assert float(got["1", "1", "0"]["omega_c"]) == pytest.approx(0.623318, abs=5e-6)
    assert float(got["1", "1", "0"]["e_r"]) == pytest.approx(1.246710, abs=5e-6)
    assert float(got["4", "0", "1"]["omega_c"]) == pytest.approx(0.240664, abs=5e-6)
    assert float(got["2", "0", "0"]["omega_c"]) == pytest.approx(0.311582, abs=5e-6)


def test_paper_mode_ignores_material():
    a = run("table", "--mode", "paper", "--material", "gaas", "--omega0-mev", "9")[1]
    b = run("table", "--mode", "paper", "--mstar", "0.2", "--epsilon", "3")[1]
    assert a == b


def test_physical_table_flags_infeasible():
    code, text = run("table", "--omega0-mev", "4", "--jmax", "2", "--mmax", "1")
    r = rows(text)
    assert code == 0
    assert [x["status"] for x in r] == ["ok", "no-qes-field", "no-qes-field", "no-qes-field"]
    assert float(r[0]["omega_c"]) == pytest.approx(8.751, rel=1e-3)


def test_verify_pass():
    code, text = run("verify", "-j", "1", "-m", "0")
    (row,) = rows(text)
    assert code == 0 and row["result"] == "PASS" and float(row["abs_diff"]) < 1e-6


def test_verify_j5_m2_all_branches():
    code, text = run("verify", "-j", "5", "-m", "2")
    assert code == 0
    assert [x["result"] for x in rows(text)] == ["PASS"] * 3


def test_scan_flags_one_row():
    code, text = run("scan", "-j", "1", "-m", "0", "--omega0-mev", "4",
                     "--b-min", "4.5", "--b-max", "5.5", "--b-steps", "21")
    r = rows(text)
    assert code == 0 and len(r) == 21
    flagged = [x for x in r if x["qes"] == "true"]
    assert len(flagged) == 1
    assert abs(float(flagged[0]["b_tesla"]) - 5.065) <= 0.025
    # at the flagged row the ground level sits close to the exact QES energy
    assert float(flagged[0]["eps_0_mev"]) == pytest.approx(11.857, rel=1e-2)


def test_scan_empty_range():
    code, text = run("scan", "-j", "1", "--b-min", "3", "--b-max", "2", "--b-steps", "5")
    assert code == 0 and rows(text) == []
    code, text = run("scan", "-j", "1", "--b-steps", "0")
    assert code == 0 and rows(text) == []


def test_scan_smooth_and_order_independent():
    cfg = RunConfig(omega0_meV=4.0)
    params = material("gaas", 4.0)
    ha = derive_scales(params).hartree_meV
    forward = scan_rows(1, 1, 0.0, 6.0, 13, cfg)
    step = 0.5
    for a, b in zip(forward, forward[1:]):
        # dE/dw <= E/w (virial bound), dw/dB <= d(wc/2)/dB
        dw_db = (b["omega_c_mev"] - a["omega_c_mev"]) / step / 2
        for n in range(4):
            key = f"eps_{n}_mev"
            bound = max(a[key], b[key]) / a["omega_mev"] * dw_db
            assert abs(b[key] - a[key]) < 10 * step * bound
    single = [scan_rows(1, 1, r["b_tesla"], r["b_tesla"], 1, cfg)[0] for r in reversed(forward)]
    for r, s in zip(reversed(forward), single):
        assert [r[f"eps_{n}_mev"] for n in range(4)] == [s[f"eps_{n}_mev"] for n in range(4)]


def test_constants_command():
    code, text = run("constants", "--format", "json")
    names = {d["name"]: d for d in json.loads(text)}
    assert code == 0
    assert names["table_lambda_sq"]["value"] == 0.9350545
    assert "CODATA" in names["hartree_mev"]["source"]


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "qesdot", "verify", "-j", "0"], capture_output=True, text=True)
    assert res.returncode == 3
