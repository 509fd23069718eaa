import json

import pytest

from gaussdisp.cli import main
from gaussdisp.species import forward_row
from gaussdisp.quantities import Energy


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def read_csv(path):
    lines = path.read_text().split("\n")
    assert lines[-1] == ""
    header = lines[0].split(",")
    return header, [dict(zip(header, line.split(","))) for line in lines[1:-1]]


class TestSweep:
    def test_zero_polarizability(self, tmp_path, capsys):
        out = tmp_path / "s.csv"
        code, _, _ = run(capsys, "sweep", "--alpha0", "0", "--omega0", "10", "--a", "1",
                         "--rho-min", "0", "--rho-max", "4", "--points", "5", "--out", str(out))
        assert code == 0
        header, rows = read_csv(out)
        assert header[:3] == ["rho_bohr", "t", "U_eV"]
        assert "sym_z" in header and "anti_x" in header
        assert len(rows) == 5 and all(float(r["U_eV"]) == 0.0 for r in rows)

    def test_helium_cp(self, tmp_path, capsys):
        out = tmp_path / "he.csv"
        code, _, _ = run(capsys, "sweep", "--species", "He", "--quantity", "cp", "--rho-min", "0.01",
                         "--rho-max", "30", "--points", "40", "--log", "--out", str(out))
        assert code == 0
        _, rows = read_csv(out)
        assert float(rows[0]["U_eV"]) == pytest.approx(29.06, rel=5e-3)
        last = float(rows[-1]["U_eV"])
        # He inverted: hbar*omega0 = 28.10 eV, g = 131.53/28.10, a = 1 bohr
        alpha0 = 131.53 / 28.10 * 3.141592653589793 ** 0.5
        london = -0.75 * 28.10 * alpha0**2 / 30.0**6
        assert last < 0 and last == pytest.approx(london, rel=1e-2)

    def test_point_modes_needs_positive_rho(self, capsys):
        code, _, err = run(capsys, "sweep", "--species", "He", "--quantity", "point-modes",
                           "--rho-min", "0", "--rho-max", "3")
        assert code == 2 and "rho-min" in err

    def test_point_modes(self, tmp_path, capsys):
        out = tmp_path / "pm.csv"
        code, _, _ = run(capsys, "sweep", "--alpha0", "1", "--omega0", "1", "--a", "1",
                         "--quantity", "point-modes", "--rho-min", "0.5", "--rho-max", "3",
                         "--points", "6", "--out", str(out))
        assert code == 0
        _, rows = read_csv(out)
        assert rows[0]["real_modes"] == "3" and rows[-1]["real_modes"] == "6"

    @pytest.mark.parametrize("quantity", ["cp-truncated", "res-x", "res-z", "self-energy"])
    def test_other_quantities(self, capsys, quantity):
        code, out, _ = run(capsys, "sweep", "--species", "Ar", "--quantity", quantity,
                           "--rho-min", "0", "--rho-max", "5", "--points", "4")
        assert code == 0 and len(out.splitlines()) == 5

    def test_quadrature_method_agrees(self, tmp_path, capsys):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        common = ["sweep", "--species", "Kr", "--quantity", "res-z", "--rho-min", "0.1",
                  "--rho-max", "10", "--points", "7", "--log"]
        assert run(capsys, *common, "--out", str(a))[0] == 0
        assert run(capsys, *common, "--method", "quadrature", "--out", str(b))[0] == 0
        for ra, rb in zip(read_csv(a)[1], read_csv(b)[1]):
            assert float(rb["U_eV"]) == pytest.approx(float(ra["U_eV"]), rel=1e-6, abs=1e-9)

    @pytest.mark.parametrize("argv", [
        ["--rho-min", "2", "--rho-max", "1"],
        ["--rho-min", "0", "--rho-max", "1", "--log"],
        ["--rho-min", "0", "--rho-max", "1", "--points", "1"],
        ["--rho-min", "0", "--rho-max", "1", "--points", "1000000"],
        ["--rho-min", "0"],
    ])
    def test_invalid_ranges(self, capsys, argv):
        assert run(capsys, "sweep", "--species", "He", *argv)[0] == 2

    def test_unknown_species(self, capsys):
        assert run(capsys, "sweep", "--species", "Xe", "--rho-min", "0", "--rho-max", "1")[0] == 2

    def test_bad_quantity_is_usage_error(self, capsys):
        with pytest.raises(SystemExit) as info:
            main(["sweep", "--species", "He", "--quantity", "nope"])
        assert info.value.code == 2

    def test_species_file(self, tmp_path, capsys):
        path = tmp_path / "sp.json"
        path.write_text(json.dumps([{"name": "X", "alpha0_bohr3": 2.0, "omega0_eV": 10.0,
                                     "a_bohr": 1.5}]))
        code, out, _ = run(capsys, "sweep", "--species-file", str(path), "--rho-min", "0",
                           "--rho-max", "2", "--points", "3")
        assert code == 0 and out.startswith("rho_bohr,t,U_eV")

    def test_missing_species_file(self, tmp_path, capsys):
        code, _, _ = run(capsys, "sweep", "--species-file", str(tmp_path / "none.json"),
                         "--rho-min", "0", "--rho-max", "2")
        assert code == 3

    def test_unwritable_output(self, tmp_path, capsys):
        code, _, _ = run(capsys, "sweep", "--species", "He", "--rho-min", "0", "--rho-max", "2",
                         "--out", str(tmp_path / "missing" / "x.csv"))
        assert code == 3

    def test_deterministic(self, tmp_path, capsys):
        paths = [tmp_path / f"{i}.csv" for i in range(3)]
        for p in paths:
            run(capsys, "sweep", "--species", "Ne", "--rho-min", "0.001", "--rho-max", "30",
                "--points", "64", "--log", "--out", str(p))
        blobs = [p.read_bytes() for p in paths]
        assert blobs[0] == blobs[1] == blobs[2]
        assert b"\r" not in blobs[0]


class TestTable:
    def test_builtin(self, capsys):
        code, out, err = run(capsys, "table")
        assert "He" in out and "Kr" in out
        # Ne cannot be reproduced within 0.5% (see README); the rest can.
        assert code == 5 and "Ne" in err and "He" not in err

    def test_consistent_file_passes(self, tmp_path, capsys):
        rows = [forward_row("A", Energy.from_ev(10.0), 2.0), forward_row("B", Energy.from_ev(20.0), 5.0)]
        path = tmp_path / "t.json"
        path.write_text(json.dumps([{"element": r.element, **r.values()} for r in rows]))
        assert run(capsys, "table", "--table-file", str(path))[0] == 0

    def test_perturbed_file(self, tmp_path, capsys):
        r = forward_row("A", Energy.from_ev(10.0), 2.0)
        rec = {"element": "A", **r.values()}
        rec["u_s_full"] *= 1.05
        path = tmp_path / "t.json"
        path.write_text(json.dumps([rec]))
        code, _, err = run(capsys, "table", "--table-file", str(path))
        assert code == 5 and "u_s_full" in err

    def test_empty_file(self, tmp_path, capsys):
        path = tmp_path / "t.json"
        path.write_text("")
        assert run(capsys, "table", "--table-file", str(path))[0] == 2
        path.write_text("[]")
        assert run(capsys, "table", "--table-file", str(path))[0] == 2


class TestOtherCommands:
    def test_invert(self, capsys):
        code, out, err = run(capsys, "invert")
        lines = out.splitlines()
        assert lines[0].startswith("element,hbar_omega0_eV,g")
        assert lines[1].startswith("He,28.1,4.6807")
        assert code == 5 and "Ne" in err

    def test_modes(self, capsys):
        code, out, err = run(capsys, "modes", "--alpha0", "0.6", "--omega0", "1", "--a", "1",
                             "--rho", "1")
        assert code == 0
        assert out.count("false") == 1 and "real modes = 5" in err

    def test_modes_needs_rho(self, capsys):
        assert run(capsys, "modes", "--species", "He")[0] == 2

    def test_self_energy(self, capsys):
        code, out, _ = run(capsys, "self-energy", "--species", "He")
        assert code == 0
        row = dict(zip(*[line.split(",") for line in out.splitlines()]))
        assert float(row["U_S_truncated_eV"]) == pytest.approx(131.53, rel=1e-11)
        assert float(row["U_S_full_eV"]) == pytest.approx(71.21, rel=3e-3)


class TestOracleCheck:
    def test_only_zero(self, capsys):
        code, out, _ = run(capsys, "oracle-check", "--a-values", "0")
        assert code == 0 and "max |delta| = 0.000e+00" in out

    def test_unattainable_tolerance(self, capsys):
        code, _, err = run(capsys, "oracle-check", "--tolerance", "1e-16")
        assert code == 4 and "numerical failure" in err

    def test_default(self, capsys):
        code, out, _ = run(capsys, "oracle-check")
        assert code == 0 and out.strip().endswith("PASS")
