import json
import subprocess
import sys
import xml.etree.ElementTree as ET
from fractions import Fraction

import pytest

from tiltstab import cli
from tiltstab.chern import General
from tiltstab.errors import HodgeIndexViolation, SchemaError

M4 = {"d": 64, "divisors": [{"L2D": 16, "LD2": 0}], "curves": [{"LC": 4}]}


@pytest.fixture
def write_geometry(tmp_path):
    def write(data, name="g.json"):
        path = tmp_path / name
        path.write_text(data if isinstance(data, str) else json.dumps(data), encoding="utf-8")
        return str(path)

    return write


def invoke(capsysbinary, *argv):
    code = cli.run(list(argv))
    out, err = capsysbinary.readouterr()
    return code, out, err.decode()


class TestParseGeometry:
    def test_valid(self, write_geometry):
        geom, divisors, curves = cli.parse_geometry(write_geometry(M4))
        assert geom.d == 64
        assert divisors == [General(16, 0)]
        assert [c.degLC for c in curves] == [4]

    def test_negative_d(self, write_geometry):
        with pytest.raises(SchemaError) as info:
            cli.parse_geometry(write_geometry({"d": -1}))
        assert info.value.pointer == "/d"

    def test_hodge(self, write_geometry):
        with pytest.raises(HodgeIndexViolation) as info:
            cli.parse_geometry(write_geometry({"d": 4, "divisors": [{"L2D": 1, "LD2": 1}]}))
        assert info.value.index == 0

    def test_unknown_field(self, write_geometry):
        with pytest.raises(SchemaError) as info:
            cli.parse_geometry(write_geometry({"d": 4, "curves": [{"LC": 1, "deg": 2}]}))
        assert info.value.pointer == "/curves/0"

    def test_rational_strings(self, write_geometry):
        geom, divisors, curves = cli.parse_geometry(write_geometry(
            {"d": "12", "divisors": [{"L2D": "7/2", "LD2": "1/4", "integral": False}],
             "curves": [{"LC": "3/2", "KXC": -2, "ch3OC": "-1/2", "name": "line"}]}
        ))
        assert geom.d == 12 and geom.kx("line") == -2
        assert not divisors[0].integral
        assert curves[0].ch3OC == Fraction(-1, 2)

    @pytest.mark.parametrize("data, pointer", [
        ({"d": "1/2"}, "/d"),
        ({"d": 3, "curves": [{"LC": 0}]}, "/curves/0/LC"),
        ({"divisors": []}, ""),
        ({"d": 3.5}, "/d"),
    ])
    def test_schema_pointers(self, write_geometry, data, pointer):
        with pytest.raises(SchemaError) as info:
            cli.parse_geometry(write_geometry(data))
        assert info.value.pointer == pointer

    def test_not_found(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            cli.parse_geometry(tmp_path / "missing.json")

    def test_bad_json(self, write_geometry):
        with pytest.raises(SchemaError):
            cli.parse_geometry(write_geometry("{d: 1"))


class TestExitCodes:
    def test_reider_passes(self, capsysbinary, write_geometry):
        code, out, _ = invoke(capsysbinary, "reider", "--geometry", write_geometry(M4), "--alpha", "1",
                              "--format", "json")
        assert code == cli.EXIT_OK
        assert json.loads(out)["all_pass"] is True

    def test_fujita_counterexample(self, capsysbinary):
        code, out, _ = invoke(capsysbinary, "fujita", "--m", "3", "--alpha", "1", "--grid-bound", "10",
                              "--format", "json")
        assert code == cli.EXIT_FAILED_CHECK
        data = json.loads(out)
        assert [c["d"] for c in data["counterexamples"]] == [1]

    def test_l5_parity(self, capsysbinary):
        code, out, _ = invoke(capsysbinary, "l5", "--m3", "1", "--kxc", "0", "--format", "json")
        assert code == cli.EXIT_OK
        assert json.loads(out)["parity_obstruction"] is True

    def test_reider_fails(self, capsysbinary, write_geometry):
        code, _, _ = invoke(capsysbinary, "reider", "--geometry", write_geometry({"d": 49}))
        assert code == cli.EXIT_FAILED_CHECK

    def test_missing_file(self, capsysbinary, tmp_path):
        code, _, err = invoke(capsysbinary, "reider", "--geometry", str(tmp_path / "nope.json"))
        assert code == cli.EXIT_USAGE and "not found" in err

    def test_schema_error(self, capsysbinary, write_geometry):
        code, _, err = invoke(capsysbinary, "reider", "--geometry", write_geometry({"d": -1}))
        assert code == cli.EXIT_USAGE and "/d" in err

    @pytest.mark.parametrize("argv", [
        ["frobnicate"],
        ["fujita", "--m", "zero"],
        ["l5", "--m3", "0"],
        ["slope", "--d", "10", "--t", "x"],
        ["wall"],
        ["slope", "--d", "10", "--t", "0"],
        ["l5", "--format", "csv"],
    ])
    def test_usage(self, capsysbinary, argv):
        code, out, _ = invoke(capsysbinary, *argv)
        assert code == cli.EXIT_USAGE and out == b""

    def test_help(self, capsysbinary):
        code, out, _ = invoke(capsysbinary, "--help")
        assert code == cli.EXIT_OK and b"L2D" in out


class TestOutput:
    @pytest.mark.parametrize("argv", [
        ["chern", "--d", "48"],
        ["slope", "--d", "50", "--t", "1/3"],
        ["wall", "--d", "50"],
        ["reider", "--d", "100", "--alpha", "2"],
        ["fujita", "--m", "4", "--grid-bound", "8"],
        ["l5", "--m3", "2", "--kxc", "-1"],
        ["scan", "--d", "100"],
    ])
    def test_json_parses_and_is_deterministic(self, capsysbinary, argv):
        first = invoke(capsysbinary, *argv, "--format", "json")
        second = invoke(capsysbinary, *argv, "--format", "json")
        assert first[0] in (cli.EXIT_OK, cli.EXIT_FAILED_CHECK)
        assert first == second
        assert isinstance(json.loads(first[1]), dict)
        text = invoke(capsysbinary, *argv)
        assert text[0] == first[0] and text[1]

    def test_chern_values(self, capsysbinary):
        _, out, _ = invoke(capsysbinary, "chern", "--d", "48", "--format", "json")
        data = json.loads(out)
        assert data["classes"]["E"] == {"L2ch1": 48, "Lch1sq": 48, "Lch2": 0, "ch3": 1, "r": 0, "twist": "1/2"}
        assert data["L_delta"]["E"] == 48

    def test_slope_values(self, capsysbinary):
        _, out, _ = invoke(capsysbinary, "slope", "--d", "50", "--t", "1/3", "--format", "json")
        data = json.loads(out)
        assert data["nu"]["O_X[1]"] == "5/12" and data["nu"]["E"] == 0

    def test_scan_csv(self, capsysbinary):
        _, out, _ = invoke(capsysbinary, "scan", "--d", "50", "--format", "csv")
        assert out == "candidate,t_wall\nO_X[1],1/8\nL⊗I_Z,1/8\n".encode()

    def test_scan_with_curves(self, capsysbinary, write_geometry):
        path = write_geometry({"d": 100, "curves": [{"LC": 3}]})
        _, out, _ = invoke(capsysbinary, "scan", "--geometry", path, "--format", "csv")
        assert out.decode().splitlines()[-1] == "L⊗I_C0,19/200"

    def test_svg(self, capsysbinary):
        for argv in (["scan", "--d", "50"], ["reider", "--alpha", "2"]):
            code, out, _ = invoke(capsysbinary, *argv, "--format", "svg")
            assert code == cli.EXIT_OK
            ET.fromstring(out)

    def test_out_file(self, capsysbinary, tmp_path):
        target = tmp_path / "walls.csv"
        code, out, _ = invoke(capsysbinary, "scan", "--d", "50", "--format", "csv", "--out", str(target))
        assert code == cli.EXIT_OK and out == b""
        assert target.read_bytes().startswith(b"candidate,t_wall\n")


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "tiltstab", "l5", "--m3", "1", "--kxc", "1", "--format", "json"],
        capture_output=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["g_a"] == 3
