import json
import xml.etree.ElementTree as ET
from fractions import Fraction as F

import pytest

from tiltstab import chern, reider, scan
from tiltstab.chern import CurveClassData, NumClass, PolarizedGeometry, Proportional
from tiltstab.errors import EmptyGrid, UnsupportedFormat
from tiltstab.tilt import AlwaysEqual, NoWall, Wall

SVG_NS = "{http://www.w3.org/2000/svg}"


def two_row_table(d=50):
    g = PolarizedGeometry(d)
    return scan.wall_scan(g, 1, [
        ("O_X[1]", reider.twisted_shifted_structure_sheaf(g)),
        ("L⊗I_Z", reider.twisted_line_ideal(g, 1)),
    ])


class TestWallScan:
    def test_two_rows(self):
        table = two_row_table()
        assert [(r.candidate_label, r.wall) for r in table.rows] == [
            ("O_X[1]", Wall(F(1, 8))), ("L⊗I_Z", Wall(F(1, 8))),
        ]
        assert (table.d, table.alpha, table.b) == (50, 1, F(1, 2))

    def test_empty(self):
        assert scan.wall_scan(PolarizedGeometry(50), 1, []).rows == ()

    def test_curve_ideal(self):
        g = PolarizedGeometry(100)
        table = scan.wall_scan(g, 1, [("L⊗I_C", reider.twisted_curve_ideal(g, 3))])
        assert table.rows[0].wall == Wall(F(19, 200))
        assert b"L\xe2\x8a\x97I_C,19/200\n" in scan.emit(table, "csv")

    def test_infinite_slope_row(self):
        g = PolarizedGeometry(10)
        bad = NumClass(1, Proportional(F(1, 2)), 1, 0, g)
        table = scan.wall_scan(g, 1, [("bad", bad), ("E2", chern.scale(reider.extension_class(g, 1), 2))])
        assert isinstance(table.rows[0].wall, NoWall)
        assert "infinite slope" in table.rows[0].wall.note
        assert table.rows[1].wall == AlwaysEqual()

    def test_duplicate_labels(self):
        g = PolarizedGeometry(10)
        o = reider.twisted_shifted_structure_sheaf(g)
        with pytest.raises(ValueError):
            scan.wall_scan(g, 1, [("x", o), ("x", o)])


class TestCounterexampleSearch:
    def test_m4(self):
        assert scan.counterexample_search(4, 1, 50) == []

    def test_m6(self):
        assert scan.counterexample_search(6, 2, 50) == []

    def test_m3(self):
        found = scan.counterexample_search(3, 1, 50)
        assert [c.d for c in found] == [1]
        assert found == sorted(found, key=lambda c: c.key())

    def test_empty_grid(self):
        with pytest.raises(EmptyGrid):
            scan.counterexample_search(4, 1, 0)


class TestEmit:
    def test_csv_bytes(self):
        assert scan.emit(two_row_table(), "csv") == "candidate,t_wall\nO_X[1],1/8\nL⊗I_Z,1/8\n".encode()

    def test_json_round_trip(self):
        g = PolarizedGeometry(10)
        table = scan.wall_scan(g, 2, [
            ("O", reider.twisted_shifted_structure_sheaf(g)),
            ("C", reider.twisted_curve_ideal(g, 3)),
            ("twice", chern.scale(reider.extension_class(g, 2), 2)),
        ])
        text = scan.emit(table, "json").decode()
        assert scan.wall_table_from_json(text) == table
        assert '"t":"1/8"' in text

    def test_empty_json(self):
        table = scan.wall_scan(PolarizedGeometry(50), 1, [])
        assert json.loads(scan.emit(table, "json")) == {"meta": {"alpha": 1, "b": "1/2", "d": 50}, "rows": []}

    def test_wall_svg(self):
        root = ET.fromstring(scan.emit(two_row_table(), "svg"))
        assert root.tag == SVG_NS + "svg"
        texts = [t.text for t in root.iter(SVG_NS + "text")]
        assert "O_X[1]: 1/8" in texts

    def test_empty_svg(self):
        ET.fromstring(scan.emit(scan.wall_scan(PolarizedGeometry(50), 1, []), "svg"))

    def test_rhs_svg(self):
        root = ET.fromstring(scan.emit(scan.ReiderRhsCurve(2), "svg"))
        assert len(list(root.iter(SVG_NS + "polyline"))) == 1

    def test_report_csv(self):
        rep = reider.fujita_verify(3, 1, 5)
        assert scan.emit(rep, "csv").decode().splitlines()[:2] == [
            "d,L2D,LD2,LC,failed,n_failing", f"1,1,0,1,A,{rep.tuples_failing}",
        ]

    def test_report_json(self):
        rep = reider.check_conditions(PolarizedGeometry(64), 1, [chern.General(16, 0)], [CurveClassData(4)])
        data = json.loads(scan.emit(rep, "json"))
        assert data["all_pass"] is True and data["cond_A"]["lhs"] == 64

    def test_infinity_json(self):
        assert json.loads(scan.emit({"slope": float("inf")}, "json")) == {"slope": "+inf"}

    @pytest.mark.parametrize("obj, fmt", [
        (reider.l5_analysis(1, 1), "svg"),
        (reider.l5_analysis(1, 1), "csv"),
        (scan.ReiderRhsCurve(1), "csv"),
        (scan.ReiderRhsCurve(1), "pdf"),
    ])
    def test_unsupported(self, obj, fmt):
        with pytest.raises(UnsupportedFormat):
            scan.emit(obj, fmt)

    def test_deterministic(self):
        assert scan.emit(two_row_table(), "svg") == scan.emit(two_row_table(), "svg")
        a = scan.emit(reider.fujita_verify(3, 1, 30, workers=1), "json")
        b = scan.emit(reider.fujita_verify(3, 1, 30, workers=5), "json")
        assert a == b
