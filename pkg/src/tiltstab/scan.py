"""Batch scans and report emission (CSV, JSON, SVG)."""
from __future__ import annotations

import csv
import dataclasses
import enum
import io
import json
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Tuple
from xml.sax.saxutils import escape, quoteattr

from .chern import NumClass, PolarizedGeometry
from .errors import EmptyGrid, InfiniteSlope, UnsupportedFormat
from .rational import as_fraction, format_rational, to_json_value
from .reider import FujitaReport, extension_class, fujita_verify, reider_rhs
from .tilt import HALF, AlwaysEqual, NoWall, Wall, WallResult, wall

__all__ = [
    "WallRow",
    "WallTable",
    "wall_scan",
    "counterexample_search",
    "emit",
    "to_jsonable",
    "wall_table_from_json",
    "ReiderRhsCurve",
]


@dataclasses.dataclass(frozen=True)
class WallRow:
    candidate_label: str
    wall: WallResult


@dataclasses.dataclass(frozen=True)
class WallTable:
    rows: tuple
    d: int
    alpha: int
    b: Fraction = HALF

    def __post_init__(self):
        labels = [row.candidate_label for row in self.rows]
        if len(set(labels)) != len(labels):
            raise ValueError("candidate labels must be unique")


def wall_scan(
    geom: PolarizedGeometry,
    alpha: int,
    candidates: Sequence[Tuple[str, NumClass]],
    b=HALF,
) -> WallTable:
    """Wall of each candidate against the extension object ``E``.

    A candidate with infinite slope gets a ``NoWall`` row with a note.
    """
    b = as_fraction(b)
    e = extension_class(geom, alpha)
    rows = []
    for label, ch in candidates:
        try:
            result = wall(ch, e, b)
        except InfiniteSlope as exc:
            result = NoWall(f"infinite slope: {exc}")
        rows.append(WallRow(label, result))
    return WallTable(tuple(rows), geom.d, alpha, b)


def counterexample_search(m: int, alpha: int, grid_bound: int, d_min: int = 1, workers: Optional[int] = None) -> list:
    if grid_bound < 1:
        raise EmptyGrid(f"grid bound must be at least 1, got {grid_bound}")
    report = fujita_verify(m, alpha, grid_bound, d_min=d_min, workers=workers)
    return sorted(report.counterexamples, key=lambda c: c.key())


@dataclasses.dataclass(frozen=True)
class ReiderRhsCurve:
    """Samples of ``kappa -> reider_rhs(kappa, alpha)`` on ``(0, 6 alpha]``."""

    alpha: int
    samples: int = 60


# -- serialization --------------------------------------------------------


def _wall_json(result: WallResult) -> dict:
    if isinstance(result, Wall):
        return {"kind": "Wall", "t": to_json_value(result.t)}
    if isinstance(result, AlwaysEqual):
        return {"kind": "AlwaysEqual"}
    return {"kind": "NoWall", "note": result.note}


def _wall_from_json(obj: dict) -> WallResult:
    kind = obj["kind"]
    if kind == "Wall":
        return Wall(as_fraction(obj["t"]))
    if kind == "AlwaysEqual":
        return AlwaysEqual()
    if kind == "NoWall":
        return NoWall(obj.get("note", ""))
    raise ValueError(f"unknown wall kind {kind!r}")


def to_jsonable(obj):
    """Plain JSON data for any report type; rationals become ints or ``"p/q"``."""
    if isinstance(obj, WallTable):
        return {
            "meta": {"alpha": obj.alpha, "b": to_json_value(obj.b), "d": obj.d},
            "rows": [
                {"candidate": row.candidate_label, "wall": _wall_json(row.wall)}
                for row in obj.rows
            ],
        }
    if isinstance(obj, (Wall, NoWall, AlwaysEqual)):
        return _wall_json(obj)
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, (int, Fraction)):
        return to_json_value(obj)
    if isinstance(obj, float):
        return "+inf" if obj == float("inf") else obj
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, NumClass):
        return {
            "r": to_json_value(obj.r),
            "L2ch1": to_json_value(obj.q1),
            "Lch1sq": None if obj.q2 is None else to_json_value(obj.q2),
            "Lch2": to_json_value(obj.ch2L),
            "ch3": to_json_value(obj.ch3),
            "twist": to_json_value(obj.twist),
        }
    if dataclasses.is_dataclass(obj):
        out = {"type": type(obj).__name__}
        for f in dataclasses.fields(obj):
            out[f.name] = to_jsonable(getattr(obj, f.name))
        for name in ("holds", "contradiction"):
            prop = getattr(type(obj), name, None)
            if isinstance(prop, property):
                out[name] = getattr(obj, name)
        return out
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps_json(obj) -> str:
    return json.dumps(to_jsonable(obj), sort_keys=True, separators=(",", ":"), ensure_ascii=False) + "\n"


def wall_table_from_json(text: str) -> WallTable:
    data = json.loads(text)
    meta = data["meta"]
    rows = tuple(WallRow(row["candidate"], _wall_from_json(row["wall"])) for row in data["rows"])
    return WallTable(rows, int(meta["d"]), int(meta["alpha"]), as_fraction(meta["b"]))


def _wall_cell(result: WallResult) -> str:
    if isinstance(result, Wall):
        return format_rational(result.t)
    return "AlwaysEqual" if isinstance(result, AlwaysEqual) else "NoWall"


def _csv(rows: Iterable[Sequence[str]]) -> bytes:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(rows)
    return buf.getvalue().encode("utf-8")


def _csv_payload(obj) -> bytes:
    if isinstance(obj, WallTable):
        return _csv([("candidate", "t_wall")] + [(r.candidate_label, _wall_cell(r.wall)) for r in obj.rows])
    if isinstance(obj, FujitaReport):
        obj = list(obj.counterexamples)
    if isinstance(obj, list) and all(hasattr(c, "key") for c in obj):
        header = ("d", "L2D", "LD2", "LC", "failed", "n_failing")
        return _csv([header] + [
            (str(c.d), str(c.q1), str(c.q2), str(c.LC), "".join(c.failed), str(c.n_failing))
            for c in obj
        ])
    raise UnsupportedFormat(f"csv output is not available for {type(obj).__name__}")


# -- SVG ------------------------------------------------------------------

_W, _H, _PAD = 640, 360, 56


def _num(x) -> str:
    return format(float(x), ".12g")


def _svg_document(title: str, body: list) -> bytes:
    head = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{_W}" height="{_H}" '
        f'viewBox="0 0 {_W} {_H}">',
        f"<title>{escape(title)}</title>",
        f'<rect x="0" y="0" width="{_W}" height="{_H}" fill="white"/>',
    ]
    return ("\n".join(head + body + ["</svg>"]) + "\n").encode("utf-8")


def _svg_walls(table: WallTable) -> bytes:
    ts = [row.wall.t for row in table.rows if isinstance(row.wall, Wall)]
    t_max = max([Fraction(1, 8)] + ts) * Fraction(5, 4)
    y_axis = _H - _PAD
    span = _W - 2 * _PAD

    def x_of(t):
        return _PAD + span * (t / t_max)

    body = [
        f'<line x1="{_PAD}" y1="{y_axis}" x2="{_W - _PAD}" y2="{y_axis}" stroke="black"/>',
        f'<text x="{_W - _PAD}" y="{y_axis + 30}" text-anchor="end" font-size="12">t</text>',
        f'<text x="{_PAD}" y="{_PAD - 24}" font-size="14">'
        f'{escape(f"walls against E, d={table.d}, alpha={table.alpha}, b={format_rational(table.b)}")}</text>',
    ]
    for tick in range(5):
        t = t_max * tick / 4
        x = _num(x_of(t))
        body.append(f'<line x1="{x}" y1="{y_axis}" x2="{x}" y2="{y_axis + 5}" stroke="black"/>')
        body.append(
            f'<text x="{x}" y="{y_axis + 18}" text-anchor="middle" font-size="10">{_num(t)}</text>'
        )
    for k, row in enumerate(table.rows):
        y = _PAD + 14 * (k % 16)
        label = f"{row.candidate_label}: {_wall_cell(row.wall)}"
        if isinstance(row.wall, Wall):
            x = _num(x_of(row.wall.t))
            body.append(f'<line x1="{x}" y1="{_PAD}" x2="{x}" y2="{y_axis}" stroke="firebrick"/>')
            body.append(f'<text x="{x}" y="{y}" dx="4" font-size="11">{escape(label)}</text>')
        else:
            body.append(f'<text x="{_PAD}" y="{y}" font-size="11" fill="gray">{escape(label)}</text>')
    return _svg_document("wall table", body)


def _svg_rhs(curve: ReiderRhsCurve) -> bytes:
    a = curve.alpha
    k_lo, k_hi = Fraction(a, 2), Fraction(6 * a)
    ks = [k_lo + (k_hi - k_lo) * i / curve.samples for i in range(curve.samples + 1)]
    vals = [reider_rhs(k, a) for k in ks]
    v_lo, v_hi = Fraction(0), max(vals)

    def xy(k, v):
        x = _PAD + (_W - 2 * _PAD) * (k - 0) / k_hi
        y = _H - _PAD - (_H - 2 * _PAD) * (v - v_lo) / (v_hi - v_lo)
        return f"{_num(x)},{_num(y)}"

    points = " ".join(xy(k, v) for k, v in zip(ks, vals))
    body = [
        f'<line x1="{_PAD}" y1="{_H - _PAD}" x2="{_W - _PAD}" y2="{_H - _PAD}" stroke="black"/>',
        f'<line x1="{_PAD}" y1="{_PAD}" x2="{_PAD}" y2="{_H - _PAD}" stroke="black"/>',
        f"<polyline points={quoteattr(points)} fill=\"none\" stroke=\"navy\"/>",
        f'<text x="{_PAD}" y="{_PAD - 24}" font-size="14">'
        f'{escape(f"volume bound 12a + (k^2 + 36a^2)/k, alpha={a}")}</text>',
    ]
    for k, label in ((Fraction(a), "49a"), (Fraction(6 * a), "24a")):
        px, py = xy(k, reider_rhs(k, a)).split(",")
        body.append(f'<circle cx="{px}" cy="{py}" r="3" fill="firebrick"/>')
        body.append(f'<text x="{px}" y="{py}" dx="6" dy="-6" font-size="11">{escape(label)}</text>')
    return _svg_document("reider volume bound", body)


def emit(obj, format: str) -> bytes:  # noqa: A002 - mirrors the CLI flag
    """Serialize a table or report; output is byte-deterministic."""
    if format == "json":
        return dumps_json(obj).encode("utf-8")
    if format == "csv":
        return _csv_payload(obj)
    if format == "svg":
        if isinstance(obj, WallTable):
            return _svg_walls(obj)
        if isinstance(obj, ReiderRhsCurve):
            return _svg_rhs(obj)
        raise UnsupportedFormat(f"svg output is not available for {type(obj).__name__}")
    raise UnsupportedFormat(f"unknown format {format!r}")
