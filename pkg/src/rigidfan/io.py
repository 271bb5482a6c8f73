"""Point files (CSV/JSON) and framework files (JSON)."""
from __future__ import annotations

import csv
import io
import json
from pathlib import Path

import numpy as np

from .construction import FanDecomposition, Framework
from .geometry import Configuration
from .rigidity import RigidityReport


def parse_points(text: str, fmt: str | None = None) -> Configuration:
    """Parse CSV (``x,y[,z]`` rows, optional header) or ``{"dim", "points"}`` JSON."""
    stripped = text.lstrip()
    if fmt == "json" or (fmt is None and stripped.startswith("{")):
        obj = json.loads(text)
        pts = np.array(obj["points"], dtype=float)
        if "dim" in obj and pts.ndim == 2 and pts.shape[1] != obj["dim"]:
            raise ValueError(f"points have {pts.shape[1]} coordinates, dim says {obj['dim']}")
        return Configuration(pts)
    rows = []
    for k, row in enumerate(csv.reader(io.StringIO(text))):
        row = [c.strip() for c in row if c.strip()]
        if not row:
            continue
        try:
            rows.append([float(c) for c in row])
        except ValueError:
            if k == 0 and not rows:
                continue  # header
            raise ValueError(f"bad CSV row {k + 1}: {row}")
    if not rows:
        raise ValueError("no points found")
    if len({len(r) for r in rows}) != 1:
        raise ValueError("inconsistent number of coordinates across rows")
    return Configuration(np.array(rows))


def read_points(path) -> Configuration:
    path = Path(path)
    fmt = "json" if path.suffix.lower() == ".json" else None
    return parse_points(path.read_text(), fmt)


def framework_to_dict(fw: Framework, fan: FanDecomposition | None = None,
                      report: RigidityReport | dict | None = None) -> dict:
    out = {
        "dim": fw.dim,
        "points": [[float(x) for x in row] for row in fw.coords],
        "edges": [list(e) for e in sorted(set(fw.edges))],
    }
    if fan is not None:
        out["fan"] = fan.to_dict()
    if isinstance(report, dict):
        out["report"] = report  # already serialized; stress follows sorted edges
    elif report is not None:
        rep = report.to_dict()
        if rep.get("stress") is not None:
            # stress values follow the sorted edge order written above
            order = {e: k for k, e in enumerate(fw.edges)}
            rep["stress"] = [rep["stress"][order[tuple(e)]] for e in out["edges"]]
        out["report"] = rep
    return out


def dumps_framework(fw, fan=None, report=None) -> str:
    # json writes floats with repr(): shortest string that round-trips exactly
    return json.dumps(framework_to_dict(fw, fan, report), indent=1) + "\n"


def write_framework(path, fw, fan=None, report=None) -> None:
    Path(path).write_text(dumps_framework(fw, fan, report))


def framework_from_dict(obj: dict):
    """Return ``(framework, fan or None, report dict or None)``."""
    pts = np.array(obj["points"], dtype=float)
    if pts.ndim != 2 or pts.shape[1] != obj.get("dim", pts.shape[1]):
        raise ValueError("points do not match dim")
    edges = tuple(tuple(int(v) for v in e) for e in obj.get("edges", []))
    for e in edges:
        if len(e) != 2:
            raise ValueError(f"bad edge {e}")
    fw = Framework(Configuration(pts), edges)
    fan = FanDecomposition.from_dict(obj["fan"]) if obj.get("fan") else None
    return fw, fan, obj.get("report")


def read_framework(path):
    return framework_from_dict(json.loads(Path(path).read_text()))
