"""Keep a minimal universally rigid topology over a changing node set.

Every event rebuilds the framework from scratch; edges are reported in
terms of stable node ids so deltas stay meaningful across epochs.
"""
from __future__ import annotations

import copy
import itertools
import json
from dataclasses import dataclass, field

import numpy as np

from .construction import FanDecomposition, Framework, build
from .errors import DegenerateInput, DuplicateId, RigidFanError, UnknownId
from .geometry import Configuration
from .rigidity import RigidityReport, superstability_test


@dataclass(frozen=True)
class EdgeDelta:
    added: frozenset = frozenset()
    removed: frozenset = frozenset()

    def __bool__(self):
        return bool(self.added or self.removed)

    def apply(self, edges) -> set:
        return (set(edges) - self.removed) | self.added


def _id_pair(a, b):
    return (a, b) if _id_key(a) <= _id_key(b) else (b, a)


def _id_key(x):
    # ints before strings; keeps mixed id types orderable
    return (0, x, "") if isinstance(x, int) else (1, 0, str(x))


def id_edges(fw: Framework | None) -> set:
    """Edges of ``fw`` expressed with the configuration labels as node ids."""
    if fw is None:
        return set()
    labels = fw.config.labels or tuple(range(fw.n))
    return {_id_pair(labels[i], labels[j]) for i, j in fw.edges}


def edge_delta(prev: Framework | None, nxt: Framework | None) -> EdgeDelta:
    a, b = id_edges(prev), id_edges(nxt)
    return EdgeDelta(added=frozenset(b - a), removed=frozenset(a - b))


@dataclass
class Snapshot:
    framework: Framework
    fan: FanDecomposition
    report: RigidityReport | None
    certified: bool


@dataclass
class Session:
    """Single-owner state machine over node ids.

    Node order (and so construction index) is insertion order.
    """

    dim: int
    nodes: dict = field(default_factory=dict)
    current: Snapshot | None = None
    epoch: int = 0
    history: list = field(default_factory=list)

    def _rebuild(self, nodes) -> Snapshot | None:
        if not nodes:
            return None
        ids = tuple(nodes)
        config = Configuration(np.array([nodes[i] for i in ids], dtype=float), labels=ids)
        n, d = config.n, self.dim
        if n <= d + 1 and config.affine_rank() < n - 1:
            raise DegenerateInput("nodes are affinely dependent")
        if n <= d:
            # too few nodes to span the space: keep the complete graph
            fw = Framework(config, tuple(itertools.combinations(range(n), 2)))
            return Snapshot(fw, FanDecomposition(kind="simplex"), None, True)
        fw, fan = build(config)
        try:
            report = superstability_test(fw)
            certified = report.superstable and report.m == 0
        except RigidFanError as exc:
            report = getattr(exc, "report", None)
            certified = False
        return Snapshot(fw, fan, report, certified)

    def apply(self, event: dict) -> EdgeDelta:
        """Apply one event in place; the session is unchanged if it raises."""
        op = event.get("op")
        node_id = event.get("id")
        nodes = dict(self.nodes)
        if op == "add":
            if node_id in nodes:
                raise DuplicateId(node_id)
            nodes[node_id] = self._point(event)
        elif op == "remove":
            if node_id not in nodes:
                raise UnknownId(node_id)
            del nodes[node_id]
        elif op == "move":
            if node_id not in nodes:
                raise UnknownId(node_id)
            nodes[node_id] = self._point(event)
        else:
            raise ValueError(f"unknown event op {op!r}")
        snap = self._rebuild(nodes)
        delta = edge_delta(self.current and self.current.framework, snap and snap.framework)
        self.nodes = nodes
        self.current = snap
        self.epoch += 1
        self.history.append({"epoch": self.epoch, "event": dict(event), "delta": delta,
                             "certified": snap is None or snap.certified})
        return delta

    def _point(self, event):
        point = tuple(float(x) for x in event["point"])
        if len(point) != self.dim:
            raise ValueError(f"point must have {self.dim} coordinates")
        if not all(np.isfinite(point)):
            raise ValueError("point coordinates must be finite")
        return point

    @property
    def certified(self) -> bool:
        return self.current is None or self.current.certified

    def edges(self) -> set:
        return id_edges(self.current and self.current.framework)

    def log_lines(self) -> list[str]:
        """Event log, one JSON object per line."""
        out = []
        for h in self.history:
            out.append(json.dumps({
                "epoch": h["epoch"],
                "event": h["event"],
                "added": sorted([list(e) for e in h["delta"].added], key=_edge_key),
                "removed": sorted([list(e) for e in h["delta"].removed], key=_edge_key),
            }))
        return out


def _edge_key(e):
    return tuple(_id_key(x) for x in e)


def apply_event(sess: Session, event: dict) -> tuple[Session, EdgeDelta]:
    """Functional form of :meth:`Session.apply`: returns a new session."""
    new = copy.deepcopy(sess)
    delta = new.apply(event)
    return new, delta


def replay(events, dim: int) -> Session:
    sess = Session(dim)
    for ev in events:
        sess.apply(ev)
    return sess


def read_log(lines) -> list[dict]:
    """Parse an event log (or a bare event list) back into events."""
    events = []
    for line in lines:
        line = line.strip()
        if not line:
            continue
        obj = json.loads(line)
        events.append(obj["event"] if "event" in obj else obj)
    return events
