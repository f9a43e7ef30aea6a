"""Deterministic constructors for the graph families used in tests and searches.

A descriptor is a plain dict with a ``kind`` key.  Cycles are laid out
cyclically oriented (``v0 -> v1 -> ... -> v0``) and paths point away from the
vertex they hang off.  Two optional keys adjust every family:

``orientation``
    ``None`` keeps the construction, ``"alternating"`` reverses every second
    edge of each cycle, a list of 0/1 flags reverses the flagged edges, and
    ``{"seed": s}`` flips each edge with probability 1/2.
``weights``
    ``None`` gives all ones, a list gives them explicitly, and
    ``{"seed": s, "max": k}`` draws them uniformly from ``1..k``.
"""

import random

from .errors import InputError
from .graph import WeightedOrientedGraph


class _Builder:
    def __init__(self):
        self.n = 0
        self.edges = []
        self.cycle_runs = []  # edge index lists, one per constructed cycle

    def vertex(self):
        self.n += 1
        return self.n - 1

    def cycle(self, length, at=None):
        if length < 3:
            raise InputError("cycles need length >= 3")
        start = self.vertex() if at is None else at
        verts = [start] + [self.vertex() for _ in range(length - 1)]
        run = []
        for k in range(length):
            run.append(len(self.edges))
            self.edges.append((verts[k], verts[(k + 1) % length]))
        self.cycle_runs.append(run)
        return verts

    def path(self, start, length):
        """Path of ``length`` edges leaving ``start``; returns the far end."""
        u = start
        for _ in range(length):
            w = self.vertex()
            self.edges.append((u, w))
            u = w
        return u

    def finish(self, desc):
        edges = list(self.edges)
        orient = desc.get("orientation")
        if orient == "alternating":
            for run in self.cycle_runs:
                for k in run[1::2]:
                    t, h = edges[k]
                    edges[k] = (h, t)
        elif isinstance(orient, dict):
            rng = random.Random(orient.get("seed", 0))
            edges = [(h, t) if rng.random() < 0.5 else (t, h) for t, h in edges]
        elif isinstance(orient, (list, tuple)):
            if len(orient) != len(edges):
                raise InputError(f"orientation needs {len(edges)} flags")
            edges = [(h, t) if f else (t, h) for f, (t, h) in zip(orient, edges)]
        elif orient not in (None, "cyclic"):
            raise InputError(f"unknown orientation {orient!r}")

        wdesc = desc.get("weights")
        if wdesc is None:
            weights = [1] * self.n
        elif isinstance(wdesc, dict):
            rng = random.Random(wdesc.get("seed", 0))
            top = int(wdesc.get("max", 3))
            weights = [rng.randint(1, top) for _ in range(self.n)]
        else:
            weights = list(wdesc)
            if len(weights) != self.n:
                raise InputError(f"family has {self.n} vertices, got {len(weights)} weights")
        return WeightedOrientedGraph(tuple(weights), tuple(edges))


def _int(desc, key, lo=None):
    try:
        v = int(desc[key])
    except (KeyError, TypeError, ValueError):
        raise InputError(f"descriptor needs integer {key!r}") from None
    if lo is not None and v < lo:
        raise InputError(f"{key!r} must be >= {lo}")
    return v


def _pairs(desc, key, path_min):
    try:
        items = [(int(c), int(p)) for c, p in desc.get(key, [])]
    except (TypeError, ValueError):
        raise InputError(f"{key!r} must be a list of [cycle_length, path_length]") from None
    for c, p in items:
        if c < 3 or p < path_min:
            raise InputError(f"bad entry [{c}, {p}] in {key!r}")
    return items


def make_family(desc):
    if not isinstance(desc, dict) or "kind" not in desc:
        raise InputError("family descriptor must be a dict with a 'kind'")
    kind = desc["kind"]
    b = _Builder()
    if kind == "cycle":
        b.cycle(_int(desc, "length", 3))
    elif kind == "path":
        b.path(b.vertex(), _int(desc, "length", 1))
    elif kind == "bouquet":
        # cycles through vertex 0, plus cycles hanging off it by paths
        lengths = desc.get("lengths", [])
        if not lengths:
            raise InputError("bouquet needs at least one cycle length")
        hub = b.vertex()
        for L in lengths:
            b.cycle(int(L), at=hub)
        for c, p in _pairs(desc, "attached", 1):
            end = b.path(hub, p)
            b.cycle(c, at=end)
    elif kind == "star":
        # cycles joined to a central vertex that lies on none of them
        arms = _pairs(desc, "arms", 1)
        if not arms:
            raise InputError("star needs at least one arm")
        hub = b.vertex()
        for c, p in arms:
            end = b.path(hub, p)
            b.cycle(c, at=end)
    elif kind == "theta":
        lens = [int(x) for x in desc.get("paths", [])]
        if len(lens) < 3 or min(lens) < 1 or sum(1 for x in lens if x == 1) > 1:
            raise InputError("theta needs >= 3 path lengths >= 1, at most one equal to 1")
        s, t = b.vertex(), b.vertex()
        for L in lens:
            u = s
            for _ in range(L - 1):
                w = b.vertex()
                b.edges.append((u, w))
                u = w
            b.edges.append((u, t))
    elif kind == "subdivided":
        k = _int(desc, "base_vertices", 1)
        base = [tuple(int(x) for x in e) for e in desc.get("base_edges", [])]
        splits = desc.get("splits") or [2] * len(base)
        if len(splits) != len(base) or any(int(s) < 2 for s in splits):
            raise InputError("every base edge needs a split count >= 2")
        for _ in range(k):
            b.vertex()
        for (u, v), s in zip(base, splits):
            if not (0 <= u < k and 0 <= v < k) or u == v:
                raise InputError(f"bad base edge {(u, v)}")
            cur = u
            for _ in range(int(s) - 1):
                w = b.vertex()
                b.edges.append((cur, w))
                cur = w
            b.edges.append((cur, v))
    elif kind == "edges":
        n = _int(desc, "vertex_count", 1)
        for _ in range(n):
            b.vertex()
        b.edges = [tuple(int(x) for x in e) for e in desc.get("edges", [])]
    else:
        raise InputError(f"unknown family {kind!r}")
    return b.finish(desc)
