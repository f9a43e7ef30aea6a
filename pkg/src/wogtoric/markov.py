"""Fibers, fiber walks, minimal Markov bases and indispensable binomials.

A fiber is the finite set of nonnegative integer points of one A-degree.
Binomial membership is decided by walking a fiber with a set of moves.
"""

from collections import deque
from dataclasses import dataclass, field
from itertools import product
import json
import time

from .errors import BudgetExceeded, CapExceeded, EquivalenceViolation, FiberCapExceeded
from .graver import GraverSet, graver_basis
from .lattice import ToricMatrix, canonical, minus, plus, render_binomial

DEFAULT_FIBER_CAP = 200_000
DEFAULT_CHOICE_CAP = 100_000
REPORT_VERSION = 1


@dataclass(frozen=True)
class Fiber:
    degree: tuple
    points: tuple

    def __len__(self):
        return len(self.points)

    def __contains__(self, w):
        return tuple(w) in self.points


def _as_matrix(A):
    return A if isinstance(A, ToricMatrix) else ToricMatrix(A)


def _column_order(cols, n):
    """Greedy column order that finishes rows early, so later values are forced."""
    m = len(cols)
    rows_of = [{i for i, a in enumerate(c) if a} for c in cols]
    remaining = [sum(1 for c in cols if c[i]) for i in range(n)]
    order = []
    left = set(range(m))
    opened = set()
    while left:
        def score(j):
            closes = sum(1 for i in rows_of[j] if remaining[i] == 1)
            new_open = len(rows_of[j] - opened)
            return (-closes, new_open, j)
        j = min(left, key=score)
        left.discard(j)
        order.append(j)
        for i in rows_of[j]:
            remaining[i] -= 1
            opened.add(i)
    return order


def fiber(A, b, cap=DEFAULT_FIBER_CAP):
    """All ``w >= 0`` with ``A w = b``, in lexicographic order.

    Depth-first over the columns in an order that completes rows early: once
    a column is the last one touching some row, its value is forced by that
    row's residual.  A branch also dies when a row keeps a positive residual
    that no remaining column can cover.
    """
    A = _as_matrix(A)
    b = tuple(int(x) for x in b)
    if len(b) != A.n:
        raise ValueError("degree length does not match the row count")
    if any(x < 0 for x in b):
        raise ValueError("degree must be nonnegative")
    n, m = A.n, A.m
    order = _column_order(A.columns, n)
    cols = [A.columns[j] for j in order]
    nz = [[(i, a) for i, a in enumerate(c) if a] for c in cols]
    last = {}
    for k, c in enumerate(nz):
        for i, _ in c:
            last[i] = k
    closing = [[(i, a) for i, a in nz[k] if last[i] == k] for k in range(m)]
    cover = [0] * (m + 1)
    for k in range(m - 1, -1, -1):
        mask = 0
        for i, _ in nz[k]:
            mask |= 1 << i
        cover[k] = cover[k + 1] | mask

    out = []
    w = [0] * m

    def rec(k, res, live):
        # live: bitmask of rows with positive residual
        if not live:
            pt = [0] * m
            for pos in range(k):
                pt[order[pos]] = w[pos]
            out.append(tuple(pt))
            if len(out) > cap:
                raise FiberCapExceeded(cap)
            return
        if live & ~cover[k]:
            return
        col = nz[k]
        top = min(res[i] // a for i, a in col)
        forced = None
        for i, a in closing[k]:
            r = res[i]
            if r % a:
                return
            q = r // a
            if forced is None:
                forced = q
            elif forced != q:
                return
        if forced is not None:
            if forced > top:
                return
            values = (forced,)
        else:
            values = range(top, -1, -1)
        for x in values:
            w[k] = x
            if x:
                res2 = list(res)
                live2 = live
                for i, a in col:
                    res2[i] -= x * a
                    if not res2[i]:
                        live2 &= ~(1 << i)
                rec(k + 1, res2, live2)
            else:
                rec(k + 1, res, live)
        w[k] = 0

    live = 0
    for i, x in enumerate(b):
        if x:
            live |= 1 << i
    rec(0, list(b), live)
    return Fiber(b, tuple(sorted(out)))


def _signed(moves):
    out = []
    for g in moves:
        g = tuple(g)
        out.append((plus(g), g))
        neg = tuple(-x for x in g)
        out.append((plus(neg), neg))
    return out


def _apply(w, hp, h):
    for x, y in zip(w, hp):
        if x < y:
            return None
    return tuple(x - y for x, y in zip(w, h))


def _support_mask(w):
    m = 0
    for i, x in enumerate(w):
        if x:
            m |= 1 << i
    return m


def _prepare(A, moves):
    """Signed moves as ``(degree of h+, support mask of h+, h+, h)``."""
    return [(A.degree(hp), _support_mask(hp), hp, h) for hp, h in _signed(moves)]


def _fits(d, b):
    return all(x <= y for x, y in zip(d, b))


def _walk(start, b, prepared, cap, stop=None):
    usable = [(m, hp, h) for d, m, hp, h in prepared if _fits(d, b)]
    seen = {start}
    queue = deque([start])
    while queue:
        w = queue.popleft()
        wm = _support_mask(w)
        for hm, hp, h in usable:
            if hm & ~wm:
                continue
            nxt = _apply(w, hp, h)
            if nxt is not None and nxt not in seen:
                seen.add(nxt)
                if stop is not None and len(seen) > stop:
                    return seen
                if len(seen) > cap:
                    raise FiberCapExceeded(cap)
                queue.append(nxt)
    return seen


def fiber_walk(A, start, moves, cap=DEFAULT_FIBER_CAP, stop=None):
    """Points reachable from ``start`` with the moves ``±moves``.

    With a Markov basis (a Graver basis is one) this is the whole fiber of
    ``start``, found far faster than by solving ``A w = b`` from scratch.
    With ``stop`` set the walk ends as soon as more than ``stop`` points are seen.
    """
    A = _as_matrix(A)
    start = tuple(start)
    return _walk(start, A.degree(start), _prepare(A, moves), cap, stop)


def _reaches(start, goal, prepared, cap):
    b_moves = [(m, hp, h) for d, m, hp, h in prepared]
    seen = {start}
    queue = deque([start])
    while queue:
        w = queue.popleft()
        wm = _support_mask(w)
        for hm, hp, h in b_moves:
            if hm & ~wm:
                continue
            nxt = _apply(w, hp, h)
            if nxt is None or nxt in seen:
                continue
            if nxt == goal:
                return True
            seen.add(nxt)
            if len(seen) > cap:
                raise FiberCapExceeded(cap)
            queue.append(nxt)
    return False


def in_ideal(A, v, B, cap=DEFAULT_FIBER_CAP):
    """Is the binomial of ``v`` in the ideal generated by the binomials of ``B``?

    Breadth-first walk from ``v+`` inside its fiber using the moves ``±B``.
    """
    A = _as_matrix(A)
    v = tuple(v)
    if not A.in_kernel(v):
        raise ValueError("move is not in the kernel")
    start, goal = plus(v), minus(v)
    if start == goal:
        return True
    b = A.degree(start)
    prepared = [p for p in _prepare(A, B) if _fits(p[0], b)]
    return _reaches(start, goal, prepared, cap)


def is_minimal_generating(A, G, cap=DEFAULT_FIBER_CAP):
    """``(ok, redundant)``: no element of ``G`` lies in the ideal of the others."""
    A = _as_matrix(A)
    moves = [tuple(g) for g in G]
    prepared = _prepare(A, moves)  # entries 2i and 2i+1 belong to moves[i]
    redundant = []
    for i, g in enumerate(moves):
        b = prepared[2 * i][0]
        rest = [p for k, p in enumerate(prepared) if k // 2 != i and _fits(p[0], b)]
        if _reaches(plus(g), minus(g), rest, cap):
            redundant.append(g)
    return not redundant, redundant


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a, b):
        a, b = self.find(a), self.find(b)
        if a != b:
            if b < a:
                a, b = b, a
            self.parent[b] = a

    def groups(self):
        out = {}
        for x in sorted(self.parent):
            out.setdefault(self.find(x), []).append(x)
        return sorted(out.values())


def _lower_degree_components(F, prepared):
    """Fiber components under moves whose positive part is strictly below the fiber degree."""
    b = F.degree
    uf = _UnionFind(F.points)
    pts = set(F.points)
    usable = [(m, hp, h) for d, m, hp, h in prepared if d != b and _fits(d, b)]
    for w in F.points:
        wm = _support_mask(w)
        for hm, hp, h in usable:
            if hm & ~wm:
                continue
            nxt = _apply(w, hp, h)
            if nxt is not None and nxt in pts:
                uf.union(w, nxt)
    return uf.groups()


def indispensable(A, G=None, cap=DEFAULT_FIBER_CAP):
    """Graver elements whose fiber splits into exactly ``{g+}`` and ``{g-}``."""
    A = _as_matrix(A)
    if G is None:
        G = graver_basis(A)
    moves = list(G)
    prepared = _prepare(A, moves)
    out = []
    for g in moves:
        start = plus(g)
        b = A.degree(start)
        pts = _walk(start, b, prepared, cap, stop=2)
        if len(pts) != 2:
            # components partition the fiber, so two singletons need exactly two points
            continue
        comps = _lower_degree_components(Fiber(b, tuple(sorted(pts))), prepared)
        if len(comps) == 2 and sorted(comps) == sorted([[plus(g)], [minus(g)]]):
            out.append(g)
    return GraverSet.build(out, A)


def _support_components(F):
    """Fiber components where two points are adjacent iff their supports meet."""
    uf = _UnionFind(F.points)
    by_var = {}
    for w in F.points:
        for i, x in enumerate(w):
            if x:
                by_var.setdefault(i, []).append(w)
    for pts in by_var.values():
        for w in pts[1:]:
            uf.union(pts[0], w)
    return uf.groups()


def _spanning_trees(k):
    """Edge lists of all labelled spanning trees on ``k`` nodes (Pruefer decoding)."""
    if k == 1:
        yield []
        return
    if k == 2:
        yield [(0, 1)]
        return
    for seq in product(range(k), repeat=k - 2):
        degree = [1] * k
        for x in seq:
            degree[x] += 1
        edges = []
        for x in seq:
            leaf = min(i for i in range(k) if degree[i] == 1)
            edges.append((min(leaf, x), max(leaf, x)))
            degree[leaf] -= 1
            degree[x] -= 1
        u, v = [i for i in range(k) if degree[i] == 1]
        edges.append((u, v))
        yield sorted(edges)


def _graver_degrees(A, G):
    return sorted({A.degree(plus(g)) for g in G})


def indispensable_oracle(A, G=None, cap=DEFAULT_FIBER_CAP, choice_cap=DEFAULT_CHOICE_CAP):
    """Intersection of all minimal binomial generating sets, by exhaustive choice.

    In each Markov degree the components are taken under shared support (two
    monomials with a common variable are joined by lower-degree binomials),
    and every spanning tree with every choice of endpoints is enumerated.
    """
    A = _as_matrix(A)
    if G is None:
        G = graver_basis(A)
    keep = []
    choices = 0
    for b in _graver_degrees(A, G):
        comps = _support_components(fiber(A, b, cap))
        k = len(comps)
        if k < 2:
            continue
        common = None
        for tree in _spanning_trees(k):
            for picks in product(*[product(comps[i], comps[j]) for i, j in tree]):
                choices += 1
                if choices > choice_cap:
                    raise BudgetExceeded("minimal generating set choices", choice_cap)
                chosen = {canonical(tuple(x - y for x, y in zip(u, v))) for u, v in picks}
                common = chosen if common is None else common & chosen
                if not common:
                    break
            if not common:
                break
        keep.extend(common or ())
    return GraverSet.build(keep, A)


def minimal_markov_basis(A, G=None, cap=DEFAULT_FIBER_CAP):
    """One minimal Markov basis: per degree, join the first component to every other."""
    A = _as_matrix(A)
    if G is None:
        G = graver_basis(A)
    moves = list(G)
    prepared = _prepare(A, moves)
    starts = {}
    for g in moves:
        starts.setdefault(A.degree(plus(g)), plus(g))
    out = []
    for b in sorted(starts):
        F = Fiber(b, tuple(sorted(_walk(starts[b], b, prepared, cap))))
        comps = _lower_degree_components(F, prepared)
        for comp in comps[1:]:
            out.append(tuple(x - y for x, y in zip(comps[0][0], comp[0])))
    return GraverSet.build(out, A)


# ---------------------------------------------------------------------------
# verdict


@dataclass
class RobustnessReport:
    status: str
    strongly_robust: object
    graver: tuple = ()
    indispensable: tuple = ()
    dispensable_witnesses: tuple = ()
    redundant_witnesses: tuple = ()
    hypothesis_results: object = None
    caps: dict = field(default_factory=dict)
    cap_message: str = ""
    timings: dict = field(default_factory=dict)
    names: tuple = ()

    @property
    def graver_size(self):
        return len(self.graver)

    @property
    def indispensable_size(self):
        return len(self.indispensable)

    def to_dict(self, include_timings=False):
        names = list(self.names) or None
        d = {
            "report_version": REPORT_VERSION,
            "status": self.status,
            "strongly_robust": self.strongly_robust,
            "graver_size": self.graver_size,
            "indispensable_size": self.indispensable_size,
            "graver": [list(g) for g in self.graver],
            "graver_binomials": [render_binomial(g, names) for g in self.graver],
            "indispensable": [list(g) for g in self.indispensable],
            "dispensable_witnesses": [render_binomial(g, names) for g in self.dispensable_witnesses],
            "redundant_witnesses": [render_binomial(g, names) for g in self.redundant_witnesses],
            "caps": dict(self.caps),
            "cap_message": self.cap_message,
        }
        if self.hypothesis_results is not None:
            d["hypothesis_results"] = self.hypothesis_results.as_dict()
        if include_timings:
            d["timings"] = {k: round(v, 6) for k, v in self.timings.items()}
        return d

    def to_json(self, include_timings=False):
        return json.dumps(self.to_dict(include_timings), sort_keys=True, indent=2) + "\n"

    def to_table(self):
        names = list(self.names) or None
        verdict = {True: "yes", False: "no", None: "INCONCLUSIVE"}[self.strongly_robust]
        lines = [
            f"status            {self.status}",
            f"strongly robust   {verdict}",
            f"graver size       {self.graver_size}",
            f"indispensable     {self.indispensable_size}",
        ]
        if self.cap_message:
            lines.append(f"cap hit           {self.cap_message}")
        if self.graver:
            lines.append("graver basis:")
            ind = set(self.indispensable)
            for g in self.graver:
                mark = "*" if g in ind else " "
                lines.append(f"  {mark} {render_binomial(g, names)}")
            lines.append("  (* = indispensable)")
        if self.hypothesis_results is not None:
            h = self.hypothesis_results
            lines += [
                "hypotheses:",
                f"  every edge meets degree-2 vertex   {h.every_edge_meets_degree2}",
                f"  cycles share a single vertex       {h.cycles_share_single_vertex}",
                f"  no two cycles share a path         {h.no_two_cycles_share_path}",
                f"  cycles-and-paths criterion         {h.main_theorem_hypothesis}",
            ]
            for name, idx in h.witnesses:
                lines.append(f"  witness {name}: {list(idx)}")
        return "\n".join(lines) + "\n"


def strongly_robust(A, hypotheses=None, graver_cap=None, fiber_cap=DEFAULT_FIBER_CAP, names=()):
    """Decide whether the Graver basis of ``A`` equals its indispensable set.

    Cap hits give ``status == "inconclusive"`` and ``strongly_robust is None``.
    """
    A = _as_matrix(A)
    caps = {"fiber": fiber_cap}
    if graver_cap is not None:
        caps["graver"] = graver_cap
    timings = {}
    try:
        t0 = time.perf_counter()
        G = graver_basis(A) if graver_cap is None else graver_basis(A, graver_cap)
        t1 = time.perf_counter()
        ind = indispensable(A, G, fiber_cap)
        t2 = time.perf_counter()
        minimal, redundant = is_minimal_generating(A, G, fiber_cap)
        t3 = time.perf_counter()
    except CapExceeded as exc:
        return RobustnessReport(
            status="inconclusive",
            strongly_robust=None,
            hypothesis_results=hypotheses,
            caps=caps,
            cap_message=str(exc),
            names=tuple(names),
        )
    timings = {"graver": t1 - t0, "indispensable": t2 - t1, "minimal_generation": t3 - t2}
    verdict = G.as_set() == ind.as_set()
    if verdict != minimal:
        raise EquivalenceViolation(
            f"graver==indispensable is {verdict} but minimal generation is {minimal}")
    dispensable = tuple(g for g in G if g not in ind.as_set())
    return RobustnessReport(
        status="ok",
        strongly_robust=verdict,
        graver=G.moves,
        indispensable=ind.moves,
        dispensable_witnesses=dispensable,
        redundant_witnesses=tuple(redundant),
        hypothesis_results=hypotheses,
        caps=caps,
        timings=timings,
        names=tuple(names),
    )
