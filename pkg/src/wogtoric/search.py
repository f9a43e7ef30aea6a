"""Seeded search for weighted oriented graphs that are not strongly robust.

Each family is a list of shapes (small integer tuples fixing the cycle and
path lengths).  Shapes are tried in order of edge count, and every shape gets
``trials`` random orientations and weight vectors drawn from an RNG keyed by
``(seed, family, shape, trial)``.  The first instance with a dispensable
Graver element is returned, so results depend only on the arguments.
"""

from dataclasses import dataclass
from itertools import combinations_with_replacement, permutations, product
import random

from .errors import CapExceeded, NotFound
from .graph import WeightedOrientedGraph, incidence_matrix, main_theorem_hypothesis
from .markov import DEFAULT_FIBER_CAP, strongly_robust


class _Layout:
    def __init__(self):
        self.n = 0
        self.edges = []

    def vertex(self):
        self.n += 1
        return self.n - 1

    def cycle(self, length, at=None):
        verts = [self.vertex() if at is None else at]
        verts += [self.vertex() for _ in range(length - 1)]
        for k in range(length):
            self.edges.append((verts[k], verts[(k + 1) % length]))
        return verts

    def path(self, start, length):
        u = start
        for _ in range(length):
            w = self.vertex()
            self.edges.append((u, w))
            u = w
        return u


# ---------------------------------------------------------------------------
# families: shapes(max_edges) -> [(edges, shape)], layout(shape) -> _Layout


def _cycle_edge_shapes(max_edges, max_path=1):
    # base cycle L1; its edge (v_last, v_0) gets a cycle of length L2 at v_last
    # (after p2 path edges) and one of length L3 at v_0 (after p3 path edges)
    out = []
    for L1 in range(3, max_edges + 1):
        for L2, L3 in combinations_with_replacement(range(3, max_edges + 1), 2):
            for p2, p3 in product(range(max_path + 1), repeat=2):
                e = L1 + L2 + L3 + p2 + p3
                if e <= max_edges:
                    out.append((e, (L1, L2, L3, p2, p3)))
    return out


def _cycle_edge_layout(shape):
    L1, L2, L3, p2, p3 = shape
    g = _Layout()
    base = g.cycle(L1)
    g.cycle(L2, at=g.path(base[-1], p2))
    g.cycle(L3, at=g.path(base[0], p3))
    return g


def _shared_path_shapes(max_edges, max_path=1):
    # C1 and C2 reach vertex a by paths p1, p2; a reaches C3 by a path q >= 1
    # whose edges are common to both connecting paths; C4 meets C3 at a vertex
    # (r = 0) or through an edge (r = 1).  C3 has length >= 4 so that C4 can sit
    # away from the attachment and every cycle edge keeps a degree-2 endpoint.
    out = []
    for L1, L2 in combinations_with_replacement(range(3, max_edges + 1), 2):
        for L3 in range(4, max_edges + 1):
            for L4 in range(3, max_edges + 1):
                for p1, p2 in combinations_with_replacement(range(max_path + 1), 2):
                    for q in range(1, max_path + 2):
                        for r in (0, 1):
                            e = L1 + L2 + L3 + L4 + p1 + p2 + q + r
                            if e <= max_edges:
                                out.append((e, (L1, L2, L3, L4, p1, p2, q, r)))
    return out


def _shared_path_layout(shape):
    L1, L2, L3, L4, p1, p2, q, r = shape
    g = _Layout()
    a = g.vertex()
    # each side cycle hangs off its own path from a (a path of length 0 puts it on a)
    g.cycle(L1, at=g.path(a, p1))
    g.cycle(L2, at=g.path(a, p2))
    c3 = g.cycle(L3, at=g.path(a, q))
    far = c3[L3 // 2]
    g.cycle(L4, at=g.path(far, r))
    return g


def _bouquet_shapes(max_edges):
    out = []
    for k in range(1, 4):
        for lens in combinations_with_replacement(range(3, 7), k):
            for extra in range(0, 3):
                for att in combinations_with_replacement(
                        [(c, p) for c in range(3, 6) for p in (1, 2)], extra):
                    e = sum(lens) + sum(c + p for c, p in att)
                    if e <= max_edges:
                        out.append((e, (lens, att)))
    return out


def _bouquet_layout(shape):
    lens, att = shape
    g = _Layout()
    hub = g.vertex()
    for L in lens:
        g.cycle(L, at=hub)
    for c, p in att:
        g.cycle(c, at=g.path(hub, p))
    return g


def _star_shapes(max_edges):
    out = []
    for k in range(1, 4):
        for arms in combinations_with_replacement(
                [(c, p) for c in range(3, 6) for p in (1, 2)], k):
            e = sum(c + p for c, p in arms)
            if e <= max_edges:
                out.append((e, arms))
    return out


def _star_layout(arms):
    g = _Layout()
    hub = g.vertex()
    for c, p in arms:
        g.cycle(c, at=g.path(hub, p))
    return g


def _cycle_shapes(max_edges):
    return [(L, (L,)) for L in range(3, max_edges + 1)]


def _cycle_layout(shape):
    g = _Layout()
    g.cycle(shape[0])
    return g


FAMILIES = {
    "cycle-edge": (_cycle_edge_shapes, _cycle_edge_layout),
    "shared-path": (_shared_path_shapes, _shared_path_layout),
    "bouquet": (_bouquet_shapes, _bouquet_layout),
    "star": (_star_shapes, _star_layout),
    "cycle": (_cycle_shapes, _cycle_layout),
}


# alternative names resolve to the same shapes and the same random draws
ALIASES = {"cycle-with-chord-path": "cycle-edge"}


def _resolve(family):
    family = ALIASES.get(family, family)
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; choose from {sorted([*FAMILIES, *ALIASES])}")
    return family


def family_shapes(family, min_edges=3, max_edges=13):
    family = _resolve(family)
    shapes, _ = FAMILIES[family]
    return sorted((e, s) for e, s in shapes(max_edges) if e >= min_edges)


def instance(family, shape, seed, trial, weight_max=3):
    """The graph for one ``(shape, trial)`` of a family, orientation and weights drawn at random."""
    family = _resolve(family)
    _, layout = FAMILIES[family]
    g = layout(shape)
    rng = random.Random(f"{seed}:{family}:{shape}:{trial}")
    edges = tuple((h, t) if rng.random() < 0.5 else (t, h) for t, h in g.edges)
    weights = tuple(rng.randint(1, weight_max) for _ in range(g.n))
    return WeightedOrientedGraph(weights, edges)


@dataclass
class SearchResult:
    graph: WeightedOrientedGraph
    report: object
    family: str
    shape: tuple
    trial: int
    tried: int


def search_counterexample(family, seed=0, min_edges=3, max_edges=13, weight_max=3,
                          trials=20, budget=5000, fiber_cap=DEFAULT_FIBER_CAP):
    """First (smallest shape, then lowest trial) instance that is not strongly robust.

    Raises ``NotFound`` after ``budget`` instances or when the shapes run out.
    Instances whose computation hits a cap are skipped.
    """
    tried = 0
    for _, shape in family_shapes(family, min_edges, max_edges):
        for trial in range(trials):
            if tried >= budget:
                raise NotFound(f"no counterexample in {family!r} within {budget} instances")
            tried += 1
            D = instance(family, shape, seed, trial, weight_max)
            try:
                report = strongly_robust(incidence_matrix(D), fiber_cap=fiber_cap)
            except CapExceeded:
                continue
            if report.strongly_robust is False:
                try:
                    report.hypothesis_results = main_theorem_hypothesis(D)
                except CapExceeded:
                    pass
                return SearchResult(D, report, family, shape, trial, tried)
    raise NotFound(f"no counterexample in {family!r} after {tried} instances")


def same_up_to_relabeling(G1, G2, max_size=8):
    """Do two move sets agree after permuting columns and flipping move signs?

    Tries every pairing of moves with every sign choice and compares the
    resulting column multisets; intended for listings of at most a few moves.
    """
    G1 = [tuple(g) for g in G1]
    G2 = [tuple(g) for g in G2]
    if len(G1) != len(G2) or (G1 and len(G1[0]) != len(G2[0])):
        return False
    if len(G1) > max_size:
        raise ValueError(f"relabeling check limited to {max_size} moves")
    if not G1:
        return True
    target = sorted(zip(*G1))
    for perm in permutations(range(len(G2))):
        for signs in product((1, -1), repeat=len(G2)):
            rows = [tuple(s * x for x in G2[p]) for p, s in zip(perm, signs)]
            if sorted(zip(*rows)) == target:
                return True
    return False
