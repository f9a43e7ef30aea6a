"""Instance generators and small independent oracles shared by the test modules."""

from fractions import Fraction
import itertools
import random

from wogtoric.graph import WeightedOrientedGraph
from wogtoric.lattice import ToricMatrix


def random_matrix(rng, max_rows=5, max_cols=6, max_entry=3):
    n = rng.randint(1, max_rows)
    m = rng.randint(1, max_cols)
    rows = [[rng.randint(0, max_entry) for _ in range(m)] for _ in range(n)]
    for j in range(m):
        if not any(r[j] for r in rows):
            rows[rng.randrange(n)][j] = rng.randint(1, max_entry)
    return ToricMatrix(rows)


def random_graph(rng, max_vertices=7, max_edges=9, max_weight=3, min_vertices=3, max_excess=2):
    """Random simple graph; at most ``nv + max_excess`` edges keeps the kernel rank small."""
    nv = rng.randint(min_vertices, max_vertices)
    pairs = list(itertools.combinations(range(nv), 2))
    rng.shuffle(pairs)
    top = min(max_edges, len(pairs))
    if max_excess is not None:
        top = min(top, nv + max_excess)
    ne = rng.randint(1, top)
    edges = tuple((a, b) if rng.random() < 0.5 else (b, a) for a, b in pairs[:ne])
    weights = tuple(rng.randint(1, max_weight) for _ in range(nv))
    return WeightedOrientedGraph(weights, edges)


def cycle_graph(length, weights, alternating=True):
    """Cycle on vertices 0..L-1; alternating orientation makes every other edge point backwards."""
    edges = []
    for k in range(length):
        t, h = k, (k + 1) % length
        if alternating and k % 2:
            t, h = h, t
        edges.append((t, h))
    return WeightedOrientedGraph(tuple(weights), tuple(edges))


def naive_incidence(D):
    """Column per edge: exponent vector of x_tail * x_head^w_head."""
    cols = []
    for t, h in D.edges:
        col = [0] * D.vertex_count
        col[t] += 1
        col[h] += D.weights[h]
        cols.append(col)
    return [list(r) for r in zip(*cols)]


def naive_fiber(A, b):
    top = max(b) if b else 0
    out = []
    for w in itertools.product(range(top + 1), repeat=A.m):
        if A.degree(w) == tuple(b):
            out.append(w)
    return sorted(out)


def fraction_det(M):
    M = [[Fraction(x) for x in r] for r in M]
    n = len(M)
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if M[i][c] != 0), None)
        if p is None:
            return 0
        if p != c:
            M[c], M[p] = M[p], M[c]
            d = -d
        d *= M[c][c]
        for i in range(c + 1, n):
            f = M[i][c] / M[c][c]
            M[i] = [x - f * y for x, y in zip(M[i], M[c])]
    return int(d)


def seeded(seed):
    return random.Random(seed)
