"""Graver bases and circuits of toric matrices.

The main routine is a completion procedure: start from a lattice basis, keep
adding the conformal normal forms of pairwise sums until every sum reduces to
zero, then drop the elements that are not conformally minimal.
"""

from dataclasses import dataclass
from fractions import Fraction
from heapq import heappop, heappush
from itertools import combinations
from math import lcm

import numpy as np

from .errors import BudgetExceeded
from .lattice import ToricMatrix, canonical, conformal_leq, kernel_basis, primitive_part

DEFAULT_GRAVER_CAP = 1_000_000
DEFAULT_BRUTE_CAP = 10**7
DEFAULT_SUBSET_CAP = 10**6


@dataclass(frozen=True)
class GraverSet:
    """Canonically signed, sorted, duplicate-free set of moves."""

    moves: tuple
    fingerprint: str = ""

    @classmethod
    def build(cls, moves, A=None):
        ms = tuple(sorted({canonical(tuple(v)) for v in moves if any(v)}))
        return cls(ms, A.fingerprint() if A is not None else "")

    def __iter__(self):
        return iter(self.moves)

    def __len__(self):
        return len(self.moves)

    def __contains__(self, v):
        return canonical(tuple(v)) in self.as_set()

    def as_set(self):
        return frozenset(self.moves)

    def max_norm(self):
        return max((abs(x) for v in self.moves for x in v), default=0)


# ---------------------------------------------------------------------------
# conformal reduction


def _masks(v):
    p = n = 0
    for i, x in enumerate(v):
        if x > 0:
            p |= 1 << i
        elif x < 0:
            n |= 1 << i
    return p, n


class _Reducer:
    """Symmetric reduction set ``±G`` with support bitmasks for fast filtering."""

    def __init__(self, moves=()):
        self.items = []
        for g in moves:
            self.add(g)

    def add(self, g):
        p, n = _masks(g)
        self.items.append((p, n, g))
        self.items.append((n, p, tuple(-x for x in g)))

    def __len__(self):
        return len(self.items) // 2

    def normal_form(self, v):
        v = list(v)
        while True:
            vp, vn = _masks(v)
            if not (vp or vn):
                return tuple(v)
            for p, n, g in self.items:
                if p & ~vp or n & ~vn:
                    continue
                k = None
                for x, y in zip(g, v):
                    if x:
                        q = y // x
                        if q < 1:
                            k = 0
                            break
                        if k is None or q < k:
                            k = q
                if k:
                    v = [y - k * x for x, y in zip(g, v)]
                    break
            else:
                return tuple(v)


def conformal_normal_form(v, moves):
    """Reduce ``v`` by ``±moves`` until no move is conformally below it."""
    return _Reducer(moves).normal_form(v)


def _sign_compatible(u, v):
    return all(a * b >= 0 for a, b in zip(u, v))


def _minimal_elements(moves):
    """Keep moves with no other nonzero move (up to sign) conformally below them."""
    moves = sorted(set(moves), key=lambda v: (sum(map(abs, v)), v))
    keep = []
    red = []
    for v in moves:
        vp, vn = _masks(v)
        dominated = False
        for p, n, g in red:
            if p & ~vp or n & ~vn:
                continue
            if conformal_leq(g, v):
                dominated = True
                break
        if not dominated:
            keep.append(v)
            p, n = _masks(v)
            red.append((p, n, v))
            red.append((n, p, tuple(-x for x in v)))
    return keep


def _completion(rows, cap):
    basis = kernel_basis(rows)
    if not basis:
        return []
    red = _Reducer()
    G = []
    heap = []
    queued = set()

    def push(s):
        s = canonical(s)
        if any(s) and s not in queued:
            queued.add(s)
            heappush(heap, (sum(map(abs, s)), s))

    for b in basis:
        push(b)
    while heap:
        if len(G) + len(heap) > cap:
            raise BudgetExceeded("Graver completion working set", cap)
        _, s = heappop(heap)
        r = red.normal_form(s)
        if not any(r):
            continue
        r = canonical(r)
        neg = tuple(-x for x in r)
        for g in G:
            if not _sign_compatible(r, g):
                push(tuple(a + b for a, b in zip(r, g)))
            if not _sign_compatible(neg, g):
                push(tuple(b - a for a, b in zip(r, g)))
        G.append(r)
        red.add(r)
    return _minimal_elements(G)


def _split(A):
    """Active column groups after discarding columns forced to zero.

    A row with a single nonzero entry among the active columns pins that
    column to zero in every kernel vector; repeat until stable, then group the
    remaining columns by shared nonzero rows.
    """
    rows = A.rows
    active = set(range(A.m))
    changed = True
    while changed:
        changed = False
        for r in rows:
            nz = [j for j in active if r[j]]
            if len(nz) == 1:
                active.discard(nz[0])
                changed = True
    parent = {j: j for j in active}

    def find(j):
        while parent[j] != j:
            parent[j] = parent[parent[j]]
            j = parent[j]
        return j

    for r in rows:
        nz = [j for j in sorted(active) if r[j]]
        for j in nz[1:]:
            a, b = find(nz[0]), find(j)
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups = {}
    for j in sorted(active):
        groups.setdefault(find(j), []).append(j)
    return list(groups.values())


def graver_basis(A, cap=DEFAULT_GRAVER_CAP):
    """Graver basis of ``ker_Z(A)`` by completion."""
    if not isinstance(A, ToricMatrix):
        A = ToricMatrix(A)
    out = []
    for cols in _split(A):
        if len(cols) < 2:
            continue
        sub = [[r[j] for j in cols] for r in A.rows]
        sub = [r for r in sub if any(r)]
        for g in _completion(sub, cap):
            full = [0] * A.m
            for j, x in zip(cols, g):
                full[j] = x
            out.append(tuple(full))
    return GraverSet.build(out, A)


# ---------------------------------------------------------------------------
# independent oracle


def _rref(rows):
    """Reduced row echelon form over Q; returns (rows, pivot columns)."""
    M = [[Fraction(x) for x in r] for r in rows]
    n = len(M)
    m = len(M[0]) if n else 0
    pivots = []
    r = 0
    for c in range(m):
        p = next((i for i in range(r, n) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        pv = M[r][c]
        M[r] = [x / pv for x in M[r]]
        for i in range(n):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == n:
            break
    return M[:r], pivots


def brute_force_graver(A, box, cap=DEFAULT_BRUTE_CAP):
    """Conformally minimal kernel vectors with every entry in ``[-box, box]``.

    Free variables of the rational echelon form are enumerated over the box;
    pivot variables are solved for and kept only when integral and in range.
    """
    if box < 1:
        raise ValueError("box must be >= 1")
    if not isinstance(A, ToricMatrix):
        A = ToricMatrix(A)
    m = A.m
    R, pivots = _rref(A.rows)
    free = [c for c in range(m) if c not in pivots]
    if not free:
        return GraverSet.build([], A)
    k = len(free)
    total = (2 * box + 1) ** k
    if total > cap:
        raise BudgetExceeded("brute-force box enumeration", cap)
    # pivot p: den_p * x_p = -sum_f num_pf * x_f
    dens = []
    nums = []
    for row in R:
        d = 1
        for c in free:
            d = lcm(d, row[c].denominator)
        dens.append(d)
        nums.append([int(row[c] * d) for c in free])
    span = np.arange(-box, box + 1, dtype=np.int64)
    grid = np.stack(np.meshgrid(*([span] * k), indexing="ij"), axis=-1).reshape(-1, k)
    X = np.zeros((grid.shape[0], m), dtype=np.int64)
    X[:, free] = grid
    ok = np.ones(grid.shape[0], dtype=bool)
    for p, d, num in zip(pivots, dens, nums):
        rhs = -(grid @ np.array(num, dtype=np.int64))
        ok &= rhs % d == 0
        val = rhs // d
        ok &= np.abs(val) <= box
        X[:, p] = val
    X = X[ok]
    X = X[np.any(X != 0, axis=1)]
    # exact recheck of A x = 0
    Am = np.array(A.rows, dtype=np.int64)
    assert not np.any(X @ Am.T), "oracle produced a non-kernel vector"
    order = np.lexsort((np.abs(X).sum(axis=1),))
    X = X[order]
    found = []
    alive = np.ones(X.shape[0], dtype=bool)
    pos = np.where(X > 0, X, 0)
    neg = np.where(X < 0, -X, 0)
    for i in range(X.shape[0]):
        if not alive[i]:
            continue
        v = X[i]
        found.append(tuple(int(x) for x in v))
        vp = pos[i]
        vn = neg[i]
        dominated = np.all(pos >= vp, axis=1) & np.all(neg >= vn, axis=1)
        alive &= ~dominated
    return GraverSet.build(found, A)


# ---------------------------------------------------------------------------
# certificate


def certificate_check(A, G):
    """Verify that ``G`` is exactly the Graver basis of ``A``.

    Returns ``(ok, witness)`` where the witness is ``None`` or a pair
    ``(reason, vector)``.
    """
    if not isinstance(A, ToricMatrix):
        A = ToricMatrix(A)
    moves = [tuple(g) for g in G]
    for g in moves:
        if not any(g):
            return False, ("zero move", g)
        if not A.in_kernel(g):
            return False, ("not in kernel", g)
    for g, h in combinations(moves, 2):
        if canonical(g) == canonical(h):
            return False, ("duplicate up to sign", g)
        for hh in (h, tuple(-x for x in h)):
            if conformal_leq(g, hh) or conformal_leq(hh, g):
                return False, ("comparable pair", (g, h))
    red = _Reducer(moves)
    signed = moves + [tuple(-x for x in g) for g in moves]
    for g, h in combinations(signed, 2):
        s = tuple(a + b for a, b in zip(g, h))
        r = red.normal_form(s)
        if any(r):
            return False, ("unreduced sum", r)
    for b in kernel_basis(A):
        r = red.normal_form(b)
        if any(r):
            return False, ("unreduced lattice vector", r)
    return True, None


# ---------------------------------------------------------------------------
# circuits


def circuits(A, cap=DEFAULT_SUBSET_CAP):
    """Primitive kernel vectors with inclusion-minimal support.

    With ``K`` a kernel basis of dimension ``k``, each choice of ``k - 1``
    coordinates whose rows of ``K`` are independent cuts the kernel down to a
    line, and that line is spanned by a circuit; every circuit arises so.
    Cost is ``C(m, k - 1)`` small solves, cheap when the kernel is thin.
    """
    if not isinstance(A, ToricMatrix):
        A = ToricMatrix(A)
    K = kernel_basis(A)
    k = len(K)
    if k == 0:
        return GraverSet.build([], A)
    m = A.m
    cols = list(zip(*K))  # row j of the m x k basis matrix
    out = set()
    seen = 0
    for T in combinations(range(m), k - 1):
        seen += 1
        if seen > cap:
            raise BudgetExceeded("circuit subset enumeration", cap)
        if T:
            R, pivots = _rref([cols[j] for j in T])
            if len(pivots) != k - 1:
                continue
            f = next(c for c in range(k) if c not in pivots)
            x = [Fraction(0)] * k
            x[f] = Fraction(1)
            for row, p in zip(R, pivots):
                x[p] = -row[f]
        else:
            x = [Fraction(1)]
        d = 1
        for t in x:
            d = lcm(d, t.denominator)
        xi = [int(t * d) for t in x]
        v = [sum(c * b[j] for c, b in zip(xi, K)) for j in range(m)]
        out.add(canonical(primitive_part(v)))
    return GraverSet.build(out, A)
