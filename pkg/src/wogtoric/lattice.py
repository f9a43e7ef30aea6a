"""Exact integer linear algebra for toric matrices.

Moves are plain tuples of Python ints, so arithmetic never overflows.
A move ``v`` stands for the binomial ``e^{v+} - e^{v-}``.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
import re

from .errors import InputError

__all__ = [
    "ToricMatrix",
    "kernel_basis",
    "rank",
    "null_dim",
    "det",
    "plus",
    "minus",
    "canonical",
    "conformal_leq",
    "restrict",
    "render_binomial",
    "parse_binomial",
    "parse_matrix",
    "emit_matrix",
]


@dataclass(frozen=True)
class ToricMatrix:
    """Nonnegative integer matrix whose columns are generator exponents."""

    rows: tuple

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        if not rows or not rows[0]:
            raise InputError("matrix must have at least one row and one column")
        m = len(rows[0])
        if any(len(r) != m for r in rows):
            raise InputError("ragged matrix rows")
        if any(x < 0 for r in rows for x in r):
            raise InputError("toric matrix entries must be nonnegative")
        for j in range(m):
            if all(r[j] == 0 for r in rows):
                raise InputError(f"column {j + 1} is zero")

    @classmethod
    def from_columns(cls, columns):
        columns = [tuple(c) for c in columns]
        if not columns:
            raise InputError("need at least one column")
        return cls(tuple(zip(*columns)))

    @property
    def n(self):
        return len(self.rows)

    @property
    def m(self):
        return len(self.rows[0])

    @property
    def columns(self):
        return tuple(zip(*self.rows))

    def degree(self, u):
        """A-degree ``A @ u`` of an exponent vector."""
        return tuple(sum(a * x for a, x in zip(r, u) if x) for r in self.rows)

    def in_kernel(self, v):
        return not any(self.degree(v))

    def select_columns(self, idx):
        idx = list(idx)
        return ToricMatrix(tuple(tuple(r[j] for j in idx) for r in self.rows))

    def fingerprint(self):
        return f"{self.n}x{self.m}:" + ";".join(",".join(map(str, r)) for r in self.rows)


# ---------------------------------------------------------------------------
# elimination


def _as_rows(A):
    if isinstance(A, ToricMatrix):
        return [list(r) for r in A.rows]
    return [list(map(int, r)) for r in A]


def _bareiss(M):
    """Fraction-free forward elimination in place; returns (rank, sign, last pivot)."""
    n = len(M)
    m = len(M[0]) if n else 0
    prev = 1
    sign = 1
    r = 0
    for c in range(m):
        if r == n:
            break
        p = next((i for i in range(r, n) if M[i][c] != 0), None)
        if p is None:
            continue
        if p != r:
            M[r], M[p] = M[p], M[r]
            sign = -sign
        piv = M[r][c]
        for i in range(r + 1, n):
            a = M[i][c]
            row_i = M[i]
            row_r = M[r]
            for j in range(c, m):
                row_i[j] = (piv * row_i[j] - a * row_r[j]) // prev
        prev = piv
        r += 1
    return r, sign, prev


def rank(A):
    """Exact rank over the rationals."""
    M = _as_rows(A)
    if not M or not M[0]:
        return 0
    return _bareiss(M)[0]


def null_dim(A):
    M = _as_rows(A)
    return len(M[0]) - rank(M)


def det(A):
    """Exact determinant of a square integer matrix (Bareiss)."""
    M = _as_rows(A)
    n = len(M)
    if any(len(r) != n for r in M):
        raise InputError("determinant needs a square matrix")
    if n == 0:
        return 1
    r, sign, last = _bareiss(M)
    if r < n:
        return 0
    return sign * last


def _hermite_rows(M, ncols):
    """Unimodular row reduction of the first ``ncols`` columns to echelon form.

    Returns the number of pivot rows; rows below it are zero on those columns.
    """
    n = len(M)
    r = 0
    for c in range(ncols):
        if r == n:
            break
        while True:
            nz = [i for i in range(r, n) if M[i][c] != 0]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(M[i][c]))
            M[r], M[p] = M[p], M[r]
            piv = M[r][c]
            done = True
            for i in range(r + 1, n):
                if M[i][c]:
                    q = M[i][c] // piv
                    if q:
                        M[i] = [x - q * y for x, y in zip(M[i], M[r])]
                    if M[i][c]:
                        done = False
            if done:
                break
        if any(M[i][c] for i in range(r, n)):
            r += 1
    return r


def _size_reduce(basis):
    """Greedy pairwise reduction; keeps the lattice, shrinks the entries."""
    basis = [list(b) for b in basis]
    changed = True
    while changed:
        changed = False
        for i in range(len(basis)):
            for j in range(len(basis)):
                if i == j:
                    continue
                bj = basis[j]
                nj = sum(x * x for x in bj)
                dot = sum(x * y for x, y in zip(basis[i], bj))
                q = round(Fraction(dot, nj))
                if q:
                    cand = [x - q * y for x, y in zip(basis[i], bj)]
                    if sum(x * x for x in cand) < sum(x * x for x in basis[i]):
                        basis[i] = cand
                        changed = True
    return basis


def kernel_basis(A):
    """Saturated lattice basis of ``ker_Z(A)`` as a list of moves.

    Reduces ``[A^T | I]`` with unimodular row operations; the identity part of
    the rows whose ``A^T`` part vanished spans the integer kernel exactly.
    """
    rows = _as_rows(A)
    n = len(rows)
    m = len(rows[0])
    M = [[rows[i][j] for i in range(n)] + [1 if k == j else 0 for k in range(m)]
         for j in range(m)]
    r = _hermite_rows(M, n)
    basis = [row[n:] for row in M[r:]]
    if not basis:
        return []
    # echelonize the kernel block itself, then shrink it
    r2 = _hermite_rows(basis, m)
    basis = [b for b in basis[:r2]]
    basis = _size_reduce(basis)
    return [canonical(tuple(b)) for b in basis]


# ---------------------------------------------------------------------------
# moves


def plus(v):
    return tuple(x if x > 0 else 0 for x in v)


def minus(v):
    return tuple(-x if x < 0 else 0 for x in v)


def canonical(v):
    """Sign-normalize so the first nonzero entry is positive."""
    v = tuple(v)
    for x in v:
        if x:
            return v if x > 0 else tuple(-y for y in v)
    return v


def primitive_part(v):
    g = 0
    for x in v:
        g = gcd(g, x)
    if g <= 1:
        return tuple(v)
    return tuple(x // g for x in v)


def conformal_leq(u, v):
    """``u`` is conformally below ``v``: ``u+ <= v+`` and ``u- <= v-`` entrywise."""
    if len(u) != len(v):
        raise InputError("length mismatch")
    for a, b in zip(u, v):
        if a > 0:
            if b < a:
                return False
        elif a < 0:
            if b > a:
                return False
    return True


def restrict(v, S):
    S = set(S)
    m = len(v)
    for i in S:
        if not 0 <= i < m:
            raise InputError(f"index {i} out of range")
    return tuple(x if i in S else 0 for i, x in enumerate(v))


def _monomial(exps, names):
    parts = []
    for name, e in zip(names, exps):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts) if parts else "1"


def render_binomial(v, names=None):
    """Text form ``e1*e3^2 - e2^3`` of the binomial of a move."""
    if names is None:
        names = [f"e{i + 1}" for i in range(len(v))]
    if len(names) != len(v):
        raise InputError("names length mismatch")
    if not any(v):
        return "0"
    return f"{_monomial(plus(v), names)} - {_monomial(minus(v), names)}"


_FACTOR = re.compile(r"^([A-Za-z_][A-Za-z_0-9]*?)(?:\^(\d+))?$")


def _parse_monomial(text, index):
    exps = [0] * len(index)
    text = text.strip()
    if text == "1":
        return exps
    for factor in text.split("*"):
        mt = _FACTOR.match(factor.strip())
        if not mt or mt.group(1) not in index:
            raise InputError(f"bad factor {factor!r}")
        exps[index[mt.group(1)]] += int(mt.group(2) or 1)
    return exps


def parse_binomial(text, names):
    """Inverse of :func:`render_binomial`."""
    text = text.strip()
    if text == "0":
        return (0,) * len(names)
    index = {nm: i for i, nm in enumerate(names)}
    lhs, sep, rhs = text.partition(" - ")
    if not sep:
        raise InputError(f"not a binomial: {text!r}")
    p = _parse_monomial(lhs, index)
    q = _parse_monomial(rhs, index)
    return tuple(a - b for a, b in zip(p, q))


# ---------------------------------------------------------------------------
# matrix text format


def _content_lines(text):
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            yield line


def parse_matrix(text):
    lines = list(_content_lines(text))
    if not lines:
        raise InputError("empty matrix file")
    head = lines[0].split()
    if len(head) != 3 or head[0] != "matrix":
        raise InputError("expected header 'matrix <n> <m>'")
    try:
        n, m = int(head[1]), int(head[2])
        rows = [tuple(int(x) for x in ln.split()) for ln in lines[1:]]
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if len(rows) != n or any(len(r) != m for r in rows):
        raise InputError(f"expected {n} rows of {m} integers")
    return ToricMatrix(tuple(rows))


def emit_matrix(A):
    out = [f"matrix {A.n} {A.m}"]
    out += [" ".join(map(str, r)) for r in A.rows]
    return "\n".join(out) + "\n"
