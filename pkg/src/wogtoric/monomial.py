"""Monomial ideals given by exponent vectors, and the private-shared-variable test."""

from dataclasses import dataclass

from .errors import InputError
from .lattice import ToricMatrix


@dataclass(frozen=True)
class MonomialIdealPresentation:
    variable_count: int
    generators: tuple

    def __post_init__(self):
        gens = tuple(tuple(int(x) for x in g) for g in self.generators)
        object.__setattr__(self, "generators", gens)
        if self.variable_count < 1:
            raise InputError("need at least one variable")
        for g in gens:
            if len(g) != self.variable_count:
                raise InputError(f"generator {g} has wrong length")
            if any(x < 0 for x in g) or not any(g):
                raise InputError(f"generator {g} must be nonzero and nonnegative")
        for i, g in enumerate(gens):
            for k, h in enumerate(gens):
                if i != k and _divides(g, h):
                    raise InputError(f"generator {h} is divisible by {g}; not minimal")


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def minimalize(generators):
    """Divisibility-minimal, deduplicated generators in lexicographic order."""
    gens = sorted({tuple(int(x) for x in g) for g in generators})
    if not gens:
        raise InputError("empty generator list")
    n = len(gens[0])
    keep = [g for g in gens if not any(h != g and _divides(h, g) for h in gens)]
    return MonomialIdealPresentation(n, tuple(keep))


def toric_matrix(M):
    return ToricMatrix.from_columns(M.generators)


def support(g):
    return frozenset(i for i, x in enumerate(g) if x)


def theorem_hypothesis(M):
    """Every generator has two variables, one of which it shares with exactly one other generator.

    Returns ``(ok, witness)``.  On success the witness maps generator ``i`` to a
    pair ``(l, j)``: variable ``l`` occurs in generators ``i`` and ``j`` only.
    On failure it is ``{"generator": i, "reason": ...}``.
    """
    gens = M.generators
    occurs = {}
    for i, g in enumerate(gens):
        for l in support(g):
            occurs.setdefault(l, []).append(i)
    witness = {}
    for i, g in enumerate(gens):
        if len(support(g)) != 2:
            return False, {"generator": i, "reason": "support size is not 2"}
        for l in sorted(support(g)):
            if len(occurs[l]) == 2:
                j = occurs[l][0] if occurs[l][1] == i else occurs[l][1]
                witness[i] = (l, j)
                break
        else:
            return False, {"generator": i, "reason": "no variable shared with exactly one other generator"}
    return True, witness


def parse_monomials(text):
    n = None
    gens = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if n is None:
                if parts[0] != "monomials" or len(parts) != 2:
                    raise InputError(f"line {lineno}: expected header 'monomials <n>'")
                n = int(parts[1])
            else:
                g = tuple(int(x) for x in parts)
                if len(g) != n:
                    raise InputError(f"line {lineno}: expected {n} exponents")
                gens.append(g)
        except ValueError as exc:
            if isinstance(exc, InputError):
                raise
            raise InputError(f"line {lineno}: {exc}") from None
    if n is None:
        raise InputError("missing 'monomials <n>' header")
    if not gens:
        raise InputError("no generators")
    return minimalize(gens)


def emit_monomials(M):
    out = [f"monomials {M.variable_count}"]
    out += [" ".join(map(str, g)) for g in M.generators]
    return "\n".join(out) + "\n"
