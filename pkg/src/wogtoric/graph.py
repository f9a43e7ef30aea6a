"""Vertex-weighted oriented graphs and the structural hypotheses on them.

Vertices are 0-based internally; the text format is 1-based.  Cycles are the
simple cycles of the underlying undirected graph, orientation plays no role.
"""

from collections import defaultdict
from dataclasses import dataclass, field
from itertools import combinations

from .errors import CycleCapExceeded, InputError, PathCapExceeded
from .lattice import ToricMatrix, det

DEFAULT_CYCLE_CAP = 10_000
DEFAULT_PATH_CAP = 100_000


@dataclass(frozen=True)
class WeightedOrientedGraph:
    weights: tuple
    edges: tuple

    def __post_init__(self):
        weights = tuple(int(w) for w in self.weights)
        edges = tuple((int(t), int(h)) for t, h in self.edges)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "edges", edges)
        n = len(weights)
        if n < 1:
            raise InputError("graph needs at least one vertex")
        if any(w < 1 for w in weights):
            raise InputError("weights must be positive integers")
        seen = set()
        for t, h in edges:
            if not (0 <= t < n and 0 <= h < n):
                raise InputError(f"edge ({t + 1},{h + 1}) has an unknown endpoint")
            if t == h:
                raise InputError(f"loop at vertex {t + 1}")
            key = frozenset((t, h))
            if key in seen:
                raise InputError(f"multiple edge between {t + 1} and {h + 1}")
            seen.add(key)

    @property
    def vertex_count(self):
        return len(self.weights)

    @property
    def edge_count(self):
        return len(self.edges)

    def incident_edges(self, v):
        return [j for j, (t, h) in enumerate(self.edges) if v in (t, h)]

    def adjacency(self):
        """vertex -> sorted list of (neighbour, edge index)."""
        adj = defaultdict(list)
        for j, (t, h) in enumerate(self.edges):
            adj[t].append((h, j))
            adj[h].append((t, j))
        return {v: sorted(adj[v]) for v in range(self.vertex_count)}

    def edge_subgraph(self, keep):
        """Spanning subgraph on the same vertices with edges ``keep`` (in order)."""
        return WeightedOrientedGraph(self.weights, tuple(self.edges[j] for j in keep))

    def reversed_edge(self, j):
        edges = list(self.edges)
        t, h = edges[j]
        edges[j] = (h, t)
        return WeightedOrientedGraph(self.weights, tuple(edges))


@dataclass(frozen=True)
class Cycle:
    edge_indices: tuple
    vertex_sequence: tuple

    def __len__(self):
        return len(self.edge_indices)

    @property
    def edge_set(self):
        return frozenset(self.edge_indices)

    @property
    def vertex_set(self):
        return frozenset(self.vertex_sequence)


@dataclass
class StructureReport:
    every_edge_meets_degree2: bool
    cycles_share_single_vertex: bool
    no_two_cycles_share_path: bool
    main_theorem_hypothesis: bool
    witnesses: list = field(default_factory=list)
    path_rule: str = "connecting paths avoid all cycle vertices internally and use no cycle edge"

    def as_dict(self):
        return {
            "every_edge_meets_degree2": self.every_edge_meets_degree2,
            "cycles_share_single_vertex": self.cycles_share_single_vertex,
            "no_two_cycles_share_path": self.no_two_cycles_share_path,
            "main_theorem_hypothesis": self.main_theorem_hypothesis,
            "path_rule": self.path_rule,
            "witnesses": [[name, list(idx)] for name, idx in self.witnesses],
        }


# ---------------------------------------------------------------------------
# matrices and degrees


def incidence_matrix(D):
    """Column j is the exponent vector of ``x_tail * x_head^w_head``."""
    n = D.vertex_count
    cols = []
    for t, h in D.edges:
        col = [0] * n
        col[t] = 1
        col[h] = D.weights[h]
        cols.append(col)
    if not cols:
        raise InputError("graph has no edges")
    return ToricMatrix.from_columns(cols)


def vertex_degree(D, v):
    if not 0 <= v < D.vertex_count:
        raise InputError(f"vertex {v} out of range")
    return sum(1 for t, h in D.edges if v in (t, h))


def degrees(D):
    deg = [0] * D.vertex_count
    for t, h in D.edges:
        deg[t] += 1
        deg[h] += 1
    return deg


def connected_components(D):
    """Vertex sets of the underlying undirected components, sorted."""
    adj = D.adjacency()
    seen = set()
    comps = []
    for s in range(D.vertex_count):
        if s in seen:
            continue
        stack = [s]
        seen.add(s)
        comp = []
        while stack:
            u = stack.pop()
            comp.append(u)
            for w, _ in adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


# ---------------------------------------------------------------------------
# cycles


def enumerate_cycles(D, cap=DEFAULT_CYCLE_CAP):
    """All simple cycles of the underlying graph, one per rotation/reflection class.

    Each cycle is rooted at its smallest vertex and the direction is fixed by
    requiring the second vertex to be smaller than the last one.
    """
    adj = D.adjacency()
    found = []

    for s in range(D.vertex_count):
        path = [s]
        epath = []
        on_path = {s}
        stack = [iter(adj[s])]
        while stack:
            nxt = next(stack[-1], None)
            if nxt is None:
                stack.pop()
                if epath:
                    epath.pop()
                on_path.discard(path.pop())
                continue
            w, j = nxt
            if w == s and len(path) >= 3:
                if path[1] < path[-1]:
                    found.append(Cycle(tuple(epath + [j]), tuple(path)))
                    if len(found) > cap:
                        raise CycleCapExceeded(cap)
                continue
            if w <= s or w in on_path:
                continue
            path.append(w)
            epath.append(j)
            on_path.add(w)
            stack.append(iter(adj[w]))
    found.sort(key=lambda c: (len(c), c.vertex_sequence))
    return found


def cycle_matrix(D, C):
    """Square incidence matrix of the cycle alone, ordered along the cycle.

    Row k is vertex ``v_k``; column k is the edge joining ``v_k`` and ``v_{k+1}``.
    """
    verts = C.vertex_sequence
    rows = []
    for v in verts:
        row = []
        for j in C.edge_indices:
            t, h = D.edges[j]
            row.append(1 if v == t else D.weights[h] if v == h else 0)
        rows.append(row)
    return rows


def is_balanced(D, C):
    return det(cycle_matrix(D, C)) == 0


# ---------------------------------------------------------------------------
# hypothesis checkers


def every_edge_meets_degree_two(D):
    """Return ``(ok, witness_edge)``; the witness is None when ok."""
    deg = degrees(D)
    for j, (t, h) in enumerate(D.edges):
        if deg[t] != 2 and deg[h] != 2:
            return False, j
    return True, None


def no_two_cycles_share_path(D, cycles=None, cap=DEFAULT_CYCLE_CAP):
    """No two distinct cycles have an edge in common.

    Returns ``(ok, (i, k))`` with indices into the cycle list on failure.
    """
    if cycles is None:
        cycles = enumerate_cycles(D, cap)
    owner = {}
    for i, C in enumerate(cycles):
        for j in C.edge_indices:
            if j in owner:
                return False, (owner[j], i)
            owner[j] = i
    return True, None


def cycles_share_single_vertex(D, cycles=None, cap=DEFAULT_CYCLE_CAP):
    """D is a union of >= 1 cycles through one common vertex, pairwise meeting only there.

    Returns ``(ok, witness)`` where the witness is an offending edge or cycle pair.
    """
    if cycles is None:
        cycles = enumerate_cycles(D, cap)
    if not cycles:
        return False, ("no cycle", ())
    covered = set()
    for C in cycles:
        covered |= C.edge_set
    stray = [j for j in range(D.edge_count) if j not in covered]
    if stray:
        return False, ("edge on no cycle", (stray[0],))
    common = frozenset.intersection(*(C.vertex_set for C in cycles))
    if not common:
        return False, ("no common vertex", (0, len(cycles) - 1))
    for i, k in combinations(range(len(cycles)), 2):
        if len(cycles[i].vertex_set & cycles[k].vertex_set) != 1:
            return False, ("cycles meet in more than one vertex", (i, k))
    return True, None


def _connecting_paths(D, cycles, cap):
    """All connecting paths between distinct cycles.

    A connecting path from cycle ``a`` to cycle ``b`` starts on ``V(a)``, ends on
    ``V(b)``, never uses a cycle edge and has no interior vertex on any cycle.
    Cycles sharing a vertex are joined by the empty path.  Returns a dict
    ``(a, b) -> list of frozenset(edge indices)`` for ``a != b``.
    """
    on_cycle = set()
    cycle_edges = set()
    for C in cycles:
        on_cycle |= C.vertex_set
        cycle_edges |= C.edge_set
    adj = D.adjacency()
    members = defaultdict(list)
    for i, C in enumerate(cycles):
        for v in C.vertex_sequence:
            members[v].append(i)

    paths = defaultdict(set)
    count = 0

    def record(u, w, edges):
        nonlocal count
        for a in members[u]:
            for b in members[w]:
                if a != b:
                    paths[(a, b)].add(edges)
                    count += 1
                    if count > cap:
                        raise PathCapExceeded(cap)

    for v in sorted(on_cycle):
        record(v, v, frozenset())

    for s in sorted(on_cycle):
        # DFS along non-cycle edges through non-cycle vertices
        stack = [(s, (), frozenset([s]))]
        while stack:
            u, epath, visited = stack.pop()
            for w, j in adj[u]:
                if j in cycle_edges or w in visited:
                    continue
                if w in on_cycle:
                    record(s, w, frozenset(epath + (j,)))
                else:
                    stack.append((w, epath + (j,), visited | {w}))
                    count += 1
                    if count > cap:
                        raise PathCapExceeded(cap)
    return {k: sorted(v, key=sorted) for k, v in paths.items()}


def main_theorem_hypothesis(D, cycle_cap=DEFAULT_CYCLE_CAP, path_cap=DEFAULT_PATH_CAP):
    """Check the full hypothesis of the cycles-and-connecting-paths criterion."""
    cycles = enumerate_cycles(D, cycle_cap)
    deg = degrees(D)
    witnesses = []

    eok, ewit = every_edge_meets_degree_two(D)
    if not eok:
        witnesses.append(("every_edge_meets_degree2", (ewit,)))
    bok, bwit = cycles_share_single_vertex(D, cycles)
    if not bok:
        witnesses.append((f"cycles_share_single_vertex:{bwit[0]}", tuple(bwit[1])))
    pok, pwit = no_two_cycles_share_path(D, cycles)
    if not pok:
        witnesses.append(("no_two_cycles_share_path", pwit))

    main_ok = pok
    if not pok:
        witnesses.append(("main_theorem:cycles_share_path", pwit))

    def meets_deg2(j):
        t, h = D.edges[j]
        return deg[t] == 2 or deg[h] == 2

    for i, C in enumerate(cycles):
        bad = [j for j in C.edge_indices if not meets_deg2(j)]
        if bad:
            main_ok = False
            witnesses.append(("main_theorem:cycle_edge_without_degree2", (bad[0], i)))
            break

    if main_ok and len(cycles) >= 3:
        paths = _connecting_paths(D, cycles, path_cap)
        k = len(cycles)
        # cycles touching another cycle's vertex set
        touches = [any(cycles[c].vertex_set & cycles[o].vertex_set for o in range(k) if o != c)
                   for c in range(k)]

        def cond_ii(c3, e):
            if touches[c3]:
                return False
            for o in range(k):
                if o != c3 and any(e not in p for p in paths.get((c3, o), ())):
                    return False
            return True

        violation = None
        for c3 in range(k):
            for c1, c2 in combinations([c for c in range(k) if c != c3], 2):
                for p1 in paths.get((c1, c3), ()):
                    for p2 in paths.get((c2, c3), ()):
                        for e in sorted(p1 & p2):
                            if meets_deg2(e) or cond_ii(c3, e):
                                continue
                            violation = (e, c1, c2, c3)
                            break
                        if violation:
                            break
                    if violation:
                        break
                if violation:
                    break
            if violation:
                break
        if violation:
            main_ok = False
            witnesses.append(("main_theorem:shared_path_edge", violation))

    return StructureReport(
        every_edge_meets_degree2=eok,
        cycles_share_single_vertex=bok,
        no_two_cycles_share_path=pok,
        main_theorem_hypothesis=main_ok,
        witnesses=witnesses,
    )


# ---------------------------------------------------------------------------
# text format


def parse_wog(text):
    n = None
    weights = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if n is None:
                if parts[0] != "wog" or len(parts) != 2:
                    raise InputError(f"line {lineno}: expected header 'wog <n>'")
                n = int(parts[1])
                if n < 1:
                    raise InputError("vertex count must be positive")
            elif parts[0] == "weights":
                if weights is not None:
                    raise InputError(f"line {lineno}: duplicate weights line")
                weights = tuple(int(x) for x in parts[1:])
            elif parts[0] == "edge" and len(parts) == 3:
                edges.append((int(parts[1]) - 1, int(parts[2]) - 1))
            else:
                raise InputError(f"line {lineno}: cannot parse {line!r}")
        except ValueError as exc:
            if isinstance(exc, InputError):
                raise
            raise InputError(f"line {lineno}: {exc}") from None
    if n is None:
        raise InputError("missing 'wog <n>' header")
    if weights is None:
        raise InputError("missing weights line")
    if len(weights) != n:
        raise InputError(f"expected {n} weights, got {len(weights)}")
    return WeightedOrientedGraph(weights, tuple(edges))


def emit_wog(D):
    out = [f"wog {D.vertex_count}", "weights " + " ".join(map(str, D.weights))]
    out += [f"edge {t + 1} {h + 1}" for t, h in D.edges]
    return "\n".join(out) + "\n"
