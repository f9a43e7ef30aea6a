"""Command-line front end.

Exit codes: 0 done, 1 oracle mismatch, 2 inconclusive (a cap was hit),
3 bad input or usage, 4 counterexample search found nothing.
"""

import argparse
import json
import random
import sys
import time

from .errors import CapExceeded, InputError, NotFound
from .graph import (DEFAULT_CYCLE_CAP, DEFAULT_PATH_CAP, emit_wog, incidence_matrix,
                    main_theorem_hypothesis, parse_wog)
from .graver import DEFAULT_GRAVER_CAP, brute_force_graver, certificate_check, circuits, graver_basis
from .lattice import ToricMatrix, parse_matrix, render_binomial
from .markov import DEFAULT_FIBER_CAP, REPORT_VERSION, indispensable, strongly_robust
from .monomial import parse_monomials, theorem_hypothesis, toric_matrix
from .search import ALIASES, FAMILIES, search_counterexample

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INCONCLUSIVE = 2
EXIT_INPUT = 3
EXIT_NOT_FOUND = 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _positive(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


class Loaded:
    """Parsed input: the toric matrix plus the graph or monomial presentation it came from."""

    def __init__(self, kind, matrix, graph=None, monomials=None):
        self.kind = kind
        self.matrix = matrix
        self.graph = graph
        self.monomials = monomials

    @property
    def names(self):
        return tuple(f"e{j + 1}" for j in range(self.matrix.m))


def load(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    head = ""
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            head = line.split()[0]
            break
    if head == "wog":
        D = parse_wog(text)
        return Loaded("wog", incidence_matrix(D), graph=D)
    if head == "monomials":
        M = parse_monomials(text)
        return Loaded("monomials", toric_matrix(M), monomials=M)
    if head == "matrix":
        return Loaded("matrix", parse_matrix(text))
    raise InputError(f"{path}: unknown format (expected a 'wog', 'monomials' or 'matrix' header)")


def _write(path, text):
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc.strerror}") from None


def _moves_text(G):
    return "".join(" ".join(map(str, g)) + "\n" for g in G)


def _hypotheses(loaded, args):
    if loaded.graph is not None:
        return main_theorem_hypothesis(loaded.graph, args.cap_cycles, args.cap_paths)
    return None


# ---------------------------------------------------------------------------
# verbs


def _move_listing(args, compute, title):
    loaded = load(args.input)
    G = compute(loaded)
    if args.out:
        _write(args.out, _moves_text(G))
    if args.format == "machine":
        sys.stdout.write(_moves_text(G))
    else:
        print(f"{title}: {len(G)} move(s)")
        for g in G:
            print("  " + render_binomial(g, loaded.names))
    return EXIT_OK


def cmd_graver(args):
    return _move_listing(args, lambda L: graver_basis(L.matrix, args.cap_graver), "graver basis")


def cmd_circuits(args):
    return _move_listing(args, lambda L: circuits(L.matrix), "circuits")


def cmd_indispensable(args):
    def go(L):
        G = graver_basis(L.matrix, args.cap_graver)
        return indispensable(L.matrix, G, args.cap_fiber)
    return _move_listing(args, go, "indispensable binomials")


def _emit_report(args, report, extra=None):
    doc = report.to_dict(include_timings=args.timings)
    if extra:
        doc.update(extra)
    text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    if args.out:
        _write(args.out, text)
    if args.format == "machine":
        sys.stdout.write(text)
    else:
        sys.stdout.write(report.to_table())
        if extra and "circuits" in extra:
            print(f"circuits          {len(extra['circuits'])}")
    return EXIT_OK if report.status == "ok" else EXIT_INCONCLUSIVE


def _robust(args, loaded, hyp):
    return strongly_robust(loaded.matrix, hypotheses=hyp, graver_cap=args.cap_graver,
                           fiber_cap=args.cap_fiber, names=loaded.names)


def cmd_check_robust(args):
    loaded = load(args.input)
    return _emit_report(args, _robust(args, loaded, None))


def cmd_analyze(args):
    loaded = load(args.input)
    try:
        hyp = _hypotheses(loaded, args)
    except CapExceeded as exc:
        print(f"hypothesis check inconclusive: {exc}", file=sys.stderr)
        hyp = None
    report = _robust(args, loaded, hyp)
    extra = {"input_kind": loaded.kind}
    if report.status == "ok":
        try:
            extra["circuits"] = [list(c) for c in circuits(loaded.matrix)]
        except CapExceeded as exc:
            extra["circuits_cap_message"] = str(exc)
    if loaded.monomials is not None:
        ok, wit = theorem_hypothesis(loaded.monomials)
        extra["monomial_hypothesis"] = {"holds": ok, "witness": {str(k): v for k, v in wit.items()}}
    return _emit_report(args, report, extra)


def cmd_check_hypotheses(args):
    loaded = load(args.input)
    if loaded.graph is not None:
        h = main_theorem_hypothesis(loaded.graph, args.cap_cycles, args.cap_paths)
        doc = {"report_version": REPORT_VERSION, "input_kind": "wog", **h.as_dict()}
        lines = [
            f"every edge meets degree-2 vertex   {h.every_edge_meets_degree2}",
            f"cycles share a single vertex       {h.cycles_share_single_vertex}",
            f"no two cycles share a path         {h.no_two_cycles_share_path}",
            f"cycles-and-paths criterion         {h.main_theorem_hypothesis}",
            f"path rule: {h.path_rule}",
        ] + [f"witness {name}: {list(idx)}" for name, idx in h.witnesses]
    elif loaded.monomials is not None:
        ok, wit = theorem_hypothesis(loaded.monomials)
        doc = {"report_version": REPORT_VERSION, "input_kind": "monomials", "holds": ok,
               "witness": {str(k): v for k, v in wit.items()}}
        lines = [f"two-support private-variable condition   {ok}"]
        lines += [f"  {k}: {v}" for k, v in sorted(wit.items(), key=lambda kv: str(kv[0]))]
    else:
        raise InputError("hypothesis checks need a graph or monomial input")
    text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    if args.out:
        _write(args.out, text)
    sys.stdout.write(text if args.format == "machine" else "\n".join(lines) + "\n")
    return EXIT_OK


def random_matrix(rng, max_rows=5, max_cols=6, max_entry=3):
    """Random nonnegative matrix with no zero column."""
    n = rng.randint(1, max_rows)
    m = rng.randint(1, max_cols)
    rows = [[rng.randint(0, max_entry) for _ in range(m)] for _ in range(n)]
    for j in range(m):
        if not any(r[j] for r in rows):
            rows[rng.randrange(n)][j] = rng.randint(1, max_entry)
    return ToricMatrix(rows)


def verify_against_oracle(A, cap=DEFAULT_GRAVER_CAP):
    """``(ok, message)`` comparing completion with the box oracle and the certificate."""
    G = graver_basis(A, cap)
    box = G.max_norm() + 2
    B = brute_force_graver(A, box)
    if G.as_set() != B.as_set():
        return False, f"completion {sorted(G)} != oracle {sorted(B)}"
    ok, wit = certificate_check(A, G)
    if not ok:
        return False, f"certificate failed: {wit}"
    return True, ""


def cmd_oracle_verify(args):
    if args.input == "random":
        rng = random.Random(args.seed)
        mats = [random_matrix(rng) for _ in range(args.count)]
    else:
        mats = [load(args.input).matrix]
    t0 = time.perf_counter()
    bad = []
    for k, A in enumerate(mats):
        ok, msg = verify_against_oracle(A, args.cap_graver)
        if not ok:
            bad.append({"index": k, "rows": [list(r) for r in A.rows], "message": msg})
    doc = {"report_version": REPORT_VERSION, "checked": len(mats), "mismatches": bad}
    text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    if args.out:
        _write(args.out, text)
    if args.format == "machine":
        sys.stdout.write(text)
    else:
        print(f"checked {len(mats)} matrices, {len(bad)} mismatch(es), "
              f"{time.perf_counter() - t0:.1f}s")
        for b in bad:
            print(f"  #{b['index']}: {b['message']}")
    return EXIT_MISMATCH if bad else EXIT_OK


def cmd_search(args):
    try:
        res = search_counterexample(
            args.family, seed=args.seed, min_edges=args.min_edges, max_edges=args.max_edges,
            weight_max=args.weight_max, trials=args.trials, budget=args.budget,
            fiber_cap=args.cap_fiber)
    except NotFound as exc:
        print(f"not found: {exc}")
        return EXIT_NOT_FOUND
    instance_text = emit_wog(res.graph)
    extra = {"family": res.family, "shape": list(res.shape), "trial": res.trial,
             "instances_tried": res.tried, "seed": args.seed, "instance": instance_text}
    if args.instance_out:
        _write(args.instance_out, instance_text)
    if args.format == "human":
        print(f"family {res.family}, shape {list(res.shape)}, trial {res.trial}, "
              f"after {res.tried} instance(s)")
        sys.stdout.write(instance_text)
    return _emit_report(args, res.report, extra)


# ---------------------------------------------------------------------------
# argument parsing


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cap-fiber", type=_positive, default=DEFAULT_FIBER_CAP)
    common.add_argument("--cap-cycles", type=_positive, default=DEFAULT_CYCLE_CAP)
    common.add_argument("--cap-paths", type=_positive, default=DEFAULT_PATH_CAP)
    common.add_argument("--cap-graver", type=_positive, default=DEFAULT_GRAVER_CAP)
    common.add_argument("--out", help="write the machine-readable result here")
    common.add_argument("--format", choices=("human", "machine"), default="human")
    common.add_argument("--timings", action="store_true", help="include timings in reports")

    p = _Parser(prog="wogtoric", description="Toric ideals of weighted oriented graphs.")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    for verb, fn, helptext in [
        ("analyze", cmd_analyze, "hypotheses, Graver basis, circuits and verdict"),
        ("graver", cmd_graver, "Graver basis"),
        ("circuits", cmd_circuits, "circuits"),
        ("indispensable", cmd_indispensable, "indispensable binomials"),
        ("check-robust", cmd_check_robust, "strong robustness verdict"),
        ("check-hypotheses", cmd_check_hypotheses, "structural hypothesis checks"),
    ]:
        s = sub.add_parser(verb, parents=[common], help=helptext)
        s.add_argument("input", help="file with a wog, monomials or matrix header")
        s.set_defaults(func=fn)

    s = sub.add_parser("oracle-verify", parents=[common],
                       help="compare completion against the brute-force oracle")
    s.add_argument("input", help="'random' or an input file")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--count", type=_positive, default=100)
    s.set_defaults(func=cmd_oracle_verify)

    s = sub.add_parser("search-counterexample", parents=[common],
                       help="seeded search for a graph that is not strongly robust")
    s.add_argument("--family", choices=sorted([*FAMILIES, *ALIASES]), default="cycle-edge")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--min-edges", type=_positive, default=3)
    s.add_argument("--max-edges", type=_positive, default=13)
    s.add_argument("--weight-max", type=_positive, default=3)
    s.add_argument("--trials", type=_positive, default=20, help="random draws per shape")
    s.add_argument("--budget", type=_positive, default=5000, help="instances before giving up")
    s.add_argument("--instance-out", help="write the found graph here")
    s.set_defaults(func=cmd_search)
    return p


def run(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_INPUT
    try:
        return args.func(args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CapExceeded as exc:
        print(f"INCONCLUSIVE: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE


def main():
    sys.exit(run())
