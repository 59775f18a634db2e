"""Command-line entry point.

Exit codes: 0 success, 1 a property or verification failed, 2 usage error,
3 a search bound was exhausted.  Diagnostics go to stderr; ``--format json``
switches every command to machine-readable output.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Callable, Sequence

from . import __version__, kernels
from .constructions import SELECTORS, UniversalSequence, make_shift, parse_selector
from .core import (
    DEFAULT_SEARCH_BOUND,
    FiniteGraph,
    GraphOracle,
    PreconditionError,
    RadoError,
    UnsatisfiableQuery,
    WitnessExhausted,
    complete_oracle,
    empty_oracle,
    mix64,
    path_oracle,
    seed_base,
    truncate,
    verify_extension,
)
from .fraisse import ClassSpec, LimitOracle, check_amalgamation, henson_witness, limit_oracle
from .groups import cayley_oracle, cyclic_conjugacy, cyclic_graph, group, sqrt_set, sum_free, triangle_report
from .isoengine import (
    back_and_forth,
    cycle_histogram,
    forth_embed,
    generic_automorphism,
    spanning_embed,
    verify_map,
)
from .logic import (
    ParseError,
    UnboundVariableError,
    decide_R,
    derived_hypergraph,
    eval_finite,
    eval_hyper,
    free_vars,
    is_sentence,
    mc_zero_one,
    parse,
    parse_sentence,
    quantifier_depth,
    sigma,
    translate,
)
from .transform import EditSet, complement, edit, greedy_maximal_clique, pigeonhole_probe, switch

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_EXHAUSTED = 0, 1, 2, 3


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# argument parsing helpers
# ---------------------------------------------------------------------------


def seed64(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not 0 <= v < 1 << 64:
        raise argparse.ArgumentTypeError("seeds are 64-bit unsigned integers")
    return v


def count(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def vertex_list(text: str) -> list[int]:
    if not text.strip():
        return []
    try:
        out = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated vertices, got {text!r}") from None
    if any(x < 0 for x in out):
        raise argparse.ArgumentTypeError("vertex ids are non-negative")
    return out


def pair_list(text: str) -> list[tuple[int, int]]:
    pairs = []
    for item in text.split(","):
        if not item.strip():
            continue
        try:
            a, b = item.split(":")
            pairs.append((int(a), int(b)))
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected pairs like 2:3,4:5, got {text!r}") from None
    return pairs


SIMPLE_ORACLES = {"path": path_oracle, "complete": complete_oracle, "empty": empty_oracle}


def oracle_from(sel: str) -> GraphOracle:
    """Construction selectors plus ``complement:<sel>``, ``cayley:<group>:<seed>``,
    ``limit:<class>`` and the embedding sources ``path``, ``complete``, ``empty``."""
    sel = sel.strip()
    if sel in SIMPLE_ORACLES:
        return SIMPLE_ORACLES[sel]()
    if sel.startswith("complement:"):
        return complement(oracle_from(sel[len("complement:"):]))
    if sel.startswith("cayley:"):
        parts = sel.split(":")
        if len(parts) != 3:
            raise PreconditionError(f"bad selector {sel!r}; use cayley:z:<seed> or cayley:z2:<seed>")
        try:
            seed = seed64(parts[2])
        except argparse.ArgumentTypeError as exc:
            raise PreconditionError(str(exc)) from None
        return cayley_oracle(group(parts[1]), seed)
    if sel.startswith("limit:"):
        return limit_oracle(ClassSpec.parse(sel[len("limit:"):]))
    return parse_selector(sel)


SELECTOR_HELP = (
    "graph selector: " + ", ".join(SELECTORS)
    + ", complement:<sel>, cayley:z|z2:<seed>, limit:<class>, path, complete, empty"
)


def read_sentence(args) -> str:
    if getattr(args, "sentence_file", None):
        with open(args.sentence_file) as fh:
            return fh.read().strip()
    if args.sentence is None:
        raise UsageError("give --sentence or --sentence-file")
    return args.sentence


def load_graph(args) -> FiniteGraph:
    """``--graph-file`` or a truncation ``--graph SEL --n N``."""
    if getattr(args, "graph_file", None):
        return FiniteGraph.load(args.graph_file)
    if getattr(args, "graph", None) and getattr(args, "n", None) is not None:
        return truncate(oracle_from(args.graph), args.n)
    raise UsageError("give --graph-file, or --graph together with --n")


def named_graph(name: str) -> FiniteGraph:
    """``K<n>``, ``E<n>`` (edgeless), ``P<n>``, ``C<n>`` or a graph file."""
    kinds = {"K": FiniteGraph.complete, "E": FiniteGraph, "P": FiniteGraph.path, "C": FiniteGraph.cycle}
    if name[:1] in kinds and name[1:].isdigit():
        return kinds[name[0]](int(name[1:]))
    return FiniteGraph.load(name)


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------


def emit(args, data, text: str | None = None) -> None:
    if args.format == "json":
        print(json.dumps(data, default=str))
    else:
        print(text if text is not None else data)


def emit_graph(args, g: FiniteGraph) -> None:
    fmt = args.format
    if fmt == "json":
        print(g.to_json())
    elif fmt == "dot":
        print(g.to_dot())
    else:
        out = g.to_edge_list()
        if out:
            print(out)


def report_exit(rep) -> int:
    if rep.ok:
        return EXIT_OK
    return EXIT_EXHAUSTED if rep.exhausted and not rep.failed else EXIT_FAIL


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_construct(args) -> int:
    o = oracle_from(args.graph)
    g = truncate(o, args.n)
    data = {"graph": o.describe(), "n": args.n, "edges": [list(e) for e in g.edges()]}
    degrees = [len(g.neighbours(v)) for v in range(g.n)]
    emit(args, data, f"{o.describe()}\nprefix {args.n}: {len(data['edges'])} edges, degrees {degrees}")
    return EXIT_OK


def cmd_truncate(args) -> int:
    emit_graph(args, truncate(oracle_from(args.graph), args.n))
    return EXIT_OK


def cmd_witness(args) -> int:
    o = oracle_from(args.graph)
    if set(args.u) & set(args.v):
        raise UsageError("--u and --v must be disjoint")
    z = o.witness(args.u, args.v, args.bound)
    emit(args, {"graph": o.describe(), "U": args.u, "V": args.v, "witness": z}, str(z))
    return EXIT_OK


def _extcheck(args, o: GraphOracle) -> int:
    rep = verify_extension(o, range(args.pool), args.size, args.bound)
    if args.format == "json":
        data = rep.to_dict()
        if not args.verbose:
            data["outcomes"] = [x for x in data["outcomes"] if x["status"] != "pass"]
        print(json.dumps(data))
    else:
        print(rep.summary())
        for x in rep.outcomes:
            if x.status != "pass" or args.verbose:
                print(f"  U={list(x.U)} V={list(x.V)} {x.status} {x.witness if x.witness is not None else ''} {x.detail}".rstrip())
    return report_exit(rep)


def cmd_extcheck(args) -> int:
    return _extcheck(args, oracle_from(args.graph))


def _emit_map(args, f, summary: dict, extra: dict | None = None) -> int:
    data = {"pairs": [[x, y] for x, y in f.pairs], "verification": summary, **(extra or {})}
    if args.format == "json":
        print(json.dumps(data, default=str))
    else:
        for x, y in f.pairs:
            print(f"{x} -> {y}")
        print(f"# {summary['mode']} map, {summary['size']} pairs, ok={summary['ok']}")
        for k, v in (extra or {}).items():
            print(f"# {k}: {v}")
        for bad in summary["violations"]:
            print(f"# violation {bad}", file=sys.stderr)
    return EXIT_OK if summary["ok"] else EXIT_FAIL


def cmd_iso(args) -> int:
    a = oracle_from(args.a)
    if args.generic:
        f = generic_automorphism(a, args.rounds, args.max_cycle, args.bound, args.seed)
        summary = verify_map(f, a, a)
        closed = f.domain == f.range
        summary["ok"] = summary["ok"] and closed
        extra = {"permutation": closed, "cycles": cycle_histogram(f) if closed else {}}
        return _emit_map(args, f, summary, extra)
    if args.b is None:
        raise UsageError("iso needs --b (or --generic)")
    b = oracle_from(args.b)
    f = back_and_forth(a, b, args.rounds, args.bound)
    prefix = (args.rounds + 1) // 2 if args.prefix is None else args.prefix
    return _emit_map(args, f, verify_map(f, a, b, prefix=prefix))


def cmd_embed(args) -> int:
    src, tgt = oracle_from(args.src), oracle_from(args.tgt)
    if args.spanning:
        f = spanning_embed(src, tgt, args.n, args.bound)
        return _emit_map(args, f, verify_map(f, src, tgt, mode="spanning"))
    f = forth_embed(src, tgt, args.n, args.bound)
    return _emit_map(args, f, verify_map(f, src, tgt))


def cmd_clique(args) -> int:
    o = oracle_from(args.graph)
    S = greedy_maximal_clique(o, args.steps, args.bound)
    emit(args, {"graph": o.describe(), "clique": S}, " ".join(map(str, S)))
    return EXIT_OK


def _show_modified(args, o: GraphOracle) -> int:
    if args.check:
        return _extcheck(args, o)
    emit_graph(args, truncate(o, args.n))
    return EXIT_OK


def cmd_switch(args) -> int:
    return _show_modified(args, switch(oracle_from(args.graph), args.set))


def cmd_edit(args) -> int:
    e = EditSet(args.delete, args.flip, args.switch)
    return _show_modified(args, edit(oracle_from(args.graph), e))


def _colouring(spec: str, k: int) -> Callable[[int], int]:
    if spec == "mod":
        return lambda v: v % k
    if spec.startswith("hash:"):
        base = seed_base(seed64(spec[5:]))
        return lambda v: mix64(base + v) % k
    raise UsageError(f"unknown colouring {spec!r}; use mod or hash:<seed>")


def cmd_pigeonhole(args) -> int:
    o = oracle_from(args.graph)
    if args.parts < 1:
        raise UsageError("--parts must be at least 1")
    part, reports = pigeonhole_probe(
        o, _colouring(args.colouring, args.parts), args.parts, range(args.pool), args.size, args.bound,
    )
    data = {"graph": o.describe(), "part": part, "reports": [r.summary() for r in reports]}
    emit(args, data, "\n".join([f"part {part} passes"] + [r.summary() for r in reports]))
    return EXIT_OK


# -- logic -------------------------------------------------------------------


def cmd_logic_parse(args) -> int:
    f = parse(read_sentence(args))
    data = {
        "text": str(f),
        "free_vars": sorted(free_vars(f)),
        "sentence": is_sentence(f),
        "quantifier_depth": quantifier_depth(f),
    }
    emit(args, data, str(f))
    return EXIT_OK


def cmd_logic_eval(args) -> int:
    s = parse_sentence(read_sentence(args))
    g = load_graph(args)
    val = eval_finite(s, g)
    emit(args, {"sentence": str(s), "n": g.n, "value": val}, str(val).lower())
    return EXIT_OK


def cmd_logic_decide(args) -> int:
    s = parse_sentence(read_sentence(args))
    val = decide_R(s)
    emit(args, {"sentence": str(s), "value": val}, str(val).lower())
    return EXIT_OK


def cmd_logic_sigma(args) -> int:
    s = sigma(args.m, args.n, distinct_z=not args.no_distinct_z, bare_antecedent=args.bare_antecedent)
    emit(args, {"m": args.m, "n": args.n, "sentence": str(s),
                "quantifier_depth": quantifier_depth(s)}, str(s))
    return EXIT_OK


def cmd_logic_zeroone(args) -> int:
    s = parse_sentence(read_sentence(args))
    freq = mc_zero_one(s, args.n, args.samples, args.seed, args.p, args.workers)
    truth = decide_R(s)
    agree = abs(freq - float(truth)) <= args.tolerance
    data = {"frequency": freq, "decide": truth, "agree": agree}
    emit(args, data, f"frequency {freq:.4f}, decide {str(truth).lower()}, agree {str(agree).lower()}")
    return EXIT_OK if agree else EXIT_FAIL


def cmd_logic_hyper(args) -> int:
    F = [named_graph(x) for x in args.family]
    g = load_graph(args)
    H = derived_hypergraph(F, g)
    data = {"hypergraph": H.to_dict()}
    lines = [f"{H.n} vertices, {len(H.edges)} hyperedges"] + [" ".join(map(str, sorted(e))) for e in H.edges]
    ok = True
    if args.sentence or args.sentence_file:
        hs = parse_sentence(read_sentence(args))
        t = translate(hs, F)
        a, b = eval_hyper(hs, H), eval_finite(t, g)
        ok = a == b
        data.update({"translation": str(t), "hyper_value": a, "graph_value": b, "agree": ok})
        lines += [f"translation: {t}", f"hypergraph {str(a).lower()}, graph {str(b).lower()}"]
    emit(args, data, "\n".join(lines))
    return EXIT_OK if ok else EXIT_FAIL


# -- fraisse -----------------------------------------------------------------


def _class(args) -> ClassSpec:
    if args.class_file:
        return ClassSpec.load(args.class_file)
    return ClassSpec.parse(args.cls)


def cmd_fraisse_check(args) -> int:
    rep = check_amalgamation(_class(args), args.size)
    emit(args, rep.to_dict(), rep.summary())
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_fraisse_limit(args) -> int:
    emit_graph(args, truncate(limit_oracle(_class(args)), args.n))
    return EXIT_OK


def cmd_fraisse_witness(args) -> int:
    o = limit_oracle(_class(args))
    if isinstance(o, LimitOracle) and o.spec.clique_size is not None:
        z = henson_witness(o, (args.u, args.v))
    else:
        z = o.witness(args.u, args.v)
    emit(args, {"class": _class(args).describe(), "U": args.u, "V": args.v, "witness": z}, str(z))
    return EXIT_OK


# -- groups ------------------------------------------------------------------


def _element(gname: str, text: str):
    try:
        parts = [int(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"bad group element {text!r}") from None
    if gname == "z":
        if len(parts) != 1:
            raise UsageError("integers take a single value")
        return parts[0]
    if len(parts) != 2:
        raise UsageError("pairs of integers are written x,y")
    return tuple(parts)


def cmd_groups_cayley(args) -> int:
    o = cayley_oracle(group(args.group), args.seed)
    rep = verify_extension(o, range(args.pool), args.size, args.bound)
    g = group(args.group)
    S = [g.element(i) for i in range(1, args.show + 1) if o.in_S(g.element(i))]
    data = {"graph": o.describe(), "connection_set": S, "extension": rep.summary(), "ok": rep.ok}
    emit(args, data, f"{o.describe()}\nS starts {S}\n{rep.summary()}")
    return report_exit(rep)


def cmd_groups_sqrt(args) -> int:
    a = _element(args.group, args.a)
    roots = sqrt_set(group(args.group), a, args.enum_bound)
    emit(args, {"group": args.group, "a": a, "roots": roots, "size": len(roots)},
         " ".join(map(str, roots)) if roots else "(none)")
    return EXIT_OK


def cmd_groups_sumfree(args) -> int:
    if args.prefix < 3:
        raise UsageError("--prefix must be at least 3")
    rep = triangle_report(sum_free(args.seed), args.prefix)
    data = rep.to_dict()
    text = (f"{len(rep.members)} members up to {args.prefix}: {rep.members[:20]}"
            f"{' ...' if len(rep.members) > 20 else ''}\n"
            f"all_odd {str(rep.all_odd).lower()}, triangle_free {str(rep.triangle_free).lower()}")
    emit(args, data, text)
    return EXIT_OK if rep.equivalent and rep.triangle_free else EXIT_FAIL


def _sequence(text: str) -> UniversalSequence:
    if text == "concat":
        return UniversalSequence.concat()
    if text.startswith("rand:"):
        return UniversalSequence.random(seed64(text[5:]))
    raise UsageError(f"unknown sequence {text!r}; use concat or rand:<seed>")


def cmd_groups_cyclic(args) -> int:
    s = _sequence(args.seq)
    c = cyclic_graph(s)
    shift_ok = c.verify_shift(args.radius)
    recovered = c.recovered_set(args.show) == s.members(args.show)
    data = {"graph": c.oracle.describe(), "shift_automorphism": shift_ok, "recovered_set": recovered}
    lines = [f"{c.oracle.describe()}: shift preserved {str(shift_ok).lower()}, "
             f"S recovered {str(recovered).lower()}"]
    if args.against:
        res = cyclic_conjugacy(s, _sequence(args.against), args.bound)
        data["conjugacy"] = res.to_dict()
        lines.append("equal" if res.equal else f"differ at {res.index}")
    emit(args, data, "\n".join(lines))
    return EXIT_OK if shift_ok and recovered else EXIT_FAIL


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="radokit", description="Lazy oracles for the countable random graph.")
    p.add_argument("--version", action="version", version=f"radokit {__version__} ({kernels.BACKEND} kernels)")
    sub = p.add_subparsers(dest="command", metavar="COMMAND", required=True)

    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=["text", "json"], default="text")
    gfmt = argparse.ArgumentParser(add_help=False)
    gfmt.add_argument("--format", choices=["edges", "text", "dot", "json"], default="edges",
                      help="edge list (default), DOT or JSON")
    bound = argparse.ArgumentParser(add_help=False)
    bound.add_argument("--bound", type=count, default=None,
                       help=f"witness search bound (default {DEFAULT_SEARCH_BOUND} for linear scans)")
    ext = argparse.ArgumentParser(add_help=False)
    ext.add_argument("--pool", type=count, default=10, help="query vertices are 0..POOL-1 (default 10)")
    ext.add_argument("--size", type=count, default=3, help="max |U|+|V| (default 3)")
    ext.add_argument("--verbose", action="store_true", help="list passing queries too")
    graph = argparse.ArgumentParser(add_help=False)
    graph.add_argument("--graph", required=True, help=SELECTOR_HELP)
    sent = argparse.ArgumentParser(add_help=False)
    sent.add_argument("--sentence", help="formula text, e.g. 'forall x (exists y (x ~ y))'")
    sent.add_argument("--sentence-file")

    def add(parent, name, func, help_, parents=()):
        sp = parent.add_parser(name, help=help_, parents=list(parents))
        sp.set_defaults(func=func)
        return sp

    sp = add(sub, "construct", cmd_construct, "describe a construction and its first vertices", [graph, fmt])
    sp.add_argument("--n", type=count, default=8)
    sp = add(sub, "truncate", cmd_truncate, "induced subgraph on 0..n-1", [graph, gfmt])
    sp.add_argument("--n", type=count, required=True)
    sp = add(sub, "witness", cmd_witness, "vertex joined to all of U and none of V", [graph, bound, fmt])
    sp.add_argument("--u", type=vertex_list, default=[])
    sp.add_argument("--v", type=vertex_list, default=[])
    add(sub, "extcheck", cmd_extcheck, "verify the extension property on small queries", [graph, bound, ext, fmt])

    sp = add(sub, "iso", cmd_iso, "back-and-forth isomorphism, or a generic automorphism", [bound, fmt])
    sp.add_argument("--a", required=True, help=SELECTOR_HELP)
    sp.add_argument("--b", help=SELECTOR_HELP)
    sp.add_argument("--rounds", type=count, default=30)
    sp.add_argument("--prefix", type=count, default=None,
                    help="check that domain and range cover 0..PREFIX-1 (default rounds/2)")
    sp.add_argument("--generic", action="store_true", help="build an automorphism of --a with finite cycles")
    sp.add_argument("--max-cycle", type=count, default=12)
    sp.add_argument("--seed", type=seed64, default=0)
    sp = add(sub, "embed", cmd_embed, "embed one graph into another", [bound, fmt])
    sp.add_argument("--src", required=True, help=SELECTOR_HELP)
    sp.add_argument("--tgt", required=True, help=SELECTOR_HELP)
    sp.add_argument("--n", type=count, default=20, help="vertices (or rounds with --spanning)")
    sp.add_argument("--spanning", action="store_true", help="spanning rather than induced embedding")
    sp = add(sub, "clique", cmd_clique, "greedy maximal clique", [graph, bound, fmt])
    sp.add_argument("--steps", type=count, default=5)

    modified = argparse.ArgumentParser(add_help=False)
    modified.add_argument("--n", type=count, default=10, help="truncation size to print")
    modified.add_argument("--check", action="store_true", help="run the extension check instead of printing")
    for name, func, help_ in (("switch", cmd_switch, "Seidel switching with respect to a set"),
                              ("edit", cmd_edit, "delete vertices, flip pairs and switch")):
        sp = add(sub, name, func, help_, [graph, bound, ext, modified])
        sp.add_argument("--format", choices=["edges", "text", "dot", "json"], default="edges")
        if name == "switch":
            sp.add_argument("--set", type=vertex_list, required=True)
        else:
            sp.add_argument("--delete", type=vertex_list, default=[])
            sp.add_argument("--flip", type=pair_list, default=[])
            sp.add_argument("--switch", type=vertex_list, default=[])
    sp = add(sub, "pigeonhole", cmd_pigeonhole, "find a colour class that passes the extension check",
             [graph, ext, fmt])
    sp.add_argument("--parts", type=count, default=2)
    sp.add_argument("--colouring", default="mod", help="mod (v mod parts) or hash:<seed>")
    sp.add_argument("--bound", type=count, default=DEFAULT_SEARCH_BOUND)

    logic = sub.add_parser("logic", help="first-order sentences").add_subparsers(
        dest="logic_command", metavar="COMMAND", required=True)
    add(logic, "parse", cmd_logic_parse, "parse and pretty-print", [sent, fmt])
    gin = argparse.ArgumentParser(add_help=False)
    gin.add_argument("--graph-file", help="edge list or JSON graph")
    gin.add_argument("--graph", help="or a selector, truncated to --n")
    gin.add_argument("--n", type=count)
    add(logic, "eval", cmd_logic_eval, "truth in a finite graph", [sent, gin, fmt])
    add(logic, "decide", cmd_logic_decide, "truth in the random graph", [sent, fmt])
    sp = add(logic, "sigma", cmd_logic_sigma, "print an extension sentence", [fmt])
    sp.add_argument("--m", type=count, required=True)
    sp.add_argument("--n", type=count, required=True)
    sp.add_argument("--bare-antecedent", action="store_true", help="antecedent only asks u_i != v_j")
    sp.add_argument("--no-distinct-z", action="store_true", help="drop the z != w conjuncts")
    sp = add(logic, "zeroone", cmd_logic_zeroone, "Monte Carlo frequency in G(N, p) against decide", [sent, fmt])
    sp.add_argument("--n", type=count, default=300)
    sp.add_argument("--samples", type=count, default=400)
    sp.add_argument("--seed", type=seed64, default=7)
    sp.add_argument("--p", type=float, default=0.5)
    sp.add_argument("--workers", type=count, default=None)
    sp.add_argument("--tolerance", type=float, default=0.05)
    sp = add(logic, "hyper", cmd_logic_hyper, "derived hypergraph and sentence translation", [sent, gin, fmt])
    sp.add_argument("--family", nargs="+", required=True, help="K<n>, E<n>, P<n>, C<n> or graph files")

    fr = sub.add_parser("fraisse", help="amalgamation classes and their limits").add_subparsers(
        dest="fraisse_command", metavar="COMMAND", required=True)
    cls = argparse.ArgumentParser(add_help=False)
    cls.add_argument("--class", dest="cls", default="all", help="Kn:<n>, all, or inline JSON")
    cls.add_argument("--class-file", help="JSON {forbidden: [{n, edges}, ...]}")
    sp = add(fr, "check", cmd_fraisse_check, "check amalgamation up to a size", [cls, fmt])
    sp.add_argument("--size", type=count, default=4)
    sp = add(fr, "limit", cmd_fraisse_limit, "truncation of the limit", [cls, gfmt])
    sp.add_argument("--n", type=count, default=16)
    sp = add(fr, "witness", cmd_fraisse_witness, "witness in the limit", [cls, fmt])
    sp.add_argument("--u", type=vertex_list, default=[])
    sp.add_argument("--v", type=vertex_list, default=[])

    gr = sub.add_parser("groups", help="Cayley graphs, square roots and sum-free sets").add_subparsers(
        dest="groups_command", metavar="COMMAND", required=True)
    sp = add(gr, "cayley", cmd_groups_cayley, "random Cayley graph and its extension check", [bound, fmt])
    sp.add_argument("--group", choices=["z", "z2"], default="z")
    sp.add_argument("--seed", type=seed64, default=0)
    sp.add_argument("--pool", type=count, default=10)
    sp.add_argument("--size", type=count, default=3)
    sp.add_argument("--show", type=count, default=20, help="print S among the first SHOW elements")
    sp = add(gr, "sqrt", cmd_groups_sqrt, "square-root set of an element", [fmt])
    sp.add_argument("--group", choices=["z", "z2"], default="z")
    sp.add_argument("--a", required=True, help="integer, or x,y for pairs")
    sp.add_argument("--enum-bound", type=count, default=4096)
    sp = add(gr, "sumfree", cmd_groups_sumfree, "random sum-free set and its triangle report", [fmt])
    sp.add_argument("--seed", type=seed64, default=0)
    sp.add_argument("--prefix", type=count, default=500)
    sp = add(gr, "cyclic", cmd_groups_cyclic, "shift automorphism of a circulant model", [fmt])
    sp.add_argument("--seq", default="concat", help="concat or rand:<seed>")
    sp.add_argument("--against", help="compare generating sets with another sequence")
    sp.add_argument("--bound", type=count, default=1024)
    sp.add_argument("--radius", type=count, default=50)
    sp.add_argument("--show", type=count, default=64)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse already printed the message
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, PreconditionError, ParseError, UnboundVariableError, ValueError, OSError) as exc:
        print(f"radokit: error: {exc}", file=sys.stderr)
        if isinstance(exc, (UsageError, PreconditionError)) and "selector" in str(exc):
            parser.print_usage(sys.stderr)
        return EXIT_USAGE
    except WitnessExhausted as exc:
        print(f"radokit: search exhausted: {exc}", file=sys.stderr)
        return EXIT_EXHAUSTED
    except (UnsatisfiableQuery, RadoError) as exc:
        print(f"radokit: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
