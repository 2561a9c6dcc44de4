"""Command-line front end.

State sequences are given in the usual left-action order: the rightmost
state acts first. Exit codes: 0 decided/complete, 1 usage or input error,
2 bound exceeded or criterion inapplicable.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from pathlib import Path

from . import algebra, constructions, mealy, orbit
from .action import ResourceLimitError, act, act_dual, find_difference, function_equal_on_upword
from .mealy import Automaton, AutomatonError, escape_token
from .upword import UndefinedAction, act_on_upword, normalize

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_UNDECIDED = 2

SEQ_HELP = "state sequence, whitespace separated; the rightmost state acts first"

BUILTINS = {
    "adding": constructions.adding_machine,
    "grigorchuk": constructions.grigorchuk,
    "pq": constructions.pq_automaton,
    "t1": constructions.t1_automaton,
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def tokens(text: str | None) -> tuple[str, ...]:
    return tuple(text.split()) if text else ()


def fmt(seq) -> str:
    return " ".join(escape_token(t) for t in seq) if seq else "ε"


def corpus_path(name: str) -> Path | None:
    ref = resources.files("mealyorbits") / "corpus" / name
    return Path(str(ref)) if ref.is_file() else None


def load(path: str) -> Automaton:
    p = Path(path)
    if not p.exists():
        builtin = corpus_path(p.name) or corpus_path(p.name + ".aut")
        if builtin is None:
            raise UsageError(f"cannot read {path}: no such file")
        p = builtin
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return mealy.parse_automaton(text)


class Report:
    """Collects text lines and a JSON object for one invocation."""

    def __init__(self, command: str, as_json: bool):
        self.data: dict = {"command": command}
        self.lines: list[str] = []
        self.as_json = as_json

    def line(self, text: str):
        self.lines.append(text)

    def emit(self, out):
        if self.as_json:
            out.write(json.dumps(self.data, ensure_ascii=False) + "\n")
        else:
            out.write("\n".join(self.lines) + ("\n" if self.lines else ""))


def _write(path: str, text: str):
    Path(path).write_text(text, encoding="utf-8")


def _upword(args):
    if args.per is None:
        raise UsageError("--per is required")
    per = tokens(args.per)
    if not per:
        raise UsageError("--per must contain at least one letter")
    return normalize(tokens(args.pre), per)


def _graph_json(graph):
    return {
        "nodes": [{"pre": list(w.pre), "per": list(w.per)} for w in graph.nodes],
        "edges": [[i, q, j] for i, q, j in graph.edges],
    }


# -- subcommands ---------------------------------------------------------------

def cmd_check(args, rep):
    a = load(args.file)
    cls = mealy.classify(a)
    scc = mealy.scc_analysis(a)
    rep.data.update(
        states=list(a.states),
        alphabet=list(a.alphabet),
        classification=cls.as_dict(),
        components=[
            {"states": list(c.states), "closed": c.closed, "bireversible": c.bireversible}
            for c in scc.components
        ],
    )
    rep.line(f"states     {fmt(a.states)}")
    rep.line(f"alphabet   {fmt(a.alphabet)}")
    for name, flag in cls.as_dict().items():
        rep.line(f"{name:<19}{'yes' if flag else 'no'}")
    for c in scc.components:
        rep.line(
            f"component  {{{', '.join(c.states)}}} "
            f"{'closed' if c.closed else 'open'} "
            f"{'bireversible' if c.bireversible else 'not-bireversible'}"
        )
    if args.dot:
        _write(args.dot, a.to_dot())
    return EXIT_OK


def _emit_automaton(a: Automaton, rep):
    rep.data.update(states=list(a.states), alphabet=list(a.alphabet), transitions=[list(t) for t in a.transitions])
    rep.lines.extend(mealy.format_automaton(a).splitlines())


def cmd_dual(args, rep):
    _emit_automaton(mealy.dual(load(args.file)), rep)
    return EXIT_OK


def cmd_inverse(args, rep):
    _emit_automaton(mealy.inverse(load(args.file)), rep)
    return EXIT_OK


def cmd_closure(args, rep):
    _emit_automaton(mealy.group_closure(load(args.file)), rep)
    return EXIT_OK


def cmd_act(args, rep):
    a = load(args.file)
    seq = tokens(args.seq)
    if args.word is not None and args.per is not None:
        raise UsageError("give either --word or --pre/--per, not both")
    try:
        if args.per is not None:
            if args.dual:
                raise UsageError("--dual works on finite words only")
            w = _upword(args)
            image = act_on_upword(a, seq, w)
            rep.data.update(defined=True, output={"pre": list(image.pre), "per": list(image.per)})
            rep.line(f"output {image}")
            return EXIT_OK
        word = tokens(args.word)
        res = act_dual(a, seq, word) if args.dual else act(a, seq, word)
    except UndefinedAction as exc:
        rep.data.update(defined=False, state=exc.state, letter=exc.letter, position=exc.position)
        rep.line(f"UNDEFINED state={exc.state} letter={exc.letter} position={exc.position}")
        return EXIT_OK
    rep.data.update(defined=True, output=list(res.output), next=list(res.next))
    rep.line(f"output {fmt(res.output)}")
    rep.line(f"next   {fmt(res.next)}")
    return EXIT_OK


def cmd_equal(args, rep):
    a = load(args.file)
    s1, s2 = tokens(args.seq1), tokens(args.seq2)
    if args.per is not None:
        equal = function_equal_on_upword(a, s1, s2, _upword(args))
        rep.data.update(equal=equal, restricted_to=str(_upword(args)))
        rep.line("EQUAL" if equal else "DIFFERENT")
        return EXIT_OK
    try:
        diff = find_difference(a, s1, s2, args.max_pairs)
    except ResourceLimitError:
        rep.data.update(equal=None, max_pairs=args.max_pairs)
        rep.line(f"BOUND EXCEEDED max-pairs={args.max_pairs}")
        return EXIT_UNDECIDED
    if diff is None:
        rep.data.update(equal=True)
        rep.line("EQUAL")
    else:
        rep.data.update(
            equal=False,
            witness=list(diff.word),
            left=None if diff.left is None else list(diff.left),
            right=None if diff.right is None else list(diff.right),
        )
        left = "undefined" if diff.left is None else fmt(diff.left)
        right = "undefined" if diff.right is None else fmt(diff.right)
        rep.line(f"DIFFERENT witness={fmt(diff.word)} left={left} right={right}")
    return EXIT_OK


def cmd_orbit(args, rep):
    a = load(args.file)
    w = _upword(args)
    verdict = orbit.orbit_finite_periodic(a, w.per, args.step_bound, args.node_bound, pre=w.pre)
    rep.data.update(word=str(w), node_bound=args.node_bound, step_bound=args.step_bound)
    if isinstance(verdict, orbit.Finite):
        rep.data.update(verdict="finite", size=verdict.size, torsion=verdict.torsion)
        head = f"FINITE size={verdict.size}" if verdict.size is not None else "FINITE size=unknown"
        if verdict.torsion is not None and verdict.size is None:
            head += f" torsion={verdict.torsion[0]},{verdict.torsion[1]} node-bound={args.node_bound}"
        rep.line(head)
        graph = verdict.graph
    else:
        rep.data.update(verdict="bound_exceeded", explored=len(verdict.graph.nodes))
        rep.line(f"BOUND EXCEEDED node-bound={args.node_bound} step-bound={args.step_bound}")
        graph = verdict.graph
    if graph is not None:
        rep.data["graph"] = _graph_json(graph)
        if isinstance(verdict, orbit.Finite):
            for i, node in enumerate(graph.nodes):
                rep.line(f"  {i}: {node}")
        if args.dot:
            _write(args.dot, graph.to_dot())
    return EXIT_OK if isinstance(verdict, orbit.Finite) else EXIT_UNDECIDED


def cmd_certify(args, rep):
    a = load(args.file)
    w = _upword(args)
    verdict = orbit.certify_infinite(a, w)
    rep.data["word"] = str(w)
    if isinstance(verdict, orbit.CertifiedInfinite):
        rep.data.update(verdict="certified_infinite", letter=verdict.letter, component=list(verdict.component))
        rep.line(f"CERTIFIED INFINITE letter={verdict.letter} component={{{', '.join(verdict.component)}}}")
        rep.line(verdict.reason)
        return EXIT_OK
    rep.data["verdict"] = "inapplicable"
    rep.line("INAPPLICABLE")
    return EXIT_UNDECIDED


def cmd_extract(args, rep):
    a = load(args.file)
    w = _upword(args)
    rep.data.update(word=str(w), index_bound=args.index_bound)
    try:
        u, v = orbit.extract_periodic_finite(a, w, args.index_bound)
    except orbit.ExtractionNotFound:
        rep.data["found"] = False
        rep.line(f"NOT FOUND index-bound={args.index_bound}")
        return EXIT_UNDECIDED
    rep.data.update(found=True, u=list(u), v=list(v))
    rep.line(f"u {fmt(u)}")
    rep.line(f"v {fmt(v)}")
    return EXIT_OK


def cmd_order(args, rep):
    a = load(args.file)
    seq = tokens(args.seq)
    verdict = algebra.element_order(a, seq, args.bound)
    rep.data.update(seq=list(seq), bound=args.bound)
    if isinstance(verdict, algebra.Torsion):
        rep.data.update(torsion=True, i=verdict.i, j=verdict.j)
        rep.line(f"TORSION i={verdict.i} j={verdict.j} period={verdict.period}")
        return EXIT_OK
    rep.data["torsion"] = None
    rep.line(f"NONE FOUND bound={args.bound}")
    return EXIT_UNDECIDED


def _element_report(es: algebra.ElementSet, rep, args):
    rep.data.update(
        complete=es.complete,
        bound=es.bound,
        size=len(es),
        elements=[list(e) for e in es.elements],
        edges=[[i, q, j] for i, q, j in es.cayley_edges],
    )
    if getattr(args, "dot", None):
        _write(args.dot, es.to_dot())


def cmd_finiteness(args, rep):
    a = load(args.file)
    if args.group:
        a = mealy.group_closure(a)
    es = algebra.semigroup_enumerate(a, args.bound)
    _element_report(es, rep, args)
    if es.complete:
        rep.line(f"FINITE elements={len(es)}")
        return EXIT_OK
    rep.line(f"BOUND EXCEEDED bound={args.bound}")
    return EXIT_UNDECIDED


def _list_elements(es, rep):
    for i, e in enumerate(es.elements):
        rep.line(f"  {i}: {fmt(e)}")
    for i, q, j in es.cayley_edges:
        rep.line(f"  {i} -{q}-> {j}")


def cmd_cayley(args, rep):
    a = load(args.file)
    es = algebra.semigroup_enumerate(a, args.bound)
    _element_report(es, rep, args)
    rep.line(f"{'COMPLETE' if es.complete else 'BOUND EXCEEDED'} elements={len(es)} bound={args.bound}")
    _list_elements(es, rep)
    return EXIT_OK if es.complete else EXIT_UNDECIDED


def cmd_ideal(args, rep):
    a = load(args.file)
    seq = tokens(args.seq)
    es = algebra.left_ideal(a, seq, args.bound)
    _element_report(es, rep, args)
    rep.data["seq"] = list(seq)
    rep.line(f"{'FINITE' if es.complete else 'BOUND EXCEEDED'} elements={len(es)} bound={args.bound}")
    _list_elements(es, rep)
    return EXIT_OK if es.complete else EXIT_UNDECIDED


def cmd_crosscheck(args, rep):
    a = load(args.file)
    report = algebra.ideal_vs_orbit_crosscheck(
        a, tokens(args.word), args.bound, args.node_bound, args.period_length
    )
    rep.data.update(
        word=list(report.word),
        ideal_size=report.ideal_size,
        ideal_complete=report.ideal_complete,
        orbits=[{"word": w, "verdict": v, "size_or_bound": n} for w, v, n in report.orbits],
        contradictions=report.contradictions,
        consistent=report.consistent,
        applicable=report.applicable,
    )
    head = "CONSISTENT" if report.consistent else "CONTRADICTION"
    rep.line(f"{head} bound={args.bound} node-bound={args.node_bound}")
    if not report.applicable:
        rep.line("implication not checked: not a G-automaton")
    ideal = f"finite elements={report.ideal_size}" if report.ideal_complete else f"bound exceeded bound={args.bound}"
    rep.line(f"ideal {ideal}")
    for w, v, n in report.orbits:
        rep.line(f"orbit {w}: {'finite size=' if v == 'finite' else 'bound exceeded node-bound='}{n}")
    for c in report.contradictions:
        rep.line(f"! {c}")
    return EXIT_OK if report.consistent else EXIT_UNDECIDED


def _gillibert_input(args) -> constructions.GillibertInput:
    if not args.base or not args.dollar:
        raise UsageError("--base and --dollar are required")
    return constructions.GillibertInput(load(args.base), args.dollar)


def cmd_construct(args, rep):
    if args.name == "gillibert":
        a = constructions.gillibert_extend(_gillibert_input(args))
    else:
        a = BUILTINS[args.name]()
    _emit_automaton(a, rep)
    return EXIT_OK


def cmd_reduce_word(args, rep):
    base = load(args.base) if args.base else None
    w = constructions.reduction_word(tokens(args.seq), base)
    rep.data["word"] = list(w)
    rep.line(fmt(w))
    return EXIT_OK


def cmd_dagger(args, rep):
    inp = _gillibert_input(args)
    seq = tokens(args.seq)
    res = constructions.dagger_check(inp, seq, args.k)
    rep.data.update(
        holds=res.holds,
        t_power=res.t_power,
        output=list(res.output),
        next=list(res.next),
        expected_next=list(res.expected_next),
    )
    rep.line(f"{'HOLDS' if res.holds else 'FAILS'} t-power={res.t_power}")
    rep.line(f"output   {fmt(res.output)}")
    rep.line(f"next     {fmt(res.next)}")
    rep.line(f"expected {fmt(res.expected_next)}")
    return EXIT_OK


# -- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="print one JSON object instead of text")

    parser = _Parser(
        prog="mealyorbits",
        description="Automaton semigroups and groups: actions, duals, orbits, torsion.",
        epilog="State sequences: " + SEQ_HELP + ". Exit codes: 0 decided, 1 error, 2 bound exceeded.",
    )
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    def add(name, func, help, *, file=True, aliases=()):
        p = sub.add_parser(name, parents=[common], help=help, aliases=list(aliases))
        if file:
            p.add_argument("file", help="automaton file (or a corpus name such as pq.aut)")
        p.set_defaults(func=func)
        return p

    def upword_flags(p, required=True):
        p.add_argument("--pre", default="", help="preperiod letters")
        p.add_argument("--per", required=required, help="period letters")

    p = add("check", cmd_check, "classify an automaton and list its strongly connected components")
    p.add_argument("--dot", metavar="FILE", help="write the automaton as DOT")
    add("dual", cmd_dual, "print the dual automaton")
    add("inverse", cmd_inverse, "print the inverse automaton")
    add("closure", cmd_closure, "print the union of an automaton and its inverse")

    p = add("act", cmd_act, "act with a state sequence on a word")
    p.add_argument("--seq", default="", help=SEQ_HELP)
    p.add_argument("--word", help="finite input word")
    upword_flags(p, required=False)
    p.add_argument("--dual", action="store_true", help="treat --seq as letters acting on the state word --word")

    p = add("equal", cmd_equal, "decide whether two state sequences induce the same function")
    p.add_argument("--seq1", required=True, help=SEQ_HELP)
    p.add_argument("--seq2", required=True, help=SEQ_HELP)
    p.add_argument("--max-pairs", type=int, default=None, help="cap on explored pairs")
    upword_flags(p, required=False)

    p = add("orbit", cmd_orbit, "explore the orbit of pre per^ω")
    upword_flags(p)
    p.add_argument("--node-bound", type=int, default=10_000)
    p.add_argument("--step-bound", type=int, default=256)
    p.add_argument("--dot", metavar="FILE", help="write the orbital graph as DOT")

    p = add("certify", cmd_certify, "certify an infinite orbit (reversible, not bireversible G-automata)")
    upword_flags(p)

    p = add("extract", cmd_extract, "extract u, v with a finite orbit of u v^ω from a word with finite orbit")
    upword_flags(p)
    p.add_argument("--index-bound", type=int, default=64)

    p = add("order", cmd_order, "search for torsion of an element", aliases=("torsion",))
    p.add_argument("--seq", required=True, help=SEQ_HELP)
    p.add_argument("--bound", type=int, default=64)

    p = add("finiteness", cmd_finiteness, "enumerate the generated semigroup up to a bound")
    p.add_argument("--bound", type=int, default=1000)
    p.add_argument("--group", action="store_true", help="enumerate the group (automaton plus inverse)")
    p.add_argument("--dot", metavar="FILE", help="write the left Cayley graph as DOT")

    p = add("cayley", cmd_cayley, "print the left Cayley graph of the generated semigroup")
    p.add_argument("--bound", type=int, default=1000)
    p.add_argument("--dot", metavar="FILE")

    p = add("ideal", cmd_ideal, "enumerate the left principal ideal of an element")
    p.add_argument("--seq", required=True, help=SEQ_HELP)
    p.add_argument("--bound", type=int, default=1000)
    p.add_argument("--dot", metavar="FILE")

    p = add("crosscheck", cmd_crosscheck, "compare a dual left ideal with the orbits of word·per^ω")
    p.add_argument("--word", default="", help="finite prefix word")
    p.add_argument("--bound", type=int, default=200, help="ideal element bound")
    p.add_argument("--node-bound", type=int, default=2000)
    p.add_argument("--period-length", type=int, default=2)

    p = add("construct", cmd_construct, "print a built-in automaton", file=False)
    p.add_argument("name", choices=[*BUILTINS, "gillibert"])
    p.add_argument("--base", metavar="FILE", help="base G-automaton (gillibert)")
    p.add_argument("--dollar", metavar="TOKEN", help="distinguished base state (gillibert)")

    p = add("reduce-word", cmd_reduce_word, "print the reduction word * (a_p1,0) ... (a_pl,0) #", file=False)
    p.add_argument("--seq", required=True, help=SEQ_HELP)
    p.add_argument("--base", metavar="FILE", help="check the tokens against this base automaton")

    p = add("dagger-check", cmd_dagger, "simulate powers of t on the reduction word", file=False)
    p.add_argument("--base", metavar="FILE", required=True)
    p.add_argument("--dollar", metavar="TOKEN", required=True)
    p.add_argument("--seq", required=True, help=SEQ_HELP)
    p.add_argument("--k", type=int, default=1)
    return parser


_BOUND_FLAGS = ("node_bound", "step_bound", "bound", "index_bound", "k", "max_pairs", "period_length")


def run(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    try:
        args = build_parser().parse_args(argv)
        for flag in _BOUND_FLAGS:
            value = getattr(args, flag, None)
            if value is not None and value < 1:
                raise UsageError(f"--{flag.replace('_', '-')} must be positive")
        rep = Report(args.command, args.json)
        code = args.func(args, rep)
    except (UsageError, AutomatonError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    rep.data["exit_code"] = code
    rep.emit(out)
    return code


def main(argv=None) -> int:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
