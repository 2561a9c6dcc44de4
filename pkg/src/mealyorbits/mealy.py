"""Letter-to-letter transducers: representation, text format, classification
and the structural transforms (dual, inverse, group closure, SCCs)."""

from __future__ import annotations

import re
from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import networkx as nx

Token = str
Transition = tuple[Token, Token, Token, Token]

INVERSE_SUFFIX = "^-1"


class AutomatonError(ValueError):
    """Raised for structurally invalid automata or violated preconditions."""


class ParseError(AutomatonError):
    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class NotInvertibleError(AutomatonError):
    """Two transitions leave the same state with the same output letter."""

    def __init__(self, state: Token, letter: Token):
        self.state = state
        self.letter = letter
        super().__init__(f"not invertible: state {state!r} has several transitions with output {letter!r}")


def _ordered_unique(items: Iterable[Token]) -> tuple[Token, ...]:
    return tuple(dict.fromkeys(items))


@dataclass(frozen=True, eq=False)
class Automaton:
    """A finite transducer ``(states, alphabet, transitions)``.

    Transitions are quadruples ``(src, in, out, dst)``. Duplicates are dropped,
    keeping first-appearance order, so the object doubles as a set of
    quadruples with a deterministic iteration order.
    """

    states: tuple[Token, ...]
    alphabet: tuple[Token, ...]
    transitions: tuple[Transition, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "states", _ordered_unique(self.states))
        object.__setattr__(self, "alphabet", _ordered_unique(self.alphabet))
        object.__setattr__(self, "transitions", tuple(dict.fromkeys(tuple(t) for t in self.transitions)))
        states, letters = set(self.states), set(self.alphabet)
        for tr in self.transitions:
            if len(tr) != 4:
                raise AutomatonError(f"transition {tr!r} is not a quadruple")
            p, a, b, q = tr
            if p not in states or q not in states:
                raise AutomatonError(f"transition {tr!r} references an undeclared state")
            if a not in letters or b not in letters:
                raise AutomatonError(f"transition {tr!r} references an undeclared letter")

    def __eq__(self, other):
        if not isinstance(other, Automaton):
            return NotImplemented
        return (
            self.states == other.states
            and self.alphabet == other.alphabet
            and frozenset(self.transitions) == frozenset(other.transitions)
        )

    def __hash__(self):
        return hash((self.states, self.alphabet, frozenset(self.transitions)))

    def __repr__(self):
        return f"Automaton(states={self.states!r}, alphabet={self.alphabet!r}, |δ|={len(self.transitions)})"

    @cached_property
    def delta(self) -> dict[tuple[Token, Token], tuple[Token, Token]]:
        """``(state, in) -> (out, dst)``; only meaningful for deterministic automata."""
        table: dict[tuple[Token, Token], tuple[Token, Token]] = {}
        for p, a, b, q in self.transitions:
            table.setdefault((p, a), (b, q))
        return table

    @cached_property
    def machine(self) -> "Machine":
        return Machine(self)

    @property
    def classification(self) -> "Classification":
        return classify(self)

    def to_text(self) -> str:
        return format_automaton(self)

    def to_dot(self, name: str = "automaton") -> str:
        return automaton_to_dot(self, name)


class Machine:
    """Integer-indexed transition table of a deterministic automaton.

    ``delta[s][a]`` is ``(b, t)`` or ``None``. ``identities`` holds the states
    that fix every letter and loop on themselves; they can be dropped from a
    state tuple without changing its action.
    """

    def __init__(self, automaton: Automaton):
        self.automaton = automaton
        self.state_index = {q: i for i, q in enumerate(automaton.states)}
        self.letter_index = {a: i for i, a in enumerate(automaton.alphabet)}
        n, m = len(automaton.states), len(automaton.alphabet)
        self.delta: list[list[tuple[int, int] | None]] = [[None] * m for _ in range(n)]
        for p, a, b, q in automaton.transitions:
            row = self.delta[self.state_index[p]]
            i = self.letter_index[a]
            if row[i] is None:
                row[i] = (self.letter_index[b], self.state_index[q])
        self.deterministic = classify(automaton).deterministic
        self.identities = frozenset(
            s for s in range(n) if m > 0 and all(self.delta[s][a] == (a, s) for a in range(m))
        )

    def require_deterministic(self) -> "Machine":
        if not self.deterministic:
            raise AutomatonError("operation needs a deterministic automaton")
        return self

    def encode_states(self, seq: Sequence[Token]) -> tuple[int, ...]:
        try:
            return tuple(self.state_index[q] for q in seq)
        except KeyError as exc:
            raise AutomatonError(f"unknown state {exc.args[0]!r}") from None

    def encode_letters(self, word: Sequence[Token]) -> tuple[int, ...]:
        try:
            return tuple(self.letter_index[a] for a in word)
        except KeyError as exc:
            raise AutomatonError(f"unknown letter {exc.args[0]!r}") from None

    def decode_states(self, seq: Iterable[int]) -> tuple[Token, ...]:
        states = self.automaton.states
        return tuple(states[i] for i in seq)

    def decode_letters(self, word: Iterable[int]) -> tuple[Token, ...]:
        alphabet = self.automaton.alphabet
        return tuple(alphabet[i] for i in word)

    def reduce(self, tup: tuple[int, ...]) -> tuple[int, ...]:
        ids = self.identities
        if ids and any(s in ids for s in tup):
            return tuple(s for s in tup if s not in ids)
        return tup

    def step(self, tup: tuple[int, ...], letter: int) -> tuple[int, tuple[int, ...]] | None:
        """Feed one letter through a state tuple (rightmost state first)."""
        delta = self.delta
        out = list(tup)
        for i in range(len(tup) - 1, -1, -1):
            tr = delta[tup[i]][letter]
            if tr is None:
                return None
            letter, out[i] = tr
        return letter, tuple(out)


# -- text format -------------------------------------------------------------

_ESCAPE = re.compile(r"([\\#@])")


def escape_token(token: Token) -> str:
    return _ESCAPE.sub(r"\\\1", token)


def _unescape(token: str) -> Token:
    return re.sub(r"\\(.)", r"\1", token)


def _strip_comment(line: str) -> str:
    i = 0
    while i < len(line):
        ch = line[i]
        if ch == "\\":
            i += 2
            continue
        if ch == "#":
            return line[:i]
        i += 1
    return line


def parse_automaton(text: str) -> Automaton:
    """Parse the line format: ``SRC IN OUT DST`` per line, ``#`` comments,
    optional ``@states``/``@alphabet`` headers.

    A literal ``#``, ``@`` or ``\\`` inside a token is written with a
    backslash escape (``\\#``).
    """
    states: list[Token] = []
    letters: list[Token] = []
    declared_states: set[Token] = set()
    declared_letters: set[Token] = set()
    transitions: list[Transition] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        fields = _strip_comment(raw).split()
        if not fields:
            continue
        head = fields[0]
        if head.startswith("@"):
            tokens = [_unescape(t) for t in fields[1:]]
            if head == "@states":
                declared_states.update(tokens)
                states.extend(tokens)
            elif head == "@alphabet":
                declared_letters.update(tokens)
                letters.extend(tokens)
            else:
                raise ParseError(f"unknown directive {head!r}", lineno)
            continue
        if len(fields) != 4:
            raise ParseError(f"expected 4 tokens 'SRC IN OUT DST', got {len(fields)}", lineno)
        p, a, b, q = (_unescape(t) for t in fields)
        transitions.append((p, a, b, q))
        states.extend((p, q))
        letters.extend((a, b))
    both = declared_states & declared_letters
    if both:
        raise ParseError(f"token(s) declared as both state and letter: {sorted(both)}")
    return Automaton(tuple(states), tuple(letters), tuple(transitions))


def format_automaton(automaton: Automaton) -> str:
    lines = [
        "@states " + " ".join(escape_token(q) for q in automaton.states),
        "@alphabet " + " ".join(escape_token(a) for a in automaton.alphabet),
    ]
    lines.extend(" ".join(escape_token(x) for x in tr) for tr in automaton.transitions)
    return "\n".join(lines) + "\n"


def _dot_quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def automaton_to_dot(automaton: Automaton, name: str = "automaton") -> str:
    out = [f"digraph {_dot_quote(name)} {{", "  rankdir=LR;"]
    for q in automaton.states:
        out.append(f"  {_dot_quote(q)} [shape=circle];")
    for p, a, b, q in automaton.transitions:
        out.append(f"  {_dot_quote(p)} -> {_dot_quote(q)} [label={_dot_quote(f'{a}/{b}')}];")
    out.append("}")
    return "\n".join(out) + "\n"


# -- classification ----------------------------------------------------------

@dataclass(frozen=True)
class Classification:
    deterministic: bool
    complete: bool
    invertible: bool
    reversible: bool
    inverse_reversible: bool

    @property
    def bireversible(self) -> bool:
        return self.reversible and self.inverse_reversible

    @property
    def s_automaton(self) -> bool:
        return self.deterministic

    @property
    def g_automaton(self) -> bool:
        return self.deterministic and self.complete and self.invertible

    def as_dict(self) -> dict[str, bool]:
        return {
            "deterministic": self.deterministic,
            "complete": self.complete,
            "invertible": self.invertible,
            "reversible": self.reversible,
            "inverse_reversible": self.inverse_reversible,
            "bireversible": self.bireversible,
        }


def _max_fibre(transitions: Iterable[Transition], key) -> int:
    counts: dict = defaultdict(int)
    for tr in transitions:
        counts[key(tr)] += 1
    return max(counts.values(), default=0)


def classify(automaton: Automaton) -> Classification:
    trs = automaton.transitions
    per_source = defaultdict(int)
    for p, a, _, _ in trs:
        per_source[p, a] += 1
    complete = all(per_source[p, a] >= 1 for p in automaton.states for a in automaton.alphabet)
    return Classification(
        deterministic=max(per_source.values(), default=0) <= 1,
        complete=complete,
        invertible=_max_fibre(trs, lambda t: (t[0], t[2])) <= 1,
        reversible=_max_fibre(trs, lambda t: (t[1], t[3])) <= 1,
        inverse_reversible=_max_fibre(trs, lambda t: (t[2], t[3])) <= 1,
    )


# -- transforms --------------------------------------------------------------

def dual(automaton: Automaton) -> Automaton:
    """Swap the roles of states and letters: ``(p,a,b,q) -> (a,p,q,b)``."""
    return Automaton(
        automaton.alphabet,
        automaton.states,
        tuple((a, p, q, b) for p, a, b, q in automaton.transitions),
    )


def inverse_token(token: Token) -> Token:
    return token + INVERSE_SUFFIX


def inverse(automaton: Automaton) -> Automaton:
    seen: dict[tuple[Token, Token], Transition] = {}
    for tr in automaton.transitions:
        key = (tr[0], tr[2])
        if key in seen:
            raise NotInvertibleError(*key)
        seen[key] = tr
    renamed = {q: inverse_token(q) for q in automaton.states}
    taken = set(automaton.states) | set(automaton.alphabet)
    clash = [t for t in renamed.values() if t in taken]
    if clash:
        raise AutomatonError(f"inverse state name {clash[0]!r} collides with an existing token")
    return Automaton(
        tuple(renamed[q] for q in automaton.states),
        automaton.alphabet,
        tuple((renamed[p], b, a, renamed[q]) for p, a, b, q in automaton.transitions),
    )


def group_closure(automaton: Automaton) -> Automaton:
    """Disjoint union of a G-automaton and its inverse."""
    cls = classify(automaton)
    if not (cls.deterministic and cls.complete):
        raise AutomatonError("group closure needs a complete deterministic automaton")
    inv = inverse(automaton)
    return Automaton(
        automaton.states + inv.states,
        automaton.alphabet,
        automaton.transitions + inv.transitions,
    )


def restrict(automaton: Automaton, states: Iterable[Token]) -> Automaton:
    """Sub-automaton on ``states`` keeping only internal transitions."""
    keep = set(states)
    return Automaton(
        tuple(q for q in automaton.states if q in keep),
        automaton.alphabet,
        tuple(tr for tr in automaton.transitions if tr[0] in keep and tr[3] in keep),
    )


# -- strongly connected components ------------------------------------------

@dataclass(frozen=True)
class Component:
    states: tuple[Token, ...]
    closed: bool
    bireversible: bool


@dataclass(frozen=True)
class SccReport:
    components: tuple[Component, ...] = field(default_factory=tuple)

    def component_of(self, state: Token) -> Component:
        for comp in self.components:
            if state in comp.states:
                return comp
        raise KeyError(state)


def scc_analysis(automaton: Automaton) -> SccReport:
    graph = nx.DiGraph()
    graph.add_nodes_from(automaton.states)
    graph.add_edges_from((p, q) for p, _, _, q in automaton.transitions)
    order = {q: i for i, q in enumerate(automaton.states)}
    groups = [sorted(c, key=order.__getitem__) for c in nx.strongly_connected_components(graph)]
    groups.sort(key=lambda c: order[c[0]])
    components = []
    for group in groups:
        members = set(group)
        closed = all(q in members for p, _, _, q in automaton.transitions if p in members)
        cls = classify(restrict(automaton, members))
        components.append(Component(tuple(group), closed, cls.bireversible))
    return SccReport(tuple(components))
