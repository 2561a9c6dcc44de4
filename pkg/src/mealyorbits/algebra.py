"""Semigroup-level computations: element enumeration with a left Cayley
graph, torsion of single elements, and left principal ideals.

Elements are partial functions, identified extensionally with
:func:`~mealyorbits.action.function_equal`. Each element is represented by
its shortest, then lexicographically first, witnessing state sequence.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Sequence, Union

import numpy as np

from .action import StateSeq, check_states, function_equal
from .mealy import Automaton, Token, classify, dual
from .upword import normalize, primitive_root

MAX_LEVEL_WORDS = 1024


class LevelAction:
    """Action of state sequences on all words of one fixed length.

    Words of length ``depth`` are numbered in base ``|Σ|``; a sequence is
    summarised by the array of output word numbers (``-1`` where undefined).
    Equal functions always give equal arrays, so the array bytes serve as a
    hash key in front of the exact equality test.
    """

    def __init__(self, automaton: Automaton, max_words: int = MAX_LEVEL_WORDS):
        m = automaton.machine.require_deterministic()
        self.machine = m
        k = len(automaton.alphabet)
        depth = 0
        if k == 1:
            depth = 16
        elif k > 1:
            while k ** (depth + 1) <= max_words:
                depth += 1
            depth = max(depth, 1)
        self.depth = depth
        self.size = k**depth if k else 1
        words = list(itertools.product(range(k), repeat=depth)) if k else [()]
        self.identity = np.arange(self.size, dtype=np.int64)
        self.generators = []
        for s in range(len(automaton.states)):
            row = np.empty(self.size, dtype=np.int64)
            for idx, u in enumerate(words):
                row[idx] = self._run(s, u, k)
            self.generators.append(row)

    def _run(self, s: int, word, k: int) -> int:
        delta = self.machine.delta
        code = 0
        for a in word:
            tr = delta[s][a]
            if tr is None:
                return -1
            b, s = tr
            code = code * k + b
        return code

    def left_multiply(self, state: int, arr: np.ndarray) -> np.ndarray:
        gen = self.generators[state]
        return np.where(arr >= 0, gen[arr], -1)

    def of(self, seq: Sequence[int]) -> np.ndarray:
        arr = self.identity
        for s in reversed(seq):
            arr = self.left_multiply(s, arr)
        return arr


class _ElementIndex:
    def __init__(self, automaton: Automaton, max_pairs: int | None = None):
        self.automaton = automaton
        self.max_pairs = max_pairs
        self.levels = LevelAction(automaton)
        self.witnesses: list[StateSeq] = []
        self.arrays: list[np.ndarray] = []
        self.buckets: dict[bytes, list[int]] = {}

    def __len__(self):
        return len(self.witnesses)

    def find(self, seq: StateSeq, arr: np.ndarray) -> int | None:
        for i in self.buckets.get(arr.tobytes(), ()):
            if function_equal(self.automaton, self.witnesses[i], seq, self.max_pairs):
                return i
        return None

    def add(self, seq: StateSeq, arr: np.ndarray) -> int:
        i = len(self.witnesses)
        self.witnesses.append(seq)
        self.arrays.append(arr)
        self.buckets.setdefault(arr.tobytes(), []).append(i)
        return i


@dataclass
class ElementSet:
    """Distinct elements found by a breadth-first closure, with the left
    Cayley graph: an edge ``(i, q, j)`` means ``q`` times element ``i`` is
    element ``j``."""

    elements: list[StateSeq]
    cayley_edges: list[tuple[int, Token, int]] = field(default_factory=list)
    complete: bool = True
    bound: int = 0

    def __len__(self):
        return len(self.elements)

    def to_dot(self, name: str = "cayley") -> str:
        def label(seq):
            return " ".join(seq) if seq else "ε"

        out = [f'digraph "{name}" {{']
        for i, seq in enumerate(self.elements):
            out.append(f'  n{i} [label="{label(seq)}"];')
        for i, q, j in self.cayley_edges:
            out.append(f'  n{i} -> n{j} [label="{q}"];')
        out.append("}")
        return "\n".join(out) + "\n"


def _closure(automaton: Automaton, starts: Sequence[StateSeq], bound: int) -> ElementSet:
    index = _ElementIndex(automaton)
    m = automaton.machine
    gens = automaton.states
    edges: list[tuple[int, Token, int]] = []
    order = {q: i for i, q in enumerate(gens)}

    def finish(complete: bool) -> ElementSet:
        edges.sort(key=lambda e: (e[0], order[e[1]]))
        return ElementSet(list(index.witnesses), edges, complete, bound)

    level: list[int] = []
    for seq in starts:
        arr = index.levels.of(m.encode_states(seq))
        if index.find(seq, arr) is None:
            if len(index) >= bound:
                return finish(False)
            level.append(index.add(seq, arr))
    while level:
        fresh: list[int] = []
        for q in gens:
            s = order[q]
            for i in level:
                cand = (q,) + index.witnesses[i]
                arr = index.levels.left_multiply(s, index.arrays[i])
                j = index.find(cand, arr)
                if j is None:
                    if len(index) >= bound:
                        return finish(False)
                    j = index.add(cand, arr)
                    fresh.append(j)
                edges.append((i, q, j))
        level = fresh
    return finish(True)


def semigroup_enumerate(automaton: Automaton, element_bound: int) -> ElementSet:
    """Breadth-first enumeration of the generated semigroup, up to
    ``element_bound`` distinct elements. ``complete`` tells whether the
    closure was reached."""
    automaton.machine.require_deterministic()
    return _closure(automaton, [(q,) for q in automaton.states], element_bound)


def left_ideal(automaton: Automaton, seq: Sequence[Token], element_bound: int) -> ElementSet:
    """The principal left ideal ``S s ∪ {s}``; element 0 is ``s`` itself."""
    automaton.machine.require_deterministic()
    return _closure(automaton, [check_states(automaton, seq)], element_bound)


@dataclass(frozen=True)
class Torsion:
    i: int
    j: int

    @property
    def period(self) -> int:
        return self.j - self.i


@dataclass(frozen=True)
class NoneFound:
    bound: int


TorsionVerdict = Union[Torsion, NoneFound]


def iter_element_order(
    automaton: Automaton, seq: Sequence[Token], bound: int, max_pairs: int | None = None
) -> Iterator[None]:
    """Power-by-power torsion search; yields once per power and returns the
    verdict through ``StopIteration``. With ``max_pairs`` each equality test
    is capped and may raise :class:`ResourceLimitError`."""
    seq = check_states(automaton, seq)
    index = _ElementIndex(automaton, max_pairs)
    m = automaton.machine
    base = m.encode_states(seq)
    arr = index.levels.identity
    power: StateSeq = ()
    for j in range(1, bound + 1):
        power = seq + power
        for s in reversed(base):
            arr = index.levels.left_multiply(s, arr)
        i = index.find(power, arr)
        if i is not None:
            return Torsion(i + 1, j)
        index.add(power, arr)
        yield
    return NoneFound(bound)


def element_order(
    automaton: Automaton, seq: Sequence[Token], bound: int, max_pairs: int | None = None
) -> TorsionVerdict:
    """First ``i < j <= bound`` with ``seq^i ∘ = seq^j ∘``, or ``NoneFound``.

    Powers can differ only on very long words (``2^n`` letters for the
    dual of a counter), so ``max_pairs`` optionally caps each equality test;
    exceeding it raises :class:`ResourceLimitError`.
    """
    automaton.machine.require_deterministic()
    steps = iter_element_order(automaton, seq, bound, max_pairs)
    while True:
        try:
            next(steps)
        except StopIteration as stop:
            return stop.value


@dataclass
class CrosscheckReport:
    word: StateSeq
    ideal_size: int
    ideal_complete: bool
    orbits: list[tuple[str, str, int]]
    contradictions: list[str]
    applicable: bool = True

    @property
    def consistent(self) -> bool:
        return not self.contradictions


def ideal_vs_orbit_crosscheck(
    automaton: Automaton,
    word: Sequence[Token],
    element_bound: int = 200,
    node_bound: int = 2000,
    period_length: int = 2,
) -> CrosscheckReport:
    """Compare the left ideal generated by ``rev(word)`` in the dual
    semigroup with the orbits of ``word · per^ω`` for every primitive period
    up to ``period_length``.

    A finite ideal forces every such orbit to be finite; an orbit that fails
    to close while the ideal closed is recorded as a contradiction (at the
    given bounds). The implication is only checked for G-automata;
    otherwise ``applicable`` is false and no contradiction is reported.
    """
    from .orbit import Finite, orbit_explore

    applicable = classify(automaton).g_automaton
    word = tuple(word)
    ideal = left_ideal(dual(automaton), tuple(reversed(word)), element_bound)
    orbits = []
    contradictions = []
    seen = set()
    for n in range(1, period_length + 1):
        for per in itertools.product(automaton.alphabet, repeat=n):
            if primitive_root(per) != per:
                continue
            w = normalize(word, per)
            if w in seen:
                continue
            seen.add(w)
            verdict = orbit_explore(automaton, w, node_bound)
            if isinstance(verdict, Finite):
                orbits.append((str(w), "finite", verdict.size))
            else:
                orbits.append((str(w), "bound_exceeded", node_bound))
                if applicable and ideal.complete:
                    contradictions.append(
                        f"ideal closed with {len(ideal)} elements but orbit of {w} exceeded {node_bound} nodes"
                    )
    return CrosscheckReport(word, len(ideal), ideal.complete, orbits, contradictions, applicable)
