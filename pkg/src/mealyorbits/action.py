"""The left action ``seq ∘ word`` and right action ``seq · word`` of state
sequences, and equality of the partial functions they induce.

State sequences are tuples of tokens written with the rightmost state acting
first, so ``("q", "p")`` means *apply p, then q*.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .mealy import Automaton, AutomatonError, Token, dual
from .upword import UndefinedAction, UPWord, Word, _raise_undefined

StateSeq = tuple[Token, ...]


class ResourceLimitError(RuntimeError):
    """A search hit its explicit cap before reaching an answer."""


class ActResult(NamedTuple):
    output: Word
    next: StateSeq


def act(automaton: Automaton, seq: Sequence[Token], word: Sequence[Token]) -> ActResult:
    """Run ``seq`` over ``word``: returns ``(seq ∘ word, seq · word)``.

    >>> from mealyorbits.constructions import adding_machine
    >>> act(adding_machine(), ("q",), ("0", "0", "0"))
    ActResult(output=('1', '0', '0'), next=('id',))
    """
    m = automaton.machine.require_deterministic()
    tup = m.encode_states(seq)
    out = []
    for pos, a in enumerate(m.encode_letters(word)):
        res = m.step(tup, a)
        if res is None:
            _raise_undefined(m, tup, a, pos)
        b, tup = res
        out.append(b)
    return ActResult(m.decode_letters(out), m.decode_states(tup))


def act_dual(automaton: Automaton, letters: Sequence[Token], states: Sequence[Token]) -> ActResult:
    """Act with a letter sequence on a state word through the dual automaton."""
    return act(dual(automaton), letters, states)


def is_defined(automaton: Automaton, seq: Sequence[Token], word: Sequence[Token]) -> bool:
    try:
        act(automaton, seq, word)
    except UndefinedAction:
        return False
    return True


@dataclass(frozen=True)
class Difference:
    """A shortest word on which two state sequences disagree."""

    word: Word
    left: Word | None
    right: Word | None


def find_difference(
    automaton: Automaton,
    seq1: Sequence[Token],
    seq2: Sequence[Token],
    max_pairs: int | None = None,
) -> Difference | None:
    """Breadth-first search over pairs of state tuples reachable by the same
    input word. Returns ``None`` if the two sequences induce the same partial
    function, else the shortest (then lexicographically first, in alphabet
    order) word separating them.
    """
    m = automaton.machine.require_deterministic()
    start = (m.reduce(m.encode_states(seq1)), m.reduce(m.encode_states(seq2)))
    if start[0] == start[1]:
        return None
    parent: dict = {start: None}
    queue = deque([start])
    letters = range(len(automaton.alphabet))
    while queue:
        pair = queue.popleft()
        t1, t2 = pair
        for a in letters:
            r1 = m.step(t1, a)
            r2 = m.step(t2, a)
            if r1 is None and r2 is None:
                continue
            if r1 is None or r2 is None or r1[0] != r2[0]:
                return _difference(automaton, seq1, seq2, _path(parent, pair) + [a])
            nxt = (m.reduce(r1[1]), m.reduce(r2[1]))
            if nxt[0] == nxt[1] or nxt in parent:
                continue
            parent[nxt] = (pair, a)
            if max_pairs is not None and len(parent) > max_pairs:
                raise ResourceLimitError(f"function equality exceeded {max_pairs} visited pairs")
            queue.append(nxt)
    return None


def _path(parent, node) -> list[int]:
    word = []
    while parent[node] is not None:
        node, a = parent[node]
        word.append(a)
    word.reverse()
    return word


def _difference(automaton, seq1, seq2, word_idx) -> Difference:
    word = automaton.machine.decode_letters(word_idx)

    def image(seq):
        try:
            return act(automaton, seq, word).output
        except UndefinedAction:
            return None

    return Difference(word, image(seq1), image(seq2))


def function_equal(
    automaton: Automaton,
    seq1: Sequence[Token],
    seq2: Sequence[Token],
    max_pairs: int | None = None,
) -> bool:
    """Whether ``seq1 ∘`` and ``seq2 ∘`` agree on every finite word
    (being both undefined counts as agreement)."""
    return find_difference(automaton, seq1, seq2, max_pairs) is None


def function_equal_on_upword(
    automaton: Automaton,
    seq1: Sequence[Token],
    seq2: Sequence[Token],
    w: UPWord,
) -> bool:
    """Equality of ``seq1 ∘`` and ``seq2 ∘`` restricted to the prefixes of ``w``."""
    m = automaton.machine.require_deterministic()
    t1 = m.reduce(m.encode_states(seq1))
    t2 = m.reduce(m.encode_states(seq2))
    pre = m.encode_letters(w.pre)
    per = m.encode_letters(w.per)

    def feed(a):
        nonlocal t1, t2
        r1, r2 = m.step(t1, a), m.step(t2, a)
        if r1 is None and r2 is None:
            return True
        if r1 is None or r2 is None or r1[0] != r2[0]:
            return False
        t1, t2 = m.reduce(r1[1]), m.reduce(r2[1])
        return t1 == t2 or None

    for a in pre:
        verdict = feed(a)
        if verdict is not None:
            return verdict
    seen = set()
    while True:
        for phase, a in enumerate(per):
            key = (phase, t1, t2)
            if key in seen:
                return True
            seen.add(key)
            verdict = feed(a)
            if verdict is not None:
                return verdict


def check_states(automaton: Automaton, seq: Sequence[Token]) -> StateSeq:
    missing = [q for q in seq if q not in automaton.machine.state_index]
    if missing:
        raise AutomatonError(f"unknown state {missing[0]!r}")
    return tuple(seq)
