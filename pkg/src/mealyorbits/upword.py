"""Ultimately periodic omega-words ``pre per^ω`` in canonical form."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .mealy import Automaton, AutomatonError, Token

Word = tuple[Token, ...]


class UndefinedAction(AutomatonError):
    """A state sequence has no transition for a letter it has to read.

    ``position`` counts letters of the input word (0-based); ``state`` and
    ``letter`` name the missing transition.
    """

    def __init__(self, state: Token, letter: Token, position: int):
        self.state = state
        self.letter = letter
        self.position = position
        super().__init__(f"undefined: no transition for state {state!r} on letter {letter!r} at position {position}")


def primitive_root(word: Sequence[Token]) -> Word:
    """Shortest ``r`` with ``word = r^k``, via the failure function."""
    w = tuple(word)
    n = len(w)
    if n == 0:
        return w
    fail = [0] * n
    k = 0
    for i in range(1, n):
        while k and w[i] != w[k]:
            k = fail[k - 1]
        if w[i] == w[k]:
            k += 1
        fail[i] = k
    period = n - fail[-1]
    return w[:period] if n % period == 0 else w


@dataclass(frozen=True)
class UPWord:
    """Canonical ``pre per^ω``: primitive period, minimal preperiod.

    Build instances with :func:`normalize`; the constructor does not check.
    """

    pre: Word
    per: Word

    def __str__(self):
        head = " ".join(self.pre)
        body = f"({' '.join(self.per)})^w"
        return f"{head} {body}" if head else body

    def letter(self, i: int) -> Token:
        if i < len(self.pre):
            return self.pre[i]
        return self.per[(i - len(self.pre)) % len(self.per)]

    def prefix(self, k: int) -> Word:
        return tuple(self.letter(i) for i in range(k))

    def is_canonical(self) -> bool:
        return (
            len(self.per) > 0
            and primitive_root(self.per) == self.per
            and (not self.pre or self.pre[-1] != self.per[-1])
        )


def normalize(pre: Sequence[Token], per: Sequence[Token]) -> UPWord:
    per = primitive_root(per)
    if not per:
        raise ValueError("period of an ultimately periodic word must be nonempty")
    pre = list(pre)
    while pre and pre[-1] == per[-1]:
        pre.pop()
        per = per[-1:] + per[:-1]
    return UPWord(tuple(pre), per)


def upword_equal(w1: UPWord, w2: UPWord) -> bool:
    return w1.pre == w2.pre and w1.per == w2.per


def tail_letters(w: UPWord) -> frozenset[Token]:
    return frozenset(w.per)


def act_on_upword(automaton: Automaton, seq: Sequence[Token], w: UPWord) -> UPWord:
    """Image of ``w`` under the state sequence ``seq`` (rightmost acts first).

    The state tuple is recorded at every period boundary; the first repeated
    tuple closes the cycle and fixes the output's preperiod and period.
    Raises :class:`UndefinedAction` where a transition is missing.
    """
    m = automaton.machine.require_deterministic()
    tup = m.encode_states(seq)
    pre = m.encode_letters(w.pre)
    per = m.encode_letters(w.per)
    out: list[int] = []
    pos = 0

    def run(letters):
        nonlocal tup, pos
        for a in letters:
            res = m.step(tup, a)
            if res is None:
                _raise_undefined(m, tup, a, pos)
            b, tup = res
            out.append(b)
            pos += 1

    run(pre)
    seen = {tup: len(out)}
    while True:
        run(per)
        if tup in seen:
            start = seen[tup]
            return normalize(m.decode_letters(out[:start]), m.decode_letters(out[start:]))
        seen[tup] = len(out)


def _raise_undefined(m, tup, letter, pos):
    for i in range(len(tup) - 1, -1, -1):
        tr = m.delta[tup[i]][letter]
        if tr is None:
            raise UndefinedAction(m.automaton.states[tup[i]], m.automaton.alphabet[letter], pos)
        letter = tr[0]
    raise AssertionError("step reported undefined but every transition exists")
