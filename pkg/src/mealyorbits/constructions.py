"""Builders for the standard example automata and for the extension of a
G-automaton whose generalized finiteness problem encodes an order problem.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .action import StateSeq, act
from .mealy import Automaton, AutomatonError, Token, classify, parse_automaton
from .upword import Word

ADDING_MACHINE = """\
q 1 0 q
q 0 1 id
id 0 0 id
id 1 1 id
"""

GRIGORCHUK = """\
a 0 1 id
a 1 0 id
b 0 0 a
b 1 1 c
c 0 0 a
c 1 1 d
d 0 0 id
d 1 1 b
id 0 0 id
id 1 1 id
"""

PQ = """\
@states p q id
@alphabet 0 1 0' 1'
p 0 1 id
p 1 0 p
p 0' 0' id
p 1' 1' id
q 1' 0' q
q 0 0 q
q 1 1 q
q 0' 1' id
id 0 0 id
id 1 1 id
id 0' 0' id
id 1' 1' id
"""

T1 = """\
@states p q
@alphabet a b
q a b p
p a a q
p b b p
"""


def adding_machine() -> Automaton:
    """``q`` adds one to a binary number written least significant bit first."""
    return parse_automaton(ADDING_MACHINE)


def grigorchuk() -> Automaton:
    return parse_automaton(GRIGORCHUK)


def pq_automaton() -> Automaton:
    """Two adding machines sharing ``id``: ``p`` counts on ``0, 1`` and passes
    primed letters, ``q`` counts on ``0', 1'`` and passes unprimed ones."""
    return parse_automaton(PQ)


def t1_automaton() -> Automaton:
    """Partial, reversible and invertible two-state automaton generating a
    seven-element semigroup."""
    return parse_automaton(T1)


def lambda_seq(seq: Sequence[Token]) -> StateSeq:
    """``Λ(ε) = ε`` and ``Λ(x p) = Λ(p) x Λ(p)`` (``x`` the leftmost state)."""
    seq = tuple(seq)
    out: StateSeq = ()
    for x in reversed(seq):
        out = out + (x,) + out
    return out


@dataclass(frozen=True)
class GillibertInput:
    base: Automaton
    dollar: Token

    def __post_init__(self):
        if not classify(self.base).g_automaton:
            raise AutomatonError("base automaton must be deterministic, complete and invertible")
        if self.dollar not in self.base.states:
            raise AutomatonError(f"{self.dollar!r} is not a state of the base automaton")


@dataclass(frozen=True)
class GillibertNames:
    """Token names used by the extension for one base automaton."""

    s: Token
    t: Token
    id: Token
    star: Token
    sharp: Token
    base_states: tuple[Token, ...]

    def letter(self, p: Token, bit: int) -> Token:
        return f"(a_{p},{bit})"

    def hash_state(self, p: Token) -> Token:
        return f"#_{p}"


def _fresh(name: str, taken: set[str]) -> str:
    while name in taken:
        name = "!" + name
    taken.add(name)
    return name


def gillibert_names(base: Automaton) -> GillibertNames:
    taken = set(base.states) | set(base.alphabet)
    s = _fresh("s", taken)
    t = _fresh("t", taken)
    ident = _fresh("id", taken)
    star = _fresh("*", taken)
    sharp = _fresh("#", taken)
    names = GillibertNames(s, t, ident, star, sharp, base.states)
    for p in base.states:
        for tok in (names.letter(p, 0), names.letter(p, 1), names.hash_state(p)):
            if tok in taken:
                raise AutomatonError(f"generated token {tok!r} collides with the base automaton")
            taken.add(tok)
    return names


def gillibert_extend(inp: GillibertInput) -> Automaton:
    """Extend the base G-automaton by a binary counter ``t`` over the letters
    ``(a_p, i)`` that spells out ``Λ`` patterns of base states, then complete
    every missing transition with an identity move into ``id``."""
    base, dollar = inp.base, inp.dollar
    n = gillibert_names(base)
    P = base.states
    new_letters = [n.letter(p, bit) for p in P for bit in (0, 1)]
    alphabet = base.alphabet + tuple(new_letters) + (n.star, n.sharp)
    hashes = tuple(n.hash_state(p) for p in P)
    states = P + (n.s, n.t, n.id) + hashes

    trans = list(base.transitions)
    trans.append((n.s, n.star, n.star, n.t))
    trans.append((n.t, n.sharp, n.sharp, dollar))
    for p in P:
        trans.append((n.t, n.letter(p, 1), n.letter(p, 0), n.t))
        trans.append((n.t, n.letter(p, 0), n.letter(p, 1), n.hash_state(p)))
    for p in P:
        hp = n.hash_state(p)
        for q in P:
            for bit in (0, 1):
                trans.append((hp, n.letter(q, bit), n.letter(q, bit), hp))
        trans.append((hp, n.sharp, n.sharp, p))
    trans.extend((n.id, a, a, n.id) for a in alphabet)

    defined = {(p, a) for p, a, _, _ in trans}
    for q in states:
        for a in alphabet:
            if (q, a) not in defined:
                trans.append((q, a, a, n.id))
    return Automaton(states, alphabet, tuple(trans))


def reduction_word(seq: Sequence[Token], base: Automaton | None = None) -> Word:
    """``* (a_{p1},0) … (a_{pl},0) #`` for ``seq = pl … p1``."""
    seq = tuple(seq)
    if base is not None:
        unknown = [p for p in seq if p not in base.states]
        if unknown:
            raise AutomatonError(f"unknown base state {unknown[0]!r}")
        n = gillibert_names(base)
        star, sharp, letter = n.star, n.sharp, n.letter
    else:
        star, sharp = "*", "#"

        def letter(p, bit):
            return f"(a_{p},{bit})"

    return (star,) + tuple(letter(p, 0) for p in reversed(seq)) + (sharp,)


@dataclass(frozen=True)
class DaggerCheck:
    holds: bool
    t_power: int
    output: Word
    next: StateSeq
    expected_next: StateSeq
    hash_column: StateSeq


def dagger_check(inp: GillibertInput, seq: Sequence[Token], k: int) -> DaggerCheck:
    """Simulate ``t^(k (|Λ(p)|+1))`` on ``w'`` (the reduction word without its
    leading ``*``) and compare with ``w'`` and ``($ Λ(p))^k``."""
    seq = tuple(seq)
    if k < 1 or not seq:
        raise ValueError("need k >= 1 and a nonempty state sequence")
    automaton = gillibert_extend(inp)
    n = gillibert_names(inp.base)
    w_prime = reduction_word(seq, inp.base)[1:]
    lam = lambda_seq(seq)
    block = (inp.dollar,) + lam
    t_power = k * len(block)
    res = act(automaton, (n.t,) * t_power, w_prime)
    expected = block * k
    # the column of #-states after the first |Λ(p)| rows must read back Λ(p) on '#'
    hashes = tuple(n.hash_state(p) for p in lam)
    column = act(automaton, hashes, (n.sharp,)).next if hashes else ()
    holds = res.output == w_prime and res.next == expected and column == lam
    return DaggerCheck(holds, t_power, res.output, res.next, expected, column)


def verify_dagger(inp: GillibertInput, seq: Sequence[Token], k: int) -> bool:
    return dagger_check(inp, seq, k).holds


def t_power_fixes_word(inp: GillibertInput, seq: Sequence[Token], t_power: int) -> bool:
    """Whether ``t^t_power`` maps ``w'`` to itself; the counter in ``t`` only
    returns to ``w'`` after a multiple of ``|Λ(p)| + 1`` rows."""
    automaton = gillibert_extend(inp)
    n = gillibert_names(inp.base)
    w_prime = reduction_word(seq, inp.base)[1:]
    return act(automaton, (n.t,) * t_power, w_prime).output == w_prime
