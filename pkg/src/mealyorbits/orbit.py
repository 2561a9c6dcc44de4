"""Orbital graphs of ultimately periodic words, bounded finiteness checks,
infinitude certificates and extraction of ultimately periodic words with
finite orbits.

Orbit finiteness is undecidable in general, so every search here is bounded
and a verdict never conflates "bound exceeded" with "infinite".
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterator, Sequence, Union

from .action import ResourceLimitError, function_equal
from .algebra import LevelAction, NoneFound, Torsion, iter_element_order
from .mealy import Automaton, Token, classify, dual, scc_analysis
from .upword import UndefinedAction, UPWord, Word, act_on_upword, normalize


class ExtractionNotFound(LookupError):
    """No pair of equivalent reversed prefixes within the index bound."""


@dataclass
class OrbitGraph:
    nodes: list[UPWord]
    edges: list[tuple[int, Token, int]] = field(default_factory=list)
    root: int = 0

    def to_dot(self, name: str = "orbit") -> str:
        out = [f'digraph "{name}" {{']
        for i, w in enumerate(self.nodes):
            shape = ", shape=doublecircle" if i == self.root else ""
            out.append(f'  n{i} [label="{w}"{shape}];')
        for i, q, j in self.edges:
            out.append(f'  n{i} -> n{j} [label="{q}"];')
        out.append("}")
        return "\n".join(out) + "\n"


@dataclass
class Finite:
    """The orbit is finite.

    ``graph`` is the closed orbital graph when breadth-first search closed
    within its node bound, ``torsion`` the ``(i, j)`` certificate when the
    dual torsion test succeeded. At least one of them is set.
    """

    graph: OrbitGraph | None
    size: int | None
    torsion: tuple[int, int] | None = None


@dataclass
class CertifiedInfinite:
    reason: str
    letter: Token | None = None
    component: tuple[Token, ...] = ()


@dataclass
class BoundExceeded:
    """Nothing was decided. With both bounds zero: the criterion did not apply."""

    graph: OrbitGraph | None
    node_bound: int
    torsion_bound: int

    @property
    def inapplicable(self) -> bool:
        return self.graph is None and self.node_bound == 0 and self.torsion_bound == 0


OrbitVerdict = Union[Finite, CertifiedInfinite, BoundExceeded]


def iter_orbit_explore(automaton: Automaton, w: UPWord, node_bound: int) -> Iterator[None]:
    """Breadth-first orbit search, yielding once per expanded node; the
    verdict is the generator's return value."""
    if node_bound < 1:
        raise ValueError("node_bound must be at least 1")
    automaton.machine.require_deterministic()
    graph = OrbitGraph([w])
    index = {w: 0}
    queue = deque([0])
    while queue:
        i = queue.popleft()
        node = graph.nodes[i]
        for q in automaton.states:
            try:
                image = act_on_upword(automaton, (q,), node)
            except UndefinedAction:
                continue
            j = index.get(image)
            if j is None:
                if len(graph.nodes) >= node_bound:
                    return BoundExceeded(graph, node_bound, 0)
                j = index[image] = len(graph.nodes)
                graph.nodes.append(image)
                queue.append(j)
            graph.edges.append((i, q, j))
        yield
    return Finite(graph, len(graph.nodes))


def _drain(steps):
    while True:
        try:
            next(steps)
        except StopIteration as stop:
            return stop.value


def orbit_explore(automaton: Automaton, w: UPWord, node_bound: int) -> Finite | BoundExceeded:
    return _drain(iter_orbit_explore(automaton, w, node_bound))


def orbit_finite_periodic(
    automaton: Automaton,
    period: Sequence[Token],
    step_bound: int = 256,
    node_bound: int = 10_000,
    pre: Sequence[Token] = (),
    pair_bound: int = 20_000,
) -> OrbitVerdict:
    """Finiteness of the orbit of ``pre period^ω``.

    Two bounded searches are stepped round-robin: torsion of ``rev(period)``
    in the semigroup of the dual automaton (finite orbit for any preperiod
    once found) and breadth-first search of the orbit itself. For a nonempty
    ``pre`` only the torsion direction is a sufficient condition; the closed
    search is authoritative.

    Deciding equality of two powers can need exponentially many pairs, so
    each test on the torsion side is capped at ``pair_bound`` visited pairs;
    hitting the cap abandons that side as undecided.
    """
    period = tuple(period)
    if not period:
        raise ValueError("period must be nonempty")
    w = normalize(pre, period)
    torsion_steps = iter_element_order(dual(automaton), tuple(reversed(period)), step_bound, pair_bound)
    bfs_steps = iter_orbit_explore(automaton, w, node_bound)
    torsion = bfs = None
    while torsion is None or bfs is None:
        if torsion is None:
            try:
                next(torsion_steps)
            except StopIteration as stop:
                torsion = stop.value
                if isinstance(torsion, Torsion):
                    break
            except ResourceLimitError:
                torsion = NoneFound(step_bound)
        if bfs is None:
            try:
                next(bfs_steps)
            except StopIteration as stop:
                bfs = stop.value
                if isinstance(bfs, Finite):
                    break
    if isinstance(torsion, Torsion):
        if bfs is None:
            bfs = _drain(bfs_steps)
        pair = (torsion.i, torsion.j)
        if isinstance(bfs, Finite):
            return Finite(bfs.graph, bfs.size, pair)
        return Finite(None, None, pair)
    if isinstance(bfs, Finite):
        pair = (torsion.i, torsion.j) if isinstance(torsion, Torsion) else None
        return Finite(bfs.graph, bfs.size, pair)
    return BoundExceeded(bfs.graph, node_bound, step_bound)


def infinite_orbit_letters(automaton: Automaton) -> dict[Token, tuple[Token, ...]]:
    """Letters in closed non-bireversible components of the dual, mapped to
    their component. Empty unless the automaton is a reversible but not
    bireversible G-automaton."""
    cls = classify(automaton)
    if not (cls.g_automaton and cls.reversible and not cls.bireversible):
        return {}
    letters = {}
    for comp in scc_analysis(dual(automaton)).components:
        if comp.closed and not comp.bireversible:
            for a in comp.states:
                letters[a] = comp.states
    return letters


def certify_infinite(automaton: Automaton, w: UPWord) -> OrbitVerdict:
    gamma = infinite_orbit_letters(automaton)
    for a in w.per:
        if a in gamma:
            comp = gamma[a]
            return CertifiedInfinite(
                f"letter {a} recurs in the period and belongs to the non-bireversible "
                f"dual component {{{', '.join(comp)}}} of a reversible G-automaton",
                a,
                comp,
            )
    return BoundExceeded(None, 0, 0)


def extract_periodic_finite(automaton: Automaton, w: UPWord, index_bound: int) -> tuple[Word, Word]:
    """Find ``k < l <= index_bound`` whose reversed prefixes of ``w`` act
    identically through the dual automaton, and return ``(w[:k], w[k:l])``.

    The orbit of ``u v^ω`` is then finite; for complete reversible automata so
    is the orbit of ``v^ω``. Raises :class:`ExtractionNotFound` otherwise,
    which does not tell an infinite orbit apart from a small bound.
    """
    d = dual(automaton)
    levels = LevelAction(d)
    m = d.machine
    prefixes: list[Word] = [()]
    arr = levels.identity
    buckets: dict[bytes, list[int]] = {arr.tobytes(): [0]}
    for length in range(1, index_bound + 1):
        prefix = w.prefix(length)
        arr = levels.left_multiply(m.state_index[prefix[-1]], arr)
        key = arr.tobytes()
        rev = tuple(reversed(prefix))
        for k in buckets.get(key, ()):
            if function_equal(d, tuple(reversed(prefixes[k])), rev):
                return prefixes[k], prefix[k:]
        buckets.setdefault(key, []).append(length)
        prefixes.append(prefix)
    raise ExtractionNotFound(f"no equivalent reversed prefixes of {w} up to length {index_bound}")
