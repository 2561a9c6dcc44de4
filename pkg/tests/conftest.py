import random
import sys
from pathlib import Path

import pytest
from hypothesis import settings
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from mealyorbits import constructions, mealy  # noqa: E402
from mealyorbits.mealy import Automaton  # noqa: E402

CORPUS_DIR = Path(mealy.__file__).parent / "corpus"

settings.register_profile("repo", deadline=None, derandomize=True)
settings.load_profile("repo")


def naive_act(automaton, seq, word):
    """Reference cross-diagram evaluation straight from the transition dict.

    Returns ``(output, next)`` or ``None`` when some transition is missing.
    """
    delta = automaton.delta
    cur = list(word)
    nxt = []
    for q in reversed(seq):
        out = []
        for a in cur:
            if (q, a) not in delta:
                return None
            b, q = delta[q, a]
            out.append(b)
        nxt.append(q)
        cur = out
    return tuple(cur), tuple(reversed(nxt))


def build_random(rng, n_states, n_letters, density=1.0):
    states = tuple(f"q{i}" for i in range(n_states))
    letters = tuple(f"x{i}" for i in range(n_letters))
    trans = []
    for p in states:
        for a in letters:
            if rng.random() < density:
                trans.append((p, a, rng.choice(letters), rng.choice(states)))
    return Automaton(states, letters, tuple(trans))


def build_random_permutational(rng, n_states, n_letters):
    """Random complete automaton whose output maps are permutations."""
    states = tuple(f"q{i}" for i in range(n_states))
    letters = tuple(f"x{i}" for i in range(n_letters))
    trans = []
    for p in states:
        perm = list(letters)
        rng.shuffle(perm)
        for a, b in zip(letters, perm):
            trans.append((p, a, b, rng.choice(states)))
    return Automaton(states, letters, tuple(trans))


@st.composite
def automata(draw, max_states=3, max_letters=3, partial=True):
    seed = draw(st.integers(0, 2**32 - 1))
    n = draw(st.integers(1, max_states))
    k = draw(st.integers(1, max_letters))
    density = draw(st.sampled_from([0.7, 1.0])) if partial else 1.0
    return build_random(random.Random(seed), n, k, density)


@st.composite
def automaton_with_seq_and_word(draw, max_len=4, **kw):
    a = draw(automata(**kw))
    seq = tuple(draw(st.lists(st.sampled_from(a.states), max_size=max_len)))
    word = tuple(draw(st.lists(st.sampled_from(a.alphabet), max_size=max_len)))
    return a, seq, word


def corpus():
    """Named automata used across the suites."""
    return {
        "adding": constructions.adding_machine(),
        "grigorchuk": constructions.grigorchuk(),
        "grigorchuk_dual": mealy.dual(constructions.grigorchuk()),
        "pq": constructions.pq_automaton(),
        "t1": constructions.t1_automaton(),
        "rnb": mealy.parse_automaton((CORPUS_DIR / "rnb.aut").read_text()),
    }


@pytest.fixture(scope="session")
def adding():
    return constructions.adding_machine()


@pytest.fixture(scope="session")
def grig():
    return constructions.grigorchuk()


@pytest.fixture(scope="session")
def pq():
    return constructions.pq_automaton()


@pytest.fixture(scope="session")
def t1():
    return constructions.t1_automaton()


@pytest.fixture(scope="session")
def rnb():
    return corpus()["rnb"]


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(RESULTS, key=lambda s: int(s[6:8])):
            terminalreporter.write_line(line)
