"""Automaton semigroups and groups: actions on finite and ultimately periodic
words, dual and inverse automata, orbital graphs and semigroup closures."""

from .action import (
    ActResult,
    Difference,
    ResourceLimitError,
    StateSeq,
    act,
    act_dual,
    find_difference,
    function_equal,
    function_equal_on_upword,
)
from .algebra import (
    ElementSet,
    NoneFound,
    Torsion,
    element_order,
    ideal_vs_orbit_crosscheck,
    left_ideal,
    semigroup_enumerate,
)
from .constructions import (
    GillibertInput,
    adding_machine,
    gillibert_extend,
    grigorchuk,
    lambda_seq,
    pq_automaton,
    reduction_word,
    t1_automaton,
    verify_dagger,
)
from .mealy import (
    Automaton,
    AutomatonError,
    Classification,
    NotInvertibleError,
    ParseError,
    SccReport,
    classify,
    dual,
    format_automaton,
    group_closure,
    inverse,
    parse_automaton,
    scc_analysis,
)
from .orbit import (
    BoundExceeded,
    CertifiedInfinite,
    ExtractionNotFound,
    Finite,
    OrbitGraph,
    certify_infinite,
    extract_periodic_finite,
    orbit_explore,
    orbit_finite_periodic,
)
from .upword import UndefinedAction, UPWord, act_on_upword, normalize, tail_letters, upword_equal

__version__ = "0.1.0"
