"""Parameterized equivalence, p-periods and parameterized squares, with
exhaustive checkers for the periodicity lemmas and square-count bounds."""
from .core import (
    Bijection, DomainError, ParseError, PartialBijection, PrevEncoding,
    PString, apply, bijection_compose, canonical_strings, format_pstring,
    permutation_parity, prev_encode, pstring_parse,
)
from .pequiv import EquivWitness, p_equivalent, p_equivalent_oracle, recover_witness
from .pperiod import PPeriodWitness, all_pperiods, is_pperiod, smallest_pperiod
from .psquares import (
    ClassKey, SquareOccurrence, count_nonequiv_proper_psquares,
    count_nonequiv_psquares, enumerate_psquares, is_psquare,
    prefix_psquares_without_other_occurrence,
)

__version__ = "0.1.0"
