"""Partial non-principal ultrafilters over ultimately periodic sets."""

from .algebra import Algebra, span
from .eliminate import FilterTrace, eliminate, verify_uqf
from .errors import (
    CertificateMismatch,
    DomainError,
    FuelExhausted,
    GeneratorCap,
    NonUPArgument,
    NotAPartition,
    NotEnoughElements,
    NotInAlgebra,
    OracleUnavailable,
    ParseError,
    PeriodOverflow,
    TermTypeError,
)
from .mu import SearchableFn, k_prime, mu_search, mu_via_filter, x_f
from .pfilter import (
    PartialFilter,
    index_filter,
    trivial_filter,
    verify_axioms,
    verify_index_filter,
)
from .ultralimit import UPSeq, level_sets, subsequence_witness, ultralimit
from .upset import UPSet

__all__ = [
    "Algebra", "span",
    "FilterTrace", "eliminate", "verify_uqf",
    "CertificateMismatch", "DomainError", "FuelExhausted", "GeneratorCap", "NonUPArgument",
    "NotAPartition", "NotEnoughElements", "NotInAlgebra", "OracleUnavailable", "ParseError",
    "PeriodOverflow", "TermTypeError",
    "SearchableFn", "k_prime", "mu_search", "mu_via_filter", "x_f",
    "PartialFilter", "index_filter", "trivial_filter", "verify_axioms", "verify_index_filter",
    "UPSeq", "level_sets", "subsequence_witness", "ultralimit",
    "UPSet",
]
