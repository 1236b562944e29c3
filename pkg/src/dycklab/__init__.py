"""Dyck-sequence statistics, insertion bijections and skeleton formulas for
the q,t-Catalan polynomials, with exhaustive finite checkers."""

from .seqcore import (
    DomainError,
    InjectionError,
    QtPoly,
    ResourceError,
    SeqParseError,
    area,
    brute_force_catalan,
    defc,
    di,
    dinv,
    enumerate_dyck,
    find_extractable,
    format_seq,
    inject,
    parse_seq,
    statistics,
)
from .insertion import (
    DualFactorization,
    DyckTableau,
    RecordingTableau,
    extract_factorization,
    insert_factorization,
    rowsert,
    tabsert,
    worsert,
)
from .bijections import phi, phi_inverse, two_column_catalan
from .skeleton import (
    StageError,
    down,
    east,
    flat_middle_scan,
    low_deficit_catalan,
    make_strings,
    partition_formula,
    up,
    west,
)

__version__ = "0.1.0"

__all__ = [
    "DomainError", "InjectionError", "ResourceError", "SeqParseError", "QtPoly",
    "area", "dinv", "di", "defc", "statistics", "enumerate_dyck", "find_extractable",
    "inject", "format_seq", "parse_seq", "brute_force_catalan",
    "DualFactorization", "DyckTableau", "RecordingTableau", "rowsert", "worsert",
    "tabsert", "insert_factorization", "extract_factorization",
    "phi", "phi_inverse", "two_column_catalan",
    "StageError", "east", "west", "up", "down", "make_strings",
    "low_deficit_catalan", "partition_formula", "flat_middle_scan",
    "__version__",
]
