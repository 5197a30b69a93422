"""Induced subgraphs of Kneser graphs: extremal families, degree statistics,
bound checkers, spread families and exact search on small instances."""

from .errors import BudgetError, DomainError
from .kneser import Family, covering_number, degree, edge_count, is_intersecting, max_degree
from .setkit import Params, binom, lex_family, lex_rank, lex_unrank

__all__ = [
    "BudgetError",
    "DomainError",
    "Family",
    "Params",
    "binom",
    "covering_number",
    "degree",
    "edge_count",
    "is_intersecting",
    "lex_family",
    "lex_rank",
    "lex_unrank",
    "max_degree",
]
