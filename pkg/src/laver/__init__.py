"""Laver tables: forward, backward and critical-point calculus."""

from .backward import b_period, b_row, bs, bs_iter, subalg, template_embed
from .core import (
    BudgetExceeded,
    CompressedTable,
    ElementRangeError,
    LevelError,
    build_table,
    compose,
    get_table,
    period_length,
    star,
    star_prime,
)
from .crit import ABOVE_CAP, ResidueVector, crit_index, gamma_image
from .structure import accelerated_bs, validate_params
from .terms import eval_term, f_of, j_sub, j_sup, parse_term

__all__ = [
    "ABOVE_CAP", "BudgetExceeded", "CompressedTable", "ElementRangeError", "LevelError",
    "ResidueVector", "accelerated_bs", "b_period", "b_row", "bs", "bs_iter", "build_table",
    "compose", "crit_index", "eval_term", "f_of", "gamma_image", "get_table", "j_sub", "j_sup",
    "parse_term", "period_length", "star", "star_prime", "subalg", "template_embed",
    "validate_params",
]
