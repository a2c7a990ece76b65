"""Terms, formulas, parsing/printing, substitution, elementarization and
occurrence addressing."""

from .terms import (
    BB,
    BOUND_VAR,
    EvalOverflow,
    Prod,
    Succ,
    Sum,
    Term,
    Var,
    Zero,
    ZERO,
    bin0,
    bin1,
    eval_term,
    is_bound_term,
    iter_subterms,
    numeral,
    numeral_value,
    size,
    subst_term,
    term_vars,
)
from .formulas import (
    BlindAll,
    BlindEx,
    BOT,
    Bot,
    ChoAll,
    ChoAnd,
    ChoEx,
    ChoOr,
    ElemAtom,
    Eq,
    Formula,
    GenAtom,
    INTERPRETED,
    Not,
    OccPath,
    ParAnd,
    ParOr,
    Top,
    TOP,
    all_vars,
    bound_vars,
    check_free_bound_disjoint,
    children,
    choice_depth,
    cimp,
    elem_letters,
    free_vars,
    general_letters,
    implies,
    is_elementary,
    is_literal,
    iter_paths,
    negate,
    rebuild,
    replace_at,
    subformula_at,
    substitute_vars,
)
from .analysis import (
    Classification,
    Deletion,
    FRESH_STEM,
    classify,
    deletions,
    elementarize,
    fresh_var,
    is_critical,
    is_safe,
    is_surface,
    move_prefix,
    politerals,
    surface_choice_occurrences,
)
from .parser import ParseError, parse, parse_formula, parse_term
from .printer import print_formula, print_term
from .subst import (
    Entry,
    Substitution,
    SubstitutionError,
    apply_substitution,
    parse_substitution,
    print_substitution,
)

__all__ = [name for name in dir() if not name.startswith("_")]
