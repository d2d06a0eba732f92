"""Answer sets of ground normal logic programs via colorings of the rule dependency graph."""

from .checker import check_i, check_i_dprime, check_i_prime, check_ii, check_iii
from .coloring import Coloring, Conflict, Interpretation3, classify, interpretation_of, join, leq, sets
from .oracle import compatible, enumerate_answer_sets, is_answer_set
from .program import ParseError, Program, Rule, cn, format_program, generating_rules, parse_program, reduct
from .rdg import Rdg, build_rdg, restrict
from .semantics import fitting_lfp, fitting_step, gus, is_unfounded_set, well_founded_model, wfm_oracle
from .solver import SearchLimits, SearchStats, SolveResult, Strategy, solve, trace

__all__ = [
    "Coloring", "Conflict", "Interpretation3", "ParseError", "Program", "Rdg", "Rule",
    "SearchLimits", "SearchStats", "SolveResult", "Strategy",
    "build_rdg", "check_i", "check_i_dprime", "check_i_prime", "check_ii", "check_iii",
    "classify", "cn", "compatible", "enumerate_answer_sets", "fitting_lfp", "fitting_step",
    "format_program", "generating_rules", "gus", "interpretation_of", "is_answer_set",
    "is_unfounded_set", "join", "leq", "parse_program", "reduct", "restrict", "sets", "solve",
    "trace", "well_founded_model", "wfm_oracle",
]
