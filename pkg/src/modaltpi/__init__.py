"""Knowledge compilation for modal logics K and T.

Compiles a modal knowledge base X and a propositional theory Y entailed
by it into the theory prime implicates of X modulo []Y, and answers
clausal queries against the compilation.
"""

from .errors import (
    BudgetExceededError, CapacityError, FormulaSyntaxError,
    InconsistentTermError, ModalTpiError, NonClausalQueryError,
    NotAClauseError, NotATermError, PreconditionError, SchemaError,
)
from .formula import (
    Formula, TRUE, FALSE, parse, format_formula, nnf, classify,
    ClauseParts, TermParts, decompose_clause, decompose_term,
    variables, modal_depth, var, land, lor, lnot, box, dia,
)
from .semantics import (
    System, KripkeModel, evaluate, is_satisfiable, find_model,
    entails, entails_mod, equivalent, equivalent_mod,
)
from .normal_forms import Cnf, Dnf, to_cnf, to_dnf, nb_cl
from .pi import (
    CompilationResult, term_candidates, candidates, residue,
    prime_implicates, theory_prime_implicates, compile_kb,
    is_horn, default_theory,
)
from .oracle import (
    OracleBounds, EnumerationOutcome, sufficient_bounds,
    sat_by_enumeration, enumerate_implicates, check_decomposition,
)
from .qa import (
    QueryVerdict, KnowledgeBaseFile, answer_query, answer_query_direct,
    load_kb, save_compilation, load_compilation,
)

__version__ = "0.1.0"
