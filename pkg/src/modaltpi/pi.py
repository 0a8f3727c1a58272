"""Candidate implicates, minimization, prime implicates and compilation.

The pipeline: put the knowledge base (conjoined with the boxed theory)
into outer-level DNF, generate per-term candidate clauses, distribute one
candidate per term into disjunctions, then minimize modulo the theory by
collapsing equivalence classes and deleting entailed clauses.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from .errors import CapacityError, InconsistentTermError, PreconditionError
from .formula import (
    Formula, Or, TrueF, Var, FALSE, TRUE,
    TermParts, box, decompose_term, dia, land, lor, modal_depth, nnf,
    sort_formulas,
)
from .normal_forms import DEFAULT_SIZE_CAP, to_cnf, to_dnf
from .semantics import (
    DEFAULT_NODE_BUDGET, System, entails, entails_mod, equivalent_mod,
)

__all__ = [
    "CompilationResult", "term_candidates", "candidates", "residue",
    "prime_implicates", "theory_prime_implicates", "compile_kb",
    "is_horn", "default_theory",
]


@dataclass(frozen=True)
class CompilationResult:
    """Everything the query answerer needs, plus bookkeeping counters."""

    x: Formula
    y: Formula
    system: System
    candidates: tuple
    theta: tuple
    box_y: Formula
    horn_advisory: bool
    stats: dict

    def omega(self) -> tuple:
        """The compiled clause set: theta together with the boxed theory.

        A trivial (true) theory contributes no clause.
        """
        extra = set() if isinstance(self.box_y, TrueF) else {self.box_y}
        return sort_formulas(set(self.theta) | extra)


def term_candidates(parts, system: System = System.T) -> tuple:
    """Candidate implicate clauses of a single term.

    Propositional literals pass through; each <>-body is bundled with the
    conjunction of all []-bodies under <>; the []-bodies are bundled under
    a single [].  The system parameter is accepted for interface symmetry;
    the construction itself is syntactic.
    """
    if isinstance(parts, Formula):
        parts = decompose_term(parts)
    if not parts.prop_consistent():
        raise InconsistentTermError(f"term {parts.formula()} is contradictory")
    out = list(parts.prop)
    boxed = land(parts.box)
    for b in parts.dia:
        out.append(dia(land(b, boxed)))
    if parts.box:
        out.append(box(boxed))
    return sort_formulas(set(out))


def candidates(f: Formula, system: System = System.T,
               max_clauses: int = DEFAULT_SIZE_CAP) -> tuple:
    """Candidate implicates of a formula: distribute per-term candidates.

    Returns (false,) when the formula has no satisfiable terms at the
    propositional level, and () when it is the constant true.
    """
    g = nnf(f)
    terms = to_dnf(g, max_clauses).terms
    if not terms:
        return (FALSE,)
    if len(terms) == 1 and isinstance(terms[0], TrueF):
        return ()
    per_term = [term_candidates(t, system) for t in terms]
    acc = {frozenset()}
    for cands in per_term:
        nxt = set()
        for chosen in acc:
            for c in cands:
                nxt.add(chosen | {c})
                if len(nxt) > max_clauses:
                    raise CapacityError(f"size cap {max_clauses} exceeded")
        acc = nxt
    return sort_formulas({lor(s) for s in acc})


def _disjuncts(c: Formula) -> frozenset:
    if isinstance(c, Or):
        return frozenset(d.key for d in c.children)
    return frozenset((c.key,))


def _minimize(clauses, theory: Formula, system: System,
              node_budget: int = DEFAULT_NODE_BUDGET):
    """Collapse equivalence classes modulo the theory, delete entailed
    clauses; returns (surviving clauses, number of tableau entailment
    checks run)."""
    calls = 0
    cs = sort_formulas(set(clauses))

    # cheap sweep first: a clause whose disjuncts strictly contain another
    # clause's is entailed by it outright
    dsets = {c.key: _disjuncts(c) for c in cs}
    cs = [c for c in cs
          if not any(o.key != c.key and dsets[o.key] < dsets[c.key] for o in cs)]

    reps = []  # class representatives, canonical order keeps the shortest
    for c in cs:
        merged = False
        for r in reps:
            calls += 2
            if equivalent_mod(c, r, theory, system, node_budget):
                merged = True
                break
        if not merged:
            reps.append(c)

    kept = []
    for c in reps:
        dominated = False
        for o in reps:
            if o.key == c.key:
                continue
            calls += 1
            if entails_mod(o, theory, c, system, node_budget):
                dominated = True
                break
        if not dominated:
            kept.append(c)
    return sort_formulas(kept), calls


def residue(clauses, theory: Formula, system: System,
            node_budget: int = DEFAULT_NODE_BUDGET) -> tuple:
    """Pairwise incomparable survivors of the clause set modulo the theory."""
    kept, _ = _minimize(clauses, theory, system, node_budget)
    return kept


def prime_implicates(x: Formula, system: System = System.T,
                     max_clauses: int = DEFAULT_SIZE_CAP,
                     node_budget: int = DEFAULT_NODE_BUDGET) -> tuple:
    """Entailment-minimal implicates of x (theory-free minimization)."""
    return residue(candidates(x, system, max_clauses), TRUE, system, node_budget)


def is_horn(y: Formula) -> bool:
    """At most one positive literal per clause of the propositional CNF."""
    if modal_depth(y) != 0:
        raise ValueError("horn check expects a propositional formula")
    for clause in to_cnf(y).clauses:
        lits = clause.children if isinstance(clause, Or) else (clause,)
        if sum(1 for l in lits if isinstance(l, Var)) > 1:
            return False
    return True


def default_theory(x: Formula, system: System = System.T) -> Formula:
    """Propositional clauses of the CNF of x, re-verified as entailed."""
    props = [c for c in to_cnf(nnf(x)).clauses if modal_depth(c) == 0]
    y = land(props)
    if not entails(x, y, system):
        raise PreconditionError("extracted theory is not entailed")
    return y


def theory_prime_implicates(x: Formula, y: Formula,
                            system: System = System.T,
                            max_clauses: int = DEFAULT_SIZE_CAP,
                            node_budget: int = DEFAULT_NODE_BUDGET) -> CompilationResult:
    """Compile x against the boxed propositional theory y.

    Requires y propositional and x |= y; candidates are computed for
    x & []y and minimized modulo []y.
    """
    if modal_depth(y) != 0:
        raise PreconditionError("theory must be propositional")
    if not entails(x, y, system, node_budget):
        raise PreconditionError("knowledge base does not entail the theory")
    started = time.perf_counter()
    by = box(y)
    cands = candidates(land(x, by), system, max_clauses)
    theta, calls = _minimize(cands, by, system, node_budget)
    elapsed_ms = (time.perf_counter() - started) * 1000.0
    return CompilationResult(
        x=x, y=y, system=system,
        candidates=cands, theta=theta, box_y=by,
        horn_advisory=is_horn(y),
        stats={
            "nb_cl_candidates": len(cands),
            "nb_cl_theta": len(theta),
            "entailment_calls": calls,
            "elapsed_ms": elapsed_ms,
        },
    )


def compile_kb(x: Formula, y: Formula, system: System = System.T,
               max_clauses: int = DEFAULT_SIZE_CAP,
               node_budget: int = DEFAULT_NODE_BUDGET) -> CompilationResult:
    """The query-ready compilation: theory prime implicates plus []y."""
    return theory_prime_implicates(x, y, system, max_clauses, node_budget)
