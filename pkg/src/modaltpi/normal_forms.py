"""Outer-level CNF/DNF and the clause-count measure.

Distribution happens only at the outermost boolean level; bodies under
[] and <> are opaque literals here and are never rewritten.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CapacityError
from .formula import (
    And, FalseF, Formula, Not, Or, TrueF, Var, TRUE, FALSE,
    land, lor, nnf, sort_formulas,
)

__all__ = ["Cnf", "Dnf", "to_cnf", "to_dnf", "nb_cl", "DEFAULT_SIZE_CAP"]

DEFAULT_SIZE_CAP = 10_000


@dataclass(frozen=True)
class Cnf:
    """Conjunction of clauses; an empty tuple is the constant true."""

    clauses: tuple

    def formula(self) -> Formula:
        return land(self.clauses)


@dataclass(frozen=True)
class Dnf:
    """Disjunction of terms; an empty tuple is the constant false."""

    terms: tuple

    def formula(self) -> Formula:
        return lor(self.terms)


def _cross(groups, combine, cap):
    """Distribute: pick one member from each group and combine."""
    acc = {frozenset()}
    for group in groups:
        nxt = set()
        for chosen in acc:
            for g in group:
                nxt.add(chosen | {g})
                if len(nxt) > cap:
                    raise CapacityError(f"size cap {cap} exceeded")
        acc = nxt
    return [combine(parts) for parts in acc]


def to_cnf(f: Formula, max_clauses: int = DEFAULT_SIZE_CAP) -> Cnf:
    """Clausal form of the outer boolean level, preserving equivalence."""
    g = nnf(f)
    clauses = _cnf_clauses(g, max_clauses)
    if len(clauses) > max_clauses:
        raise CapacityError(f"size cap {max_clauses} exceeded")
    return Cnf(sort_formulas(clauses))


def _cnf_clauses(g: Formula, cap) -> set:
    if isinstance(g, TrueF):
        return set()
    if isinstance(g, And):
        out = set()
        for c in g.children:
            out |= _cnf_clauses(c, cap)
            if len(out) > cap:
                raise CapacityError(f"size cap {cap} exceeded")
        return out
    if isinstance(g, Or):
        groups = [sorted(_cnf_clauses(c, cap), key=lambda x: x.key)
                  or [FALSE] for c in g.children]
        merged = _cross(groups, lambda parts: lor(
            [d for p in parts for d in (p.children if isinstance(p, Or) else (p,))]
        ), cap)
        return set(merged)
    # literal, modal literal, false: a unit clause
    return {g}


def to_dnf(f: Formula, max_terms: int = DEFAULT_SIZE_CAP) -> Dnf:
    """Term form of the outer boolean level; contradictory terms dropped.

    A term is dropped when its propositional literals contain a
    complementary pair (a cheap syntactic test; deeper pruning is the
    business of the minimization stage).
    """
    g = nnf(f)
    terms = _dnf_terms(g, max_terms)
    kept = [t for t in terms if not _prop_contradictory(t)]
    if len(kept) > max_terms:
        raise CapacityError(f"size cap {max_terms} exceeded")
    return Dnf(sort_formulas(kept))


def _dnf_terms(g: Formula, cap) -> set:
    if isinstance(g, FalseF):
        return set()
    if isinstance(g, Or):
        out = set()
        for c in g.children:
            out |= _dnf_terms(c, cap)
            if len(out) > cap:
                raise CapacityError(f"size cap {cap} exceeded")
        return out
    if isinstance(g, And):
        groups = [sorted(_dnf_terms(c, cap), key=lambda x: x.key)
                  or [TRUE] for c in g.children]
        merged = _cross(groups, lambda parts: land(
            [d for p in parts for d in (p.children if isinstance(p, And) else (p,))]
        ), cap)
        return set(merged)
    return {g}


def _prop_contradictory(t: Formula) -> bool:
    lits = t.children if isinstance(t, And) else (t,)
    pos = {l.name for l in lits if isinstance(l, Var)}
    neg = {l.child.name for l in lits if isinstance(l, Not)}
    return bool(pos & neg) or any(isinstance(l, FalseF) for l in lits)


def nb_cl(c) -> int:
    """Number of clauses of a CNF (or length of any clause collection)."""
    if isinstance(c, Cnf):
        return len(c.clauses)
    return len(tuple(c))
