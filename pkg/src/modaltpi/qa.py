"""Query answering over a compilation, KB files and JSON persistence."""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import FormulaSyntaxError, NonClausalQueryError, SchemaError
from .formula import (
    Formula, TRUE, box, classify, land, lnot, nnf, parse, sort_formulas,
)
from .pi import CompilationResult
from .semantics import (
    DEFAULT_NODE_BUDGET, System, entails_mod, find_model,
)

__all__ = [
    "QueryVerdict", "KnowledgeBaseFile", "answer_query",
    "answer_query_direct", "load_kb", "save_compilation", "load_compilation",
    "SCHEMA_VERSION",
]

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class QueryVerdict:
    """Answer plus the evidence: an entailing compiled clause for a true
    compiled answer, a countermodel (model, world) for a false direct one."""

    query: Formula
    answer: bool
    witness: object
    method: str


def answer_query(comp: CompilationResult, q: Formula, strict: bool = False,
                 node_budget: int = DEFAULT_NODE_BUDGET) -> QueryVerdict:
    """Answer a clausal query from the compiled clause set.

    Default reading: true iff some compiled clause entails the query
    modulo the boxed theory.  `strict` switches to requiring every
    compiled clause to entail it, kept for comparison.
    """
    if classify(nnf(q)) not in ("literal", "clause"):
        raise NonClausalQueryError(f"not a clausal query: {q}")
    pool = comp.omega()
    hits = []
    for pi in pool:
        if entails_mod(pi, comp.box_y, q, comp.system, node_budget):
            hits.append(pi)
            if not strict:
                return QueryVerdict(q, True, pi, "compiled")
        elif strict:
            return QueryVerdict(q, False, None, "compiled")
    if strict and len(hits) == len(pool):
        return QueryVerdict(q, True, hits[0] if hits else None, "compiled")
    return QueryVerdict(q, False, None, "compiled")


def answer_query_direct(x: Formula, y: Formula, q: Formula, system: System,
                        node_budget: int = DEFAULT_NODE_BUDGET) -> QueryVerdict:
    """Baseline: decide x |= q modulo []y with the tableau directly."""
    by = box(y)
    answer = entails_mod(x, by, q, system, node_budget)
    witness = None
    if not answer:
        witness = find_model(land(x, by, nnf(lnot(q))), system, node_budget)
    return QueryVerdict(q, answer, witness, "direct")


# ---------------------------------------------------------------------------
# KB files: one formula per line, '#' comments, optional [theory] section
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class KnowledgeBaseFile:
    formulas: tuple
    theory: tuple
    path: str

    def kb_formula(self) -> Formula:
        return land(self.formulas)

    def theory_formula(self) -> Formula:
        return land(self.theory) if self.theory else TRUE


def load_kb(path: str) -> KnowledgeBaseFile:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    formulas, theory = [], []
    section = formulas
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.lower() == "[theory]":
            section = theory
            continue
        try:
            section.append(parse(line))
        except FormulaSyntaxError as err:
            raise FormulaSyntaxError(str(err.args[0]).split(": ", 1)[-1],
                                     line=line_no, column=err.column,
                                     source=path) from None
    if not formulas:
        raise FormulaSyntaxError("knowledge base has no formulas",
                                 line=1, column=1, source=path)
    return KnowledgeBaseFile(tuple(formulas), tuple(theory), path)


def save_compilation(comp: CompilationResult, path: str) -> None:
    payload = {
        "schema": SCHEMA_VERSION,
        "system": comp.system.value,
        "x": comp.x.key,
        "y": comp.y.key,
        "box_y": comp.box_y.key,
        "candidates": [c.key for c in comp.candidates],
        "theta": [c.key for c in comp.theta],
        "stats": {
            "nb_cl_candidates": comp.stats["nb_cl_candidates"],
            "nb_cl_theta": comp.stats["nb_cl_theta"],
            "entailment_calls": comp.stats["entailment_calls"],
            "elapsed_ms": comp.stats["elapsed_ms"],
        },
        "horn_advisory": comp.horn_advisory,
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")


def load_compilation(path: str) -> CompilationResult:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            payload = json.load(fh)
        except json.JSONDecodeError as err:
            raise SchemaError(f"{path}: not valid JSON ({err})") from None
    if not isinstance(payload, dict) or payload.get("schema") != SCHEMA_VERSION:
        raise SchemaError(
            f"{path}: unsupported schema {payload.get('schema')!r}, "
            f"expected {SCHEMA_VERSION}")
    try:
        return CompilationResult(
            x=parse(payload["x"]),
            y=parse(payload["y"]),
            system=System.from_name(payload["system"]),
            candidates=sort_formulas(parse(s) for s in payload["candidates"]),
            theta=sort_formulas(parse(s) for s in payload["theta"]),
            box_y=parse(payload["box_y"]),
            horn_advisory=bool(payload["horn_advisory"]),
            stats=dict(payload["stats"]),
        )
    except KeyError as err:
        raise SchemaError(f"{path}: missing field {err}") from None
