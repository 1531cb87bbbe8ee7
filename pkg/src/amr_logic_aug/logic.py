"""Propositional semantics for grammar graphs.

Graphs are interpreted as formulas over atoms ``(subject, attribute)``.
Atom construction normalizes antonyms: when a lexicon pairs two attributes,
the lexicographically smaller one is the base form and the other side is
represented as ``Not(Atom(subject, base))``.  That makes e.g. "weak" and
"not strong" the same literal, which is what lets a truth-table check
recognise antonym substitutions as equivalences.

Equivalence is decided by exhaustive truth-table enumeration, which is exact
for the small formulas this package produces; a budget of
:data:`MAX_ORACLE_ATOMS` distinct atoms keeps that enumeration cheap and is
enforced with an error rather than silently degrading.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .graph import AmrGraph
from .lexicon import Lexicon

MAX_ORACLE_ATOMS = 8


class LogicError(ValueError):
    """Raised for non-grammar graphs and oracle budget violations."""


@dataclass(frozen=True)
class Atom:
    subject: str
    attribute: str

    def __str__(self) -> str:
        return f"{self.subject}:{self.attribute}"


@dataclass(frozen=True)
class Not:
    operand: "Formula"

    def __str__(self) -> str:
        return f"~{self.operand}"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"

    def __str__(self) -> str:
        return f"({self.left} & {self.right})"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"

    def __str__(self) -> str:
        return f"({self.left} | {self.right})"


@dataclass(frozen=True)
class Implies:
    antecedent: "Formula"
    consequent: "Formula"

    def __str__(self) -> str:
        return f"({self.antecedent} -> {self.consequent})"


Formula = Union[Atom, Not, And, Or, Implies]


def negate(formula: Formula) -> Formula:
    """Logical negation with double negations collapsed at construction."""
    if isinstance(formula, Not):
        return formula.operand
    return Not(formula)


def make_atom(subject: str, attribute: str, negated: bool, lexicon: Lexicon) -> Formula:
    """Build a normalized literal for one clause.

    The attribute is mapped to the base side of its antonym pair (if any)
    before the clause's own negation is applied.
    """
    partner = lexicon.antonym_of(attribute)
    literal: Formula
    if partner is not None and partner < attribute:
        literal = Not(Atom(subject, partner))
    else:
        literal = Atom(subject, attribute)
    return negate(literal) if negated else literal


def atoms(formula: Formula) -> tuple[Atom, ...]:
    """All distinct atoms in first-occurrence order."""
    seen: dict[Atom, None] = {}
    stack = [formula]
    while stack:
        node = stack.pop()
        if isinstance(node, Atom):
            seen.setdefault(node)
        elif isinstance(node, Not):
            stack.append(node.operand)
        elif isinstance(node, (And, Or)):
            stack.append(node.right)
            stack.append(node.left)
        else:
            stack.append(node.consequent)
            stack.append(node.antecedent)
    return tuple(seen)


def evaluate(formula: Formula, assignment: dict[Atom, bool]) -> bool:
    if isinstance(formula, Atom):
        return assignment[formula]
    if isinstance(formula, Not):
        return not evaluate(formula.operand, assignment)
    if isinstance(formula, And):
        return evaluate(formula.left, assignment) and evaluate(formula.right, assignment)
    if isinstance(formula, Or):
        return evaluate(formula.left, assignment) or evaluate(formula.right, assignment)
    return (not evaluate(formula.antecedent, assignment)) or evaluate(
        formula.consequent, assignment
    )


def _assignments(variables: tuple[Atom, ...]):
    n = len(variables)
    for mask in range(1 << n):
        yield {atom: bool(mask >> i & 1) for i, atom in enumerate(variables)}


def equivalent(first: Formula, second: Formula) -> bool:
    """Truth-table equivalence over the union of both formulas' atoms."""
    variables = tuple(dict.fromkeys(atoms(first) + atoms(second)))
    if len(variables) > MAX_ORACLE_ATOMS:
        raise LogicError(
            f"atom budget exceeded: {len(variables)} atoms > {MAX_ORACLE_ATOMS}"
        )
    return all(
        evaluate(first, assignment) == evaluate(second, assignment)
        for assignment in _assignments(variables)
    )


def is_tautology(formula: Formula) -> bool:
    variables = atoms(formula)
    if len(variables) > MAX_ORACLE_ATOMS:
        raise LogicError(
            f"atom budget exceeded: {len(variables)} atoms > {MAX_ORACLE_ATOMS}"
        )
    return all(evaluate(formula, assignment) for assignment in _assignments(variables))


def to_formula(graph: AmrGraph, lexicon: Lexicon) -> Formula:
    """Interpret a grammar graph as a propositional formula.

    Raises :class:`LogicError` with ``unsupported structure`` for graphs the
    sentence grammar cannot produce (multi-operand connectives, missing
    subjects, nested compounds).
    """
    from . import grammar  # local import: grammar depends on graph only

    try:
        sentence = grammar.read_graph(graph)
    except grammar.GrammarStructureError as err:
        raise LogicError(f"unsupported structure: {err}") from err
    return formula_of_struct(sentence, lexicon)


def formula_of_struct(sentence, lexicon: Lexicon) -> Formula:
    """Interpret a grammar struct directly (clauses in struct order)."""
    from . import grammar

    def clause_formula(clause) -> Formula:
        return make_atom(clause.subject, clause.predicate, clause.negated, lexicon)

    if sentence.shape is grammar.Shape.ATOMIC:
        return clause_formula(sentence.clauses[0])
    first = clause_formula(sentence.clauses[0])
    second = clause_formula(sentence.clauses[1])
    if sentence.shape is grammar.Shape.AND_PAIR:
        return And(first, second)
    if sentence.shape is grammar.Shape.OR_PAIR:
        return Or(first, second)
    return Implies(first, second)


def graphs_equivalent(first: AmrGraph, second: AmrGraph, lexicon: Lexicon) -> bool:
    return equivalent(to_formula(first, lexicon), to_formula(second, lexicon))


__all__ = [
    "MAX_ORACLE_ATOMS",
    "LogicError",
    "Atom",
    "Not",
    "And",
    "Or",
    "Implies",
    "Formula",
    "negate",
    "make_atom",
    "atoms",
    "evaluate",
    "equivalent",
    "is_tautology",
    "to_formula",
    "formula_of_struct",
    "graphs_equivalent",
]
