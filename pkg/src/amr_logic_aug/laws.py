"""The four logical-equivalence graph rewrites and negative-sample builders.

Every rewrite takes a canonical grammar graph and produces a positive
(logically equivalent) graph plus one law-specific negative (logically
nonequivalent).  Conventions, all oracle-checked at construction time via
:func:`apply_law`:

contraposition (conditional only)
    positive: swap antecedent/consequent, toggle polarity on both halves;
    realized in the trailing "B if A." form.
    negative: the positive with its antecedent's polarity toggled back.
implication (conditional → disjunction)
    positive: or-root with the antecedent's polarity toggled.
    negative: the positive with its first operand's polarity toggled back.
implication (disjunction → conditional)
    positive: leading "If A, then B." with the first operand's polarity
    toggled (the toggled operand becomes the antecedent).
    negative: the positive with its consequent's polarity toggled.
commutative (conjunction only)
    positive: operands swapped.
    negative: the swapped graph with polarity toggled on both operands.
double negation (positive-polarity atomic with a lexicon antonym)
    positive: negate and substitute the antonym ("strong" → "not weak"),
    so realized text never stacks two "not" tokens.
    negative: substitute the antonym without negating ("weak").
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence

from . import logic
from .grammar import (
    AmrGraph,
    Clause,
    GrammarSentence,
    GrammarStructureError,
    Shape,
    build_graph,
    read_graph,
    realize,
)
from .lexicon import Lexicon


class LawError(ValueError):
    """A rewrite was applied to a graph outside its precondition."""


class OracleViolation(AssertionError):
    """A constructed pair failed its truth-table gate — a bug, not data."""


class LawKind(str, Enum):
    CONTRAPOSITION = "contraposition"
    IMPLICATION = "implication"
    COMMUTATIVE = "commutative"
    DOUBLE_NEGATION = "double-negation"


@dataclass(frozen=True)
class RewriteOutcome:
    law: LawKind
    positive: AmrGraph
    negatives: tuple[AmrGraph, ...]


def _struct(graph: AmrGraph) -> GrammarSentence:
    try:
        return read_graph(graph)
    except GrammarStructureError as err:
        raise LawError(f"graph outside grammar: {err}") from err


def applicable_laws(graph: AmrGraph, lexicon: Lexicon) -> set[LawKind]:
    """Laws whose preconditions the graph meets; {} for non-grammar graphs."""
    try:
        sentence = read_graph(graph)
    except GrammarStructureError:
        return set()
    if sentence.shape is Shape.IF_THEN:
        return {LawKind.CONTRAPOSITION, LawKind.IMPLICATION}
    if sentence.shape is Shape.OR_PAIR:
        return {LawKind.IMPLICATION}
    if sentence.shape is Shape.AND_PAIR:
        return {LawKind.COMMUTATIVE}
    clause = sentence.clauses[0]
    if not clause.negated and lexicon.antonym_of(clause.predicate) is not None:
        return {LawKind.DOUBLE_NEGATION}
    return set()


def apply_contraposition(graph: AmrGraph) -> RewriteOutcome:
    sentence = _struct(graph)
    if sentence.shape is not Shape.IF_THEN:
        raise LawError("contraposition requires a conditional root")
    ante, cons = sentence.clauses
    positive = GrammarSentence(
        Shape.IF_THEN, (cons.negate(), ante.negate()), trailing_condition=True
    )
    negative = GrammarSentence(
        Shape.IF_THEN, (cons, ante.negate()), trailing_condition=True
    )
    return RewriteOutcome(
        LawKind.CONTRAPOSITION, build_graph(positive), (build_graph(negative),)
    )


def apply_implication(graph: AmrGraph) -> RewriteOutcome:
    sentence = _struct(graph)
    if sentence.shape is Shape.IF_THEN:
        ante, cons = sentence.clauses
        positive = GrammarSentence(Shape.OR_PAIR, (ante.negate(), cons))
        negative = GrammarSentence(Shape.OR_PAIR, (ante, cons))
    elif sentence.shape is Shape.OR_PAIR:
        first, second = sentence.clauses
        positive = GrammarSentence(Shape.IF_THEN, (first.negate(), second))
        negative = GrammarSentence(Shape.IF_THEN, (first.negate(), second.negate()))
    else:
        raise LawError("implication requires a conditional or disjunction root")
    return RewriteOutcome(
        LawKind.IMPLICATION, build_graph(positive), (build_graph(negative),)
    )


def apply_commutative(graph: AmrGraph) -> RewriteOutcome:
    sentence = _struct(graph)
    if sentence.shape is not Shape.AND_PAIR:
        raise LawError("commutative requires a conjunction root")
    first, second = sentence.clauses
    positive = GrammarSentence(Shape.AND_PAIR, (second, first))
    negative = GrammarSentence(Shape.AND_PAIR, (second.negate(), first.negate()))
    return RewriteOutcome(
        LawKind.COMMUTATIVE, build_graph(positive), (build_graph(negative),)
    )


def apply_double_negation(graph: AmrGraph, lexicon: Lexicon) -> RewriteOutcome:
    sentence = _struct(graph)
    if sentence.shape is not Shape.ATOMIC:
        raise LawError("double negation requires an atomic predicate")
    clause = sentence.clauses[0]
    if clause.negated:
        raise LawError("double negation requires a predicate without polarity")
    antonym = lexicon.antonym_of(clause.predicate)
    if antonym is None:
        raise LawError(f"no antonym for {clause.predicate!r}")
    positive = GrammarSentence(Shape.ATOMIC, (Clause(clause.subject, antonym, True),))
    negative = GrammarSentence(Shape.ATOMIC, (Clause(clause.subject, antonym, False),))
    return RewriteOutcome(
        LawKind.DOUBLE_NEGATION, build_graph(positive), (build_graph(negative),)
    )


def apply_law(
    graph: AmrGraph, law: LawKind, lexicon: Lexicon, verify: bool = True
) -> RewriteOutcome:
    """Dispatch a rewrite and gate it through the truth-table oracle."""
    if law is LawKind.CONTRAPOSITION:
        outcome = apply_contraposition(graph)
    elif law is LawKind.IMPLICATION:
        outcome = apply_implication(graph)
    elif law is LawKind.COMMUTATIVE:
        outcome = apply_commutative(graph)
    else:
        outcome = apply_double_negation(graph, lexicon)
    if verify:
        verify_outcome(graph, outcome, lexicon)
    return outcome


def verify_outcome(
    original: AmrGraph, outcome: RewriteOutcome, lexicon: Lexicon
) -> None:
    """Raise :class:`OracleViolation` unless labels are semantically right."""
    source = logic.to_formula(original, lexicon)
    positive = logic.to_formula(outcome.positive, lexicon)
    if not logic.equivalent(source, positive):
        raise OracleViolation(
            f"{outcome.law.value} positive is not equivalent: "
            f"{realize(original)!r} vs {realize(outcome.positive)!r}"
        )
    for negative in outcome.negatives:
        if logic.equivalent(source, logic.to_formula(negative, lexicon)):
            raise OracleViolation(
                f"{outcome.law.value} negative is accidentally equivalent: "
                f"{realize(original)!r} vs {realize(negative)!r}"
            )


def flip_polarity_negative(
    graph: AmrGraph, lexicon: Lexicon, rng: random.Random
) -> AmrGraph:
    """Toggle the polarity of one random clause, oracle-checked."""
    sentence = _struct(graph)
    source = logic.to_formula(graph, lexicon)
    order = list(range(len(sentence.clauses)))
    rng.shuffle(order)
    for index in order:
        clauses = list(sentence.clauses)
        clauses[index] = clauses[index].negate()
        candidate = GrammarSentence(
            sentence.shape, tuple(clauses), sentence.trailing_condition
        )
        flipped = build_graph(candidate)
        if not logic.equivalent(source, logic.to_formula(flipped, lexicon)):
            return flipped
    raise LawError("no polarity flip yields a nonequivalent sentence")


def sample_corpus_negative(
    graph: AmrGraph,
    corpus: Sequence[AmrGraph],
    lexicon: Lexicon,
    rng: random.Random,
    attempts: int = 100,
) -> AmrGraph:
    """Draw a distinct, oracle-nonequivalent graph from the corpus."""
    if not corpus:
        raise LawError("corpus is empty; cannot sample a negative")
    source = logic.to_formula(graph, lexicon)
    for _ in range(attempts):
        candidate = corpus[rng.randrange(len(corpus))]
        if candidate == graph:
            continue
        if not logic.equivalent(source, logic.to_formula(candidate, lexicon)):
            return candidate
    raise LawError(
        f"no nonequivalent corpus sample found after {attempts} attempts"
    )


def make_negatives(
    graph: AmrGraph,
    corpus: Sequence[AmrGraph],
    seed: int,
    lexicon: Optional[Lexicon] = None,
) -> list[AmrGraph]:
    """Algorithm-style negatives: one polarity flip, one corpus sample."""
    from .lexicon import default_lexicon

    lexicon = lexicon or default_lexicon()
    rng = random.Random(seed)
    negatives = [flip_polarity_negative(graph, lexicon, rng)]
    negatives.append(sample_corpus_negative(graph, corpus, lexicon, rng))
    return negatives


__all__ = [
    "LawError",
    "OracleViolation",
    "LawKind",
    "RewriteOutcome",
    "applicable_laws",
    "apply_contraposition",
    "apply_implication",
    "apply_commutative",
    "apply_double_negation",
    "apply_law",
    "verify_outcome",
    "flip_polarity_negative",
    "sample_corpus_negative",
    "make_negatives",
]
