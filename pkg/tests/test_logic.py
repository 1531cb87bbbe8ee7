"""Formula construction, the truth-table oracle, and graph-to-formula reading."""

from __future__ import annotations

import itertools
import random

import pytest

from amr_logic_aug.grammar import parse_sentence
from amr_logic_aug.logic import (
    MAX_ORACLE_ATOMS,
    And,
    Atom,
    Implies,
    LogicError,
    Not,
    Or,
    equivalent,
    is_tautology,
    make_atom,
    negate,
    to_formula,
)
from amr_logic_aug.graph import parse_penman


# --- independent re-implementation of the oracle, for cross-checking -------


def eval2(formula, assignment):
    if isinstance(formula, Atom):
        return assignment[(formula.subject, formula.attribute)]
    if isinstance(formula, Not):
        return not eval2(formula.operand, assignment)
    if isinstance(formula, And):
        return eval2(formula.left, assignment) and eval2(formula.right, assignment)
    if isinstance(formula, Or):
        return eval2(formula.left, assignment) or eval2(formula.right, assignment)
    if isinstance(formula, Implies):
        return (not eval2(formula.antecedent, assignment)) or eval2(
            formula.consequent, assignment
        )
    raise TypeError(formula)


def atoms2(formula):
    if isinstance(formula, Atom):
        return {(formula.subject, formula.attribute)}
    if isinstance(formula, Not):
        return atoms2(formula.operand)
    if isinstance(formula, Implies):
        return atoms2(formula.antecedent) | atoms2(formula.consequent)
    return atoms2(formula.left) | atoms2(formula.right)


def equivalent2(f, g):
    names = sorted(atoms2(f) | atoms2(g))
    for values in itertools.product([False, True], repeat=len(names)):
        assignment = dict(zip(names, values))
        if eval2(f, assignment) != eval2(g, assignment):
            return False
    return True


def random_formula(rng: random.Random, depth: int = 3):
    # 3 subjects x 2 attributes = 6 possible atoms, inside the oracle budget
    # even across a formula pair.
    if depth == 0 or rng.random() < 0.3:
        atom = Atom(rng.choice("pqr"), rng.choice("ab"))
        return Not(atom) if rng.random() < 0.5 else atom
    kind = rng.choice(["not", "and", "or", "implies"])
    if kind == "not":
        return Not(random_formula(rng, depth - 1))
    left = random_formula(rng, depth - 1)
    right = random_formula(rng, depth - 1)
    return {"and": And, "or": Or, "implies": Implies}[kind](left, right)


def test_oracle_agrees_with_independent_enumerator():
    rng = random.Random(42)
    agree = 0
    for _ in range(1000):
        f, g = random_formula(rng), random_formula(rng)
        assert equivalent(f, g) == equivalent2(f, g)
        agree += 1
    assert agree == 1000


# --- construction and normalization ----------------------------------------


def test_make_atom_normalizes_antonyms(lexicon):
    # the antonym-side adjective becomes a negated base atom
    weak = make_atom("the cat", "weak", False, lexicon)
    strong = make_atom("the cat", "strong", False, lexicon)
    assert weak == Not(strong)
    assert equivalent(make_atom("the cat", "weak", True, lexicon), strong)
    # the base attribute is the lexicographically smaller of the pair
    assert isinstance(strong, Atom) and strong.attribute == "strong"


def test_make_atom_without_antonym(lexicon):
    atom = make_atom("the cat", "round", False, lexicon)
    assert atom == Atom("the cat", "round")
    assert make_atom("the cat", "round", True, lexicon) == Not(atom)


def test_negate_collapses_double_negation():
    atom = Atom("p", "a")
    assert negate(atom) == Not(atom)
    assert negate(Not(atom)) == atom
    assert negate(negate(And(atom, atom))) == And(atom, atom)


def test_equivalence_basics():
    p, q = Atom("p", "a"), Atom("q", "a")
    assert equivalent(Implies(p, q), Or(Not(p), q))
    assert equivalent(Implies(p, q), Implies(Not(q), Not(p)))
    assert equivalent(And(p, q), And(q, p))
    assert not equivalent(Implies(p, q), Implies(q, p))
    assert is_tautology(Or(p, Not(p)))
    assert not is_tautology(p)


def test_oracle_budget_is_enforced():
    atoms = [Atom(f"s{i}", "a") for i in range(MAX_ORACLE_ATOMS + 1)]
    big = atoms[0]
    for atom in atoms[1:]:
        big = And(big, atom)
    with pytest.raises(LogicError, match="budget"):
        is_tautology(big)
    # at the budget boundary it still works
    ok = atoms[0]
    for atom in atoms[1 : MAX_ORACLE_ATOMS]:
        ok = And(ok, atom)
    assert not is_tautology(ok)


# --- reading formulas off graphs --------------------------------------------


def test_to_formula_shapes(lexicon):
    def formula_of(text):
        return to_formula(parse_sentence(text, lexicon), lexicon)

    atom = formula_of("The cat is kind.")
    assert atom == Atom("the cat", "kind")
    assert formula_of("The cat is not kind.") == Not(atom)
    conj = formula_of("The cat is kind and the dog is quiet.")
    assert conj == And(Atom("the cat", "kind"), Atom("the dog", "quiet"))
    cond = formula_of("If the cat is kind, then the dog is quiet.")
    assert cond == Implies(Atom("the cat", "kind"), Atom("the dog", "quiet"))
    trailing = formula_of("The dog is quiet if the cat is kind.")
    assert trailing == cond
    disj = formula_of("The cat is kind or the dog is quiet.")
    assert disj == Or(Atom("the cat", "kind"), Atom("the dog", "quiet"))


def test_to_formula_applies_antonym_normalization(lexicon):
    f = to_formula(parse_sentence("The cat is weak.", lexicon), lexicon)
    assert f == Not(Atom("the cat", "strong"))


def test_to_formula_rejects_non_grammar_graph(lexicon):
    graph = parse_penman("(w / want-01 :ARG0 (b / boy))")
    with pytest.raises(LogicError, match="unsupported structure"):
        to_formula(graph, lexicon)


def test_atom_order_is_first_occurrence():
    p, q, r = Atom("p", "a"), Atom("q", "a"), Atom("r", "a")
    formula = Or(And(q, p), And(r, q))
    from amr_logic_aug.logic import atoms

    assert atoms(formula) == (q, p, r)
