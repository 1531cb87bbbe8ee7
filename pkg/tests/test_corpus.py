"""Synthetic corpus generation: counts, determinism, and serialization."""

from __future__ import annotations

import json
from collections import Counter

import pytest

from amr_logic_aug.corpus import (
    DEFAULT_SEED,
    DEFAULT_TARGET,
    CorpusError,
    PatternKind,
    build_corpus,
    corpus_from_jsonl,
    corpus_to_jsonl,
    family_capacity,
    generate_atomic,
    generate_pattern,
)
from amr_logic_aug.grammar import Shape, parse_sentence, read_graph, realize


# ---------------------------------------------------------------------------
# Enumeration and capacities
# ---------------------------------------------------------------------------


def test_generate_atomic_enumerates_all_combinations(lexicon):
    sentences = generate_atomic(lexicon)
    expected = len(lexicon.entities) * len(lexicon.relations) * len(lexicon.attributes)
    assert expected == 1840
    assert len(sentences) == expected
    assert len({s.text for s in sentences}) == expected
    assert sentences[0].text == "The bald eagle is kind."
    # Relations cycle slowest within a subject: affirmed block, then negated.
    assert sentences[40].text == "The bald eagle is not kind."
    assert all(s.pattern is PatternKind.ATOMIC_DN for s in sentences)


def test_family_capacities(lexicon):
    assert family_capacity(lexicon, PatternKind.ATOMIC_DN) == 483
    for pattern in (
        PatternKind.COMMUTATIVE_PAIR,
        PatternKind.CONDITIONAL_CONTRA,
        PatternKind.IMPLICATION_PAIR,
    ):
        assert family_capacity(lexicon, pattern) == 845_480


# ---------------------------------------------------------------------------
# The default corpus
# ---------------------------------------------------------------------------


def test_default_corpus_counts(full_corpus):
    assert DEFAULT_TARGET == 14_962
    assert len(full_corpus) == DEFAULT_TARGET
    assert len({s.text for s in full_corpus}) == DEFAULT_TARGET
    counts = Counter(s.pattern for s in full_corpus)
    # The atomic family caps at capacity; the overflow is spread evenly.
    assert counts == {
        PatternKind.ATOMIC_DN: 483,
        PatternKind.COMMUTATIVE_PAIR: 4_827,
        PatternKind.CONDITIONAL_CONTRA: 4_826,
        PatternKind.IMPLICATION_PAIR: 4_826,
    }


def test_corpus_is_grouped_by_family(small_corpus):
    kinds = [s.pattern for s in small_corpus]
    boundaries = [k for i, k in enumerate(kinds) if i == 0 or kinds[i - 1] != k]
    assert boundaries == list(PatternKind)


def test_build_corpus_is_deterministic(lexicon):
    first = build_corpus(lexicon, 300, seed=5)
    second = build_corpus(lexicon, 300, seed=5)
    assert first == second
    shifted = build_corpus(lexicon, 300, seed=6)
    assert [s.text for s in shifted] != [s.text for s in first]


def test_build_corpus_respects_mix(lexicon):
    mix = {PatternKind.CONDITIONAL_CONTRA: 0.5, PatternKind.COMMUTATIVE_PAIR: 0.5}
    corpus = build_corpus(lexicon, 101, mix=mix, seed=1)
    counts = Counter(s.pattern for s in corpus)
    assert sum(counts.values()) == 101
    # Largest remainder: the earlier enum member takes the odd sentence.
    assert counts[PatternKind.COMMUTATIVE_PAIR] == 51
    assert counts[PatternKind.CONDITIONAL_CONTRA] == 50


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------


@pytest.mark.parametrize(
    "mix, reason",
    [
        ({PatternKind.ATOMIC_DN: 0.5}, "must sum to 1"),
        ({PatternKind.ATOMIC_DN: -0.5, PatternKind.COMMUTATIVE_PAIR: 1.5}, "non-negative"),
        ({"atomic-dn": 1.0}, "unknown pattern kinds"),
    ],
)
def test_mix_validation(lexicon, mix, reason):
    with pytest.raises(CorpusError, match=reason):
        build_corpus(lexicon, 10, mix=mix)


def test_negative_target_is_rejected(lexicon):
    with pytest.raises(CorpusError, match="non-negative"):
        build_corpus(lexicon, -1)


def test_unreachable_family_target(lexicon):
    with pytest.raises(CorpusError, match="unreachable target"):
        build_corpus(lexicon, 484, mix={PatternKind.ATOMIC_DN: 1.0})


def test_generate_pattern_over_capacity(lexicon):
    with pytest.raises(CorpusError, match="exceeds distinct combinations"):
        generate_pattern(lexicon, PatternKind.ATOMIC_DN, 484)


def test_generate_pattern_negative_count(lexicon):
    with pytest.raises(CorpusError, match="non-negative"):
        generate_pattern(lexicon, PatternKind.ATOMIC_DN, -3)


# ---------------------------------------------------------------------------
# Record invariants
# ---------------------------------------------------------------------------


def test_records_are_canonical(lexicon, small_corpus):
    for record in small_corpus:
        assert realize(record.graph) == record.text
        assert parse_sentence(record.text, lexicon) == record.graph


def test_atoms_use_the_base_attribute_side(lexicon, small_corpus):
    for record in small_corpus:
        for _, attribute, _ in record.atoms:
            antonym = lexicon.antonym_of(attribute)
            assert antonym is None or attribute < antonym


def test_pair_records_are_never_degenerate(small_corpus):
    for record in small_corpus:
        if len(record.atoms) == 2:
            assert record.atoms[0][:2] != record.atoms[1][:2]


def test_conditional_family_cycles_polarity_scenarios(lexicon):
    records = generate_pattern(lexicon, PatternKind.CONDITIONAL_CONTRA, 8, seed=2)
    flags = set()
    for record in records:
        struct = read_graph(record.graph)
        assert struct.shape is Shape.IF_THEN
        flags.add((struct.clauses[0].negated, struct.clauses[1].negated))
    assert flags == {(False, False), (False, True), (True, False), (True, True)}


def test_implication_family_alternates_directions(lexicon):
    records = generate_pattern(lexicon, PatternKind.IMPLICATION_PAIR, 6, seed=2)
    shapes = [read_graph(record.graph).shape for record in records]
    assert shapes == [Shape.IF_THEN, Shape.OR_PAIR] * 3
    # Disjunctions carry the "A is not X or B is Y." template polarity.
    struct = read_graph(records[1].graph)
    assert struct.clauses[0].negated and not struct.clauses[1].negated


def test_commutative_family_alternates_polarity(lexicon):
    records = generate_pattern(lexicon, PatternKind.COMMUTATIVE_PAIR, 4, seed=2)
    for index, record in enumerate(records):
        struct = read_graph(record.graph)
        assert struct.shape is Shape.AND_PAIR
        expected = index % 2 == 1
        assert struct.clauses[0].negated is expected
        assert struct.clauses[1].negated is expected


# ---------------------------------------------------------------------------
# JSONL serialization
# ---------------------------------------------------------------------------


def test_jsonl_round_trip(lexicon, small_corpus, tmp_path):
    path = tmp_path / "corpus.jsonl"
    assert corpus_to_jsonl(small_corpus, path) == len(small_corpus)
    loaded = corpus_from_jsonl(path, lexicon)
    assert loaded == small_corpus


def test_jsonl_blank_lines_are_skipped(lexicon, tmp_path):
    corpus = build_corpus(lexicon, 2, seed=3)
    path = tmp_path / "corpus.jsonl"
    corpus_to_jsonl(corpus, path)
    padded = tmp_path / "padded.jsonl"
    padded.write_text(
        "\n" + path.read_text(encoding="utf-8") + "\n\n", encoding="utf-8"
    )
    assert corpus_from_jsonl(padded, lexicon) == corpus


@pytest.mark.parametrize(
    "line, reason",
    [
        ("{not json", "line 1:"),
        ('{"text": "The bald eagle is kind."}', "line 1:"),
        (
            '{"text": "The bald eagle is kind.", "pattern": "mystery"}',
            "line 1:",
        ),
        (
            '{"text": "Colorless green ideas sleep.", "pattern": "atomic-dn"}',
            "line 1:",
        ),
        (
            '{"text": "the bald eagle is kind.", "pattern": "atomic-dn"}',
            "not canonical",
        ),
    ],
)
def test_jsonl_load_errors(lexicon, tmp_path, line, reason):
    path = tmp_path / "bad.jsonl"
    path.write_text(line + "\n", encoding="utf-8")
    with pytest.raises(CorpusError, match=reason):
        corpus_from_jsonl(path, lexicon)


def test_jsonl_error_reports_correct_line(lexicon, tmp_path):
    corpus = build_corpus(lexicon, 1, seed=3)
    path = tmp_path / "bad.jsonl"
    corpus_to_jsonl(corpus, path)
    with path.open("a", encoding="utf-8") as handle:
        handle.write("{broken\n")
    with pytest.raises(CorpusError, match="line 2:"):
        corpus_from_jsonl(path, lexicon)


def test_default_seed_value():
    assert DEFAULT_SEED == 2021
