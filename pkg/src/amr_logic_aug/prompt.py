"""Prompt augmentation for multiple-choice logical-reasoning records.

Records carry ``context``, ``question``, four ``answers``, an optional
``label``, and an ``id_string``.  Augmentation appends logically equivalent
rewrites: each option gains its own rewrites (per requested law, in the
fixed order contraposition → implication → commutative → double negation),
followed by rewrites of every context sentence (law-major: all sentences
under the first law, then all under the next).  The context field itself,
the question, the label, and the answer order are never touched.

Sentences are parsed with the extended verb-phrase grammar so real
reading-comprehension phrasings ("you will not be able to use a computer",
"you have no keyboarding skills at all") normalize onto stable atoms.
Free text outside even the extended grammar is passed through unchanged
and recorded in the trace with a skip reason.
"""

from __future__ import annotations

import json
import re
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Iterable, Optional, Sequence

from . import grammar
from .laws import LawKind, applicable_laws, apply_law
from .lexicon import Lexicon

RECLOR = "reclor"
LOGIQA = "logiqa"

LAW_ORDER: tuple[LawKind, ...] = (
    LawKind.CONTRAPOSITION,
    LawKind.IMPLICATION,
    LawKind.COMMUTATIVE,
    LawKind.DOUBLE_NEGATION,
)
DEFAULT_PROMPT_LAWS: frozenset[LawKind] = frozenset(
    {LawKind.CONTRAPOSITION, LawKind.IMPLICATION}
)


class PromptError(ValueError):
    """Raised for malformed records or files."""


@dataclass(frozen=True)
class McqRecord:
    context: str
    question: str
    answers: tuple[str, str, str, str]
    label: Optional[int] = None
    id_string: str = ""

    def __post_init__(self) -> None:
        if len(self.answers) != 4:
            raise PromptError(f"record needs exactly 4 answers, got {len(self.answers)}")
        if self.label is not None and self.label not in range(4):
            raise PromptError(f"label must be 0-3, got {self.label!r}")

    @staticmethod
    def from_dict(payload: dict) -> "McqRecord":
        try:
            answers = payload["answers"]
            if not isinstance(answers, (list, tuple)):
                raise PromptError("answers must be a list")
            return McqRecord(
                context=payload["context"],
                question=payload["question"],
                answers=tuple(answers),
                label=payload.get("label"),
                id_string=payload.get("id_string", ""),
            )
        except KeyError as err:
            raise PromptError(f"record missing key {err}") from err

    def to_dict(self) -> dict:
        payload: dict = {
            "context": self.context,
            "question": self.question,
            "answers": list(self.answers),
        }
        if self.label is not None:
            payload["label"] = self.label
        if self.id_string:
            payload["id_string"] = self.id_string
        return payload


@dataclass(frozen=True)
class Rewrite:
    law: str
    text: str


@dataclass(frozen=True)
class TraceRow:
    source: str  # "context" or "option <k>"
    original: str
    rewrites: tuple[Rewrite, ...] = ()
    skipped_reason: Optional[str] = None


@dataclass(frozen=True)
class AugmentationTrace:
    record_id: str
    rows: tuple[TraceRow, ...]


_ABBREVIATIONS = {
    "mr", "mrs", "ms", "dr", "prof", "sr", "jr", "st", "no", "vs", "etc",
    "e.g", "i.e", "cf", "al", "inc", "ltd", "co", "fig", "approx",
}
_SENTENCE_END = re.compile(r"([.?!])\s+(?=[\"'(A-Z0-9])")


def split_sentences(text: str) -> list[str]:
    """Split on sentence punctuation with a trailing-abbreviation guard."""
    pieces: list[str] = []
    start = 0
    for match in _SENTENCE_END.finditer(text):
        end = match.end(1)
        candidate = text[start:end].strip()
        last_word = candidate[:-1].rsplit(None, 1)[-1].lower() if candidate[:-1].split() else ""
        if match.group(1) == "." and (
            last_word.rstrip(".") in _ABBREVIATIONS or len(last_word.rstrip(".")) == 1
        ):
            continue
        if candidate:
            pieces.append(candidate)
        start = match.end()
    tail = text[start:].strip()
    if tail:
        pieces.append(tail)
    return pieces


def rewrite_sentence(
    text: str,
    lexicon: Lexicon,
    laws: Iterable[LawKind],
    grammar_level: str = grammar.EXTENDED,
) -> TraceRow:
    """All requested applicable rewrites of one sentence, oracle-gated."""
    requested = [law for law in LAW_ORDER if law in set(laws)]
    try:
        graph = grammar.parse_sentence(text, lexicon, grammar_level)
    except grammar.GrammarError as err:
        return TraceRow(source="", original=text, skipped_reason=str(err))
    available = applicable_laws(graph, lexicon)
    rewrites = tuple(
        Rewrite(law.value, grammar.realize(apply_law(graph, law, lexicon).positive))
        for law in requested
        if law in available
    )
    if not rewrites:
        return TraceRow(source="", original=text, skipped_reason="no applicable law")
    return TraceRow(source="", original=text, rewrites=rewrites)


def _with_source(row: TraceRow, source: str) -> TraceRow:
    return TraceRow(source, row.original, row.rewrites, row.skipped_reason)


def augment_record(
    record: McqRecord,
    lexicon: Lexicon,
    laws: Iterable[LawKind] = DEFAULT_PROMPT_LAWS,
) -> tuple[McqRecord, AugmentationTrace]:
    """Append option rewrites and context rewrites to every option."""
    laws = frozenset(laws)
    rows: list[TraceRow] = []

    context_rows = [
        _with_source(rewrite_sentence(sentence, lexicon, laws), "context")
        for sentence in split_sentences(record.context)
    ]
    rows.extend(context_rows)
    # Law-major ordering: every context sentence under law 1, then law 2, …
    context_rewrites: list[str] = []
    for law in LAW_ORDER:
        if law not in laws:
            continue
        for row in context_rows:
            context_rewrites.extend(
                rewrite.text for rewrite in row.rewrites if rewrite.law == law.value
            )

    answers: list[str] = []
    for index, option in enumerate(record.answers):
        row = _with_source(rewrite_sentence(option, lexicon, laws), f"option {index}")
        rows.append(row)
        # Sentence-level dedup makes augmentation idempotent: re-running on
        # already-augmented options appends nothing that is already present.
        seen = set(split_sentences(option))
        parts = [option]
        for text in [rewrite.text for rewrite in row.rewrites] + context_rewrites:
            if text not in seen:
                parts.append(text)
                seen.add(text)
        answers.append(" ".join(parts))

    augmented = McqRecord(
        context=record.context,
        question=record.question,
        answers=tuple(answers),
        label=record.label,
        id_string=record.id_string,
    )
    return augmented, AugmentationTrace(record_id=record.id_string, rows=tuple(rows))


def _read_records(path: Path, file_format: str) -> list[dict]:
    text = path.read_text(encoding="utf-8")
    if file_format == RECLOR:
        payload = json.loads(text)
        if not isinstance(payload, list):
            raise PromptError("reclor input must be a JSON array of records")
        return payload
    if file_format == LOGIQA:
        records = []
        for lineno, line in enumerate(text.splitlines(), start=1):
            if not line.strip():
                continue
            try:
                records.append(json.loads(line))
            except json.JSONDecodeError as err:
                raise PromptError(f"malformed JSON on line {lineno}: {err}") from err
        return records
    raise PromptError(f"unknown format {file_format!r} (use {RECLOR} or {LOGIQA})")


def _write_records(path: Path, payloads: Sequence[dict], file_format: str) -> None:
    if file_format == RECLOR:
        path.write_text(
            json.dumps(payloads, ensure_ascii=False, indent=2) + "\n", encoding="utf-8"
        )
    else:
        with path.open("w", encoding="utf-8") as handle:
            for payload in payloads:
                handle.write(json.dumps(payload, ensure_ascii=False) + "\n")


def augment_file(
    in_path: str | Path,
    out_path: str | Path,
    file_format: str = RECLOR,
    laws: Iterable[LawKind] = DEFAULT_PROMPT_LAWS,
    lexicon: Optional[Lexicon] = None,
    trace_path: Optional[str | Path] = None,
) -> dict:
    """Augment every record in a file; returns summary statistics."""
    from .lexicon import default_lexicon

    lexicon = lexicon or default_lexicon()
    laws = frozenset(laws)
    payloads = _read_records(Path(in_path), file_format)

    out_payloads: list[dict] = []
    traces: list[AugmentationTrace] = []
    stats = {
        "records_processed": 0,
        "records_skipped": 0,
        "sentences_seen": 0,
        "sentences_augmented": 0,
        "rewrites_per_law": {law.value: 0 for law in LAW_ORDER if law in laws},
    }
    for payload in payloads:
        try:
            record = McqRecord.from_dict(payload)
        except PromptError:
            stats["records_skipped"] += 1
            out_payloads.append(payload)
            continue
        augmented, trace = augment_record(record, lexicon, laws)
        result = dict(payload)
        result["answers"] = list(augmented.answers)
        out_payloads.append(result)
        traces.append(trace)
        stats["records_processed"] += 1
        for row in trace.rows:
            stats["sentences_seen"] += 1
            if row.rewrites:
                stats["sentences_augmented"] += 1
            for rewrite in row.rewrites:
                stats["rewrites_per_law"][rewrite.law] += 1

    _write_records(Path(out_path), out_payloads, file_format)
    if trace_path is not None:
        with Path(trace_path).open("w", encoding="utf-8") as handle:
            for trace in traces:
                for row in trace.rows:
                    handle.write(
                        json.dumps(
                            {"record_id": trace.record_id, **asdict(row)},
                            ensure_ascii=False,
                        )
                        + "\n"
                    )
    seen = stats["sentences_seen"]
    stats["skip_rate"] = round(1 - stats["sentences_augmented"] / seen, 4) if seen else 0.0
    return stats


__all__ = [
    "RECLOR",
    "LOGIQA",
    "LAW_ORDER",
    "DEFAULT_PROMPT_LAWS",
    "PromptError",
    "McqRecord",
    "Rewrite",
    "TraceRow",
    "AugmentationTrace",
    "split_sentences",
    "rewrite_sentence",
    "augment_record",
    "augment_file",
]
