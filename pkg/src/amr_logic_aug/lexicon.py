"""Entity/relation/attribute lexicons and the adjective antonym map.

The lexicon is a TSV file with section header rows (``SECTION<TAB>count``)
followed by one entry per line.  Sections:

ENTITY, RELATION, ATTRIBUTE
    Core generation vocabulary, one string per row, order significant.
EXTENSION_ENTITY, EXTENSION_ATTRIBUTE
    Extra vocabulary for robustness variants; never used by default
    generation but valid antonym targets.
ANTONYM
    Directed rows ``word<TAB>antonym[<TAB>external]``.  Every row must have
    its mirror row (symmetry is validated, not assumed), no word maps to
    itself or to two different words, and the target must be a known
    attribute unless the row carries the ``external`` flag.

Lines starting with ``#`` and blank lines are ignored.  The declared count
in each header must match the number of entry rows in that section.
"""

from __future__ import annotations

import hashlib
import os
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable, Optional

ENV_LEXICON_PATH = "AMR_LOGIC_AUG_LEXICON"
DEFAULT_RESOURCE = "lexicon.tsv"

_SECTIONS = (
    "ENTITY",
    "RELATION",
    "ATTRIBUTE",
    "EXTENSION_ENTITY",
    "EXTENSION_ATTRIBUTE",
    "ANTONYM",
)


class LexiconError(ValueError):
    """Raised for malformed or inconsistent lexicon files."""


@dataclass(frozen=True)
class Lexicon:
    entities: tuple[str, ...]
    relations: tuple[str, ...]
    attributes: tuple[str, ...]
    antonyms: dict[str, str] = field(compare=False)
    extension_entities: tuple[str, ...] = ()
    extension_attributes: tuple[str, ...] = ()
    checksum: str = ""

    def antonym_of(self, adjective: str) -> Optional[str]:
        return self.antonyms.get(adjective)

    @property
    def all_entities(self) -> tuple[str, ...]:
        return self.entities + self.extension_entities

    @property
    def all_attributes(self) -> tuple[str, ...]:
        return self.attributes + self.extension_attributes

    def is_entity(self, text: str) -> bool:
        return text in self.entities or text in self.extension_entities


def antonym_of(lexicon: Lexicon, adjective: str) -> Optional[str]:
    return lexicon.antonym_of(adjective)


def _parse_rows(text: str) -> dict[str, list[tuple[int, list[str]]]]:
    """Split the file into per-section (line number, cells) rows."""
    sections: dict[str, list[tuple[int, list[str]]]] = {name: [] for name in _SECTIONS}
    declared: dict[str, int] = {}
    current: Optional[str] = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip("\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        cells = line.split("\t")
        if cells[0] in _SECTIONS:
            name = cells[0]
            if name in declared:
                raise LexiconError(f"duplicate section header {name!r} at line {lineno}")
            if len(cells) != 2:
                raise LexiconError(
                    f"section header needs exactly one count column at line {lineno}"
                )
            try:
                declared[name] = int(cells[1])
            except ValueError:
                raise LexiconError(
                    f"non-integer count {cells[1]!r} for section {name} at line {lineno}"
                ) from None
            current = name
            continue
        if current is None:
            raise LexiconError(f"entry before any section header at line {lineno}")
        sections[current].append((lineno, cells))

    for name in ("ENTITY", "RELATION", "ATTRIBUTE", "ANTONYM"):
        if name not in declared:
            raise LexiconError(f"missing required section {name}")
    for name, count in declared.items():
        actual = len(sections[name])
        if actual != count:
            raise LexiconError(
                f"section {name} declares {count} entries but has {actual}"
            )
    return sections


def _word_section(name: str, rows: list[tuple[int, list[str]]]) -> tuple[str, ...]:
    words: list[str] = []
    seen: set[str] = set()
    for lineno, cells in rows:
        if len(cells) != 1:
            raise LexiconError(
                f"section {name} entries must have one column at line {lineno}"
            )
        word = cells[0].strip()
        if not word:
            raise LexiconError(f"empty entry in section {name} at line {lineno}")
        if word in seen:
            raise LexiconError(f"duplicate entry {word!r} in section {name}")
        seen.add(word)
        words.append(word)
    return tuple(words)


def _antonym_map(
    rows: list[tuple[int, list[str]]], known_attributes: set[str]
) -> dict[str, str]:
    mapping: dict[str, str] = {}
    external: set[str] = set()
    for lineno, cells in rows:
        if len(cells) == 3 and cells[2].strip() == "external":
            flagged = True
        elif len(cells) == 2:
            flagged = False
        else:
            raise LexiconError(
                "antonym rows must be 'word<TAB>antonym' with an optional "
                f"'external' flag at line {lineno}"
            )
        source, target = cells[0].strip(), cells[1].strip()
        if not source or not target:
            raise LexiconError(f"empty antonym cell at line {lineno}")
        if source == target:
            raise LexiconError(f"reflexive antonym row {source!r} at line {lineno}")
        if source in mapping:
            raise LexiconError(
                f"antonym maps {source!r} to both {mapping[source]!r} and {target!r}"
            )
        mapping[source] = target
        if flagged:
            external.add(target)
    for source, target in mapping.items():
        if mapping.get(target) != source:
            raise LexiconError(
                f"asymmetric antonym rows: {source!r}→{target!r} "
                f"without {target!r}→{source!r}"
            )
        if target not in known_attributes and target not in external:
            raise LexiconError(
                f"unknown antonym word {target!r} (not an attribute; "
                "flag it external if intended)"
            )
    return mapping


def parse_lexicon(text: str, checksum: str = "") -> Lexicon:
    sections = _parse_rows(text)
    entities = _word_section("ENTITY", sections["ENTITY"])
    relations = _word_section("RELATION", sections["RELATION"])
    attributes = _word_section("ATTRIBUTE", sections["ATTRIBUTE"])
    ext_entities = _word_section("EXTENSION_ENTITY", sections["EXTENSION_ENTITY"])
    ext_attributes = _word_section("EXTENSION_ATTRIBUTE", sections["EXTENSION_ATTRIBUTE"])

    overlap = set(entities) & set(ext_entities)
    if overlap:
        raise LexiconError(f"duplicate across entity sections: {sorted(overlap)}")
    overlap = set(attributes) & set(ext_attributes)
    if overlap:
        raise LexiconError(f"duplicate across attribute sections: {sorted(overlap)}")

    antonyms = _antonym_map(sections["ANTONYM"], set(attributes) | set(ext_attributes))
    return Lexicon(
        entities=entities,
        relations=relations,
        attributes=attributes,
        antonyms=antonyms,
        extension_entities=ext_entities,
        extension_attributes=ext_attributes,
        checksum=checksum,
    )


def load_lexicon(path: str | Path) -> Lexicon:
    path = Path(path)
    try:
        data = path.read_bytes()
    except OSError as err:
        raise LexiconError(f"cannot read lexicon file {path}: {err}") from err
    checksum = hashlib.sha256(data).hexdigest()
    return parse_lexicon(data.decode("utf-8"), checksum=checksum)


def default_lexicon() -> Lexicon:
    """The shipped lexicon, or the file named by $AMR_LOGIC_AUG_LEXICON."""
    override = os.environ.get(ENV_LEXICON_PATH)
    if override:
        return load_lexicon(override)
    data = resources.files(__package__).joinpath("data", DEFAULT_RESOURCE).read_bytes()
    checksum = hashlib.sha256(data).hexdigest()
    return parse_lexicon(data.decode("utf-8"), checksum=checksum)


def _format_section(name: str, rows: Iterable[str]) -> list[str]:
    rows = list(rows)
    return [f"{name}\t{len(rows)}"] + rows


def with_overrides(
    base: Lexicon,
    entities: Optional[Iterable[str]] = None,
    attributes: Optional[Iterable[str]] = None,
    antonym_pairs: Optional[Iterable[tuple[str, str]]] = None,
) -> Lexicon:
    """Rebuild (and fully re-validate) a lexicon with sections replaced.

    ``antonym_pairs`` takes undirected pairs; both directed rows are emitted.
    Used by the CLI override flags.
    """
    new_entities = tuple(entities) if entities is not None else base.entities
    new_attributes = tuple(attributes) if attributes is not None else base.attributes
    if antonym_pairs is not None:
        directed: list[str] = []
        for a, b in antonym_pairs:
            directed.append(f"{a}\t{b}")
            directed.append(f"{b}\t{a}")
    else:
        directed = [f"{a}\t{b}" for a, b in base.antonyms.items()]
    lines: list[str] = []
    lines += _format_section("ENTITY", new_entities)
    lines += _format_section("RELATION", base.relations)
    lines += _format_section("ATTRIBUTE", new_attributes)
    lines += _format_section("EXTENSION_ENTITY", base.extension_entities)
    lines += _format_section("EXTENSION_ATTRIBUTE", base.extension_attributes)
    lines += _format_section("ANTONYM", directed)
    text = "\n".join(lines) + "\n"
    checksum = hashlib.sha256(text.encode("utf-8")).hexdigest()
    return parse_lexicon(text, checksum=checksum)


__all__ = [
    "ENV_LEXICON_PATH",
    "LexiconError",
    "Lexicon",
    "antonym_of",
    "parse_lexicon",
    "load_lexicon",
    "default_lexicon",
    "with_overrides",
]
