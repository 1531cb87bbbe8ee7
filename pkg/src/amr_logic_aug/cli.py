"""Command-line interface for the full augmentation pipeline.

Subcommands:

* ``synth``       generate the controlled synthetic corpus
* ``augment``     apply one equivalence law per input line (text or Penman)
* ``pairs``       build contrastive training pairs with a train/val split
* ``check``       oracle-replay a pairs JSONL file
* ``prompt-aug``  augment multiple-choice reading-comprehension records
* ``pararule``    alter rule strings in deductive-reasoning records
* ``loss``        evaluate the contrastive loss over supplied vectors

Every subcommand is deterministic given its flags.  Data goes to files,
logs go to standard error, and each output file gets a
``<name>.manifest.json`` sidecar recording the seed, package version, and
input checksums.  Exit codes: 0 success, 1 validation or oracle failure,
2 usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import __version__, corpus, grammar, laws, pairs, pararule, prompt, scoring
from .graph import ParseError, parse_penman, serialize
from .lexicon import Lexicon, LexiconError, default_lexicon, load_lexicon, with_overrides
from .logic import LogicError

logger = logging.getLogger("amr_logic_aug")

_DOMAIN_ERRORS = (
    LexiconError,
    ParseError,
    LogicError,
    grammar.GrammarError,
    laws.LawError,
    laws.OracleViolation,
    corpus.CorpusError,
    pairs.DatasetError,
    prompt.PromptError,
    pararule.PararuleError,
    scoring.ScoreError,
    OSError,
)


def _parse_mix(text: str) -> dict[corpus.PatternKind, float]:
    mix: dict[corpus.PatternKind, float] = {}
    for part in text.split(","):
        name, _, value = part.partition("=")
        try:
            mix[corpus.PatternKind(name.strip())] = float(value)
        except ValueError as err:
            raise argparse.ArgumentTypeError(
                f"bad mix entry {part!r} (want e.g. atomic-dn=0.25): {err}"
            ) from err
    return mix


def _parse_laws(text: str) -> list[laws.LawKind]:
    requested = []
    for name in text.split(","):
        try:
            requested.append(laws.LawKind(name.strip()))
        except ValueError as err:
            raise argparse.ArgumentTypeError(
                f"unknown law {name.strip()!r} "
                f"(choose from {', '.join(k.value for k in laws.LawKind)})"
            ) from err
    return requested


def _parse_antonym_pairs(text: str) -> list[tuple[str, str]]:
    result = []
    for part in text.split(","):
        left, sep, right = part.partition(":")
        if not sep or not left.strip() or not right.strip():
            raise argparse.ArgumentTypeError(
                f"bad antonym pair {part!r} (want word:word)"
            )
        result.append((left.strip(), right.strip()))
    return result


def _add_lexicon_flags(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("lexicon")
    group.add_argument("--lexicon", metavar="PATH", help="TSV lexicon file")
    group.add_argument(
        "--entities", type=lambda s: s.split(","), metavar="LIST",
        help="comma-separated replacement entity list",
    )
    group.add_argument(
        "--attributes", type=lambda s: s.split(","), metavar="LIST",
        help="comma-separated replacement attribute list",
    )
    group.add_argument(
        "--antonyms", type=_parse_antonym_pairs, metavar="PAIRS",
        help="comma-separated word:word replacement antonym pairs",
    )


def _resolve_lexicon(args: argparse.Namespace) -> Lexicon:
    lexicon = load_lexicon(args.lexicon) if args.lexicon else default_lexicon()
    if args.entities or args.attributes or args.antonyms:
        lexicon = with_overrides(
            lexicon,
            entities=args.entities,
            attributes=args.attributes,
            antonym_pairs=args.antonyms,
        )
    return lexicon


def _write_manifest(data_path: str | Path, payload: dict) -> None:
    manifest_path = Path(f"{data_path}.manifest.json")
    manifest_path.write_text(
        json.dumps({"version": __version__, **payload}, indent=2, sort_keys=True) + "\n",
        encoding="utf-8",
    )
    logger.info("wrote %s", manifest_path)


def cmd_synth(args: argparse.Namespace) -> int:
    lexicon = _resolve_lexicon(args)
    built = corpus.build_corpus(lexicon, args.count, args.mix, args.seed)
    if args.format == "jsonl":
        corpus.corpus_to_jsonl(built, args.out)
    else:
        Path(args.out).write_text(
            "".join(f"{sentence.text}\n" for sentence in built), encoding="utf-8"
        )
    by_pattern: dict[str, int] = {}
    for sentence in built:
        by_pattern[sentence.pattern.value] = by_pattern.get(sentence.pattern.value, 0) + 1
    _write_manifest(
        args.out,
        {
            "command": "synth",
            "seed": args.seed,
            "count": len(built),
            "by_pattern": by_pattern,
            "mix": {kind.value: frac for kind, frac in (args.mix or corpus.DEFAULT_MIX).items()},
            "lexicon_checksum": lexicon.checksum,
        },
    )
    logger.info("synth: %d sentences -> %s", len(built), args.out)
    return 0


def cmd_augment(args: argparse.Namespace) -> int:
    lexicon = _resolve_lexicon(args)
    processed = skipped = 0
    with Path(args.in_path).open(encoding="utf-8") as src, Path(args.out).open(
        "w", encoding="utf-8"
    ) as dst:
        for line in src:
            line = line.strip()
            if not line:
                continue
            try:
                if args.format == "penman":
                    graph = parse_penman(line)
                else:
                    graph = grammar.parse_sentence(line, lexicon, args.grammar)
                outcome = laws.apply_law(graph, args.law, lexicon)
            except (ParseError, grammar.GrammarError, laws.LawError, LogicError) as err:
                skipped += 1
                logger.warning("skipped %r: %s", line, err)
                dst.write(
                    json.dumps({"input": line, "skipped": str(err)}, ensure_ascii=False)
                    + "\n"
                )
                continue
            render = serialize if args.format == "penman" else (
                lambda g: grammar.realize(g, lexicon)
            )
            payload = {
                "input": line,
                "law": outcome.law.value,
                "positive": render(outcome.positive),
            }
            if args.negatives:
                payload["negatives"] = [render(g) for g in outcome.negatives]
            dst.write(json.dumps(payload, ensure_ascii=False) + "\n")
            processed += 1
    _write_manifest(
        args.out,
        {
            "command": "augment",
            "law": args.law.value,
            "format": args.format,
            "processed": processed,
            "skipped": skipped,
            "lexicon_checksum": lexicon.checksum,
        },
    )
    logger.info("augment: %d rewritten, %d skipped -> %s", processed, skipped, args.out)
    return 0


def cmd_pairs(args: argparse.Namespace) -> int:
    lexicon = _resolve_lexicon(args)
    if args.corpus:
        sentences = corpus.corpus_from_jsonl(args.corpus, lexicon)
    else:
        sentences = corpus.build_corpus(lexicon, args.count, args.mix, args.seed)
    records = pairs.build_pairs(sentences, lexicon, args.ratio, args.seed)
    train, validation = pairs.split(records, args.val_frac, args.seed)
    for path, part in ((args.out_train, train), (args.out_val, validation)):
        pairs.emit_jsonl(part, path)
        manifest = pairs.build_manifest(
            part, args.seed, args.ratio, args.val_frac, lexicon,
            corpus_size=len(sentences), version=__version__,
        )
        Path(f"{path}.manifest.json").write_text(manifest.to_json(), encoding="utf-8")
    logger.info(
        "pairs: %d train, %d validation records (ratio %s) -> %s, %s",
        len(train), len(validation), args.ratio, args.out_train, args.out_val,
    )
    return 0


def cmd_check(args: argparse.Namespace) -> int:
    lexicon = _resolve_lexicon(args)
    records = pairs.load_jsonl(args.in_path)
    if not records:
        raise pairs.DatasetError(f"no records in {args.in_path}")
    problems = pairs.verify_records(records, lexicon, args.grammar)
    for index, problem in problems:
        print(f"record {index}: {problem}")
    print(f"checked {len(records)} records: {len(problems)} violations")
    return 1 if problems else 0


def cmd_prompt_aug(args: argparse.Namespace) -> int:
    lexicon = _resolve_lexicon(args)
    stats = prompt.augment_file(
        args.in_path, args.out, args.format, args.laws, lexicon, args.trace
    )
    logger.info("prompt-aug: %s", json.dumps(stats, sort_keys=True))
    _write_manifest(
        args.out,
        {
            "command": "prompt-aug",
            "format": args.format,
            "laws": [law.value for law in args.laws],
            "lexicon_checksum": lexicon.checksum,
            **stats,
        },
    )
    return 0


def cmd_pararule(args: argparse.Namespace) -> int:
    count = pararule.alter_pararule_file(args.in_path, args.out, args.depth)
    _write_manifest(
        args.out, {"command": "pararule", "depth": args.depth, "records": count}
    )
    logger.info("pararule: %d records altered at depth %d -> %s", count, args.depth, args.out)
    return 0


def cmd_loss(args: argparse.Namespace) -> int:
    loaded = scoring.load_triplets_tsv(args.vectors)
    triplets = [triplet for _, triplet in loaded]
    report = scoring.loss_report(triplets, args.score)
    for (pair_id, _), row in zip(loaded, report):
        print(f"{pair_id}\t{row['h_pos']!r}\t{row['h_neg']!r}\t{row['loss']!r}")
    total = scoring.contrastive_loss(triplets, args.score)
    print(f"TOTAL\t{len(triplets)}\t{args.score}\t{total!r}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="amr-logic-aug",
        description="Logic-driven data augmentation over AMR graphs.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument(
        "-q", "--quiet", action="store_true", help="only warnings and errors on stderr"
    )
    commands = parser.add_subparsers(dest="command", required=True)

    synth = commands.add_parser("synth", help="generate the synthetic corpus")
    synth.add_argument("--count", type=int, default=corpus.DEFAULT_TARGET)
    synth.add_argument("--mix", type=_parse_mix, default=None,
                       help="e.g. atomic-dn=0.25,commutative-pair=0.75")
    synth.add_argument("--seed", type=int, default=corpus.DEFAULT_SEED)
    synth.add_argument("--format", choices=("jsonl", "text"), default="jsonl")
    synth.add_argument("--out", required=True)
    _add_lexicon_flags(synth)
    synth.set_defaults(func=cmd_synth)

    augment = commands.add_parser("augment", help="apply one law per input line")
    augment.add_argument("--law", type=laws.LawKind, required=True,
                         choices=list(laws.LawKind),
                         metavar=f"{{{','.join(k.value for k in laws.LawKind)}}}")
    augment.add_argument("--in", dest="in_path", required=True)
    augment.add_argument("--out", required=True)
    augment.add_argument("--format", choices=("text", "penman"), default="text")
    augment.add_argument("--grammar", choices=(grammar.CORE, grammar.EXTENDED),
                         default=grammar.CORE)
    augment.add_argument("--negatives", action="store_true",
                         help="also emit oracle-checked non-equivalent variants")
    _add_lexicon_flags(augment)
    augment.set_defaults(func=cmd_augment)

    pairs_cmd = commands.add_parser("pairs", help="build contrastive pairs + split")
    pairs_cmd.add_argument("--ratio", default="1:1", help="positives:negatives, e.g. 1:3")
    pairs_cmd.add_argument("--val-frac", type=float, default=pairs.DEFAULT_VAL_FRACTION)
    pairs_cmd.add_argument("--seed", type=int, default=corpus.DEFAULT_SEED)
    pairs_cmd.add_argument("--corpus", help="corpus JSONL (default: regenerate)")
    pairs_cmd.add_argument("--count", type=int, default=corpus.DEFAULT_TARGET,
                           help="corpus size when regenerating")
    pairs_cmd.add_argument("--mix", type=_parse_mix, default=None)
    pairs_cmd.add_argument("--out-train", required=True)
    pairs_cmd.add_argument("--out-val", required=True)
    _add_lexicon_flags(pairs_cmd)
    pairs_cmd.set_defaults(func=cmd_pairs)

    check = commands.add_parser("check", help="oracle-replay a pairs JSONL file")
    check.add_argument("--in", dest="in_path", required=True)
    check.add_argument("--grammar", choices=(grammar.CORE, grammar.EXTENDED),
                       default=grammar.CORE)
    _add_lexicon_flags(check)
    check.set_defaults(func=cmd_check)

    prompt_aug = commands.add_parser("prompt-aug", help="augment MCQ records")
    prompt_aug.add_argument("--format", choices=(prompt.RECLOR, prompt.LOGIQA),
                            default=prompt.RECLOR)
    prompt_aug.add_argument("--laws", type=_parse_laws,
                            default=list(prompt.DEFAULT_PROMPT_LAWS))
    prompt_aug.add_argument("--in", dest="in_path", required=True)
    prompt_aug.add_argument("--out", required=True)
    prompt_aug.add_argument("--trace", default=None, help="sidecar trace JSONL")
    _add_lexicon_flags(prompt_aug)
    prompt_aug.set_defaults(func=cmd_prompt_aug)

    pararule_cmd = commands.add_parser("pararule", help="alter deductive rule strings")
    pararule_cmd.add_argument("--depth", type=int, choices=(1, 2), required=True)
    pararule_cmd.add_argument("--in", dest="in_path", required=True)
    pararule_cmd.add_argument("--out", required=True)
    pararule_cmd.set_defaults(func=cmd_pararule)

    loss = commands.add_parser("loss", help="contrastive loss over vector file")
    loss.add_argument("--vectors", required=True, help="TSV: pair_id, role, floats")
    loss.add_argument("--score", choices=(scoring.COSINE, scoring.DOT),
                      default=scoring.COSINE)
    loss.set_defaults(func=cmd_loss)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.WARNING if args.quiet else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except _DOMAIN_ERRORS as err:
        logger.error("%s", err)
        return 1


if __name__ == "__main__":
    sys.exit(main())
