#!/usr/bin/env python3
"""End-to-end data build: synthetic corpus, contrastive pairs, train/val split.

Chains the ``synth`` and ``pairs`` stages with one shared seed so a full
dataset (corpus JSONL, train JSONL, validation JSONL, plus a manifest
sidecar per file) drops out of a single command:

    python3 scripts/build_corpus_and_pairs.py --out-dir data/ --ratio 1:2
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from amr_logic_aug import __version__, corpus, pairs
from amr_logic_aug.lexicon import default_lexicon, load_lexicon

logger = logging.getLogger("build_corpus_and_pairs")


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out-dir", required=True, help="directory for all outputs")
    parser.add_argument("--count", type=int, default=corpus.DEFAULT_TARGET,
                        help="corpus size (default %(default)s)")
    parser.add_argument("--ratio", default="1:1", help="positive:negative ratio (default 1:1)")
    parser.add_argument("--val-frac", type=float, default=pairs.DEFAULT_VAL_FRACTION,
                        help="validation fraction (default %(default)s)")
    parser.add_argument("--seed", type=int, default=corpus.DEFAULT_SEED,
                        help="seed for corpus, negatives, and split (default %(default)s)")
    parser.add_argument("--lexicon", metavar="PATH", help="TSV lexicon file")
    parser.add_argument("-q", "--quiet", action="store_true", help="suppress progress logs")
    args = parser.parse_args(argv)

    logging.basicConfig(
        level=logging.WARNING if args.quiet else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )

    lexicon = load_lexicon(args.lexicon) if args.lexicon else default_lexicon()
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    sentences = corpus.build_corpus(lexicon, args.count, seed=args.seed)
    corpus_path = out_dir / "corpus.jsonl"
    corpus.corpus_to_jsonl(sentences, corpus_path)
    by_pattern: dict[str, int] = {}
    for sentence in sentences:
        by_pattern[sentence.pattern.value] = by_pattern.get(sentence.pattern.value, 0) + 1
    Path(f"{corpus_path}.manifest.json").write_text(
        json.dumps(
            {
                "version": __version__,
                "command": "synth",
                "seed": args.seed,
                "count": len(sentences),
                "by_pattern": by_pattern,
                "lexicon_checksum": lexicon.checksum,
            },
            indent=2,
            sort_keys=True,
        )
        + "\n",
        encoding="utf-8",
    )
    logger.info("corpus: %d sentences -> %s", len(sentences), corpus_path)

    records = pairs.build_pairs(sentences, lexicon, args.ratio, args.seed)
    train, validation = pairs.split(records, args.val_frac, args.seed)
    for name, part in (("train.jsonl", train), ("val.jsonl", validation)):
        path = out_dir / name
        pairs.emit_jsonl(part, path)
        manifest = pairs.build_manifest(
            part, args.seed, args.ratio, args.val_frac, lexicon,
            corpus_size=len(sentences), version=__version__,
        )
        Path(f"{path}.manifest.json").write_text(manifest.to_json(), encoding="utf-8")
        logger.info("pairs: %d records -> %s", len(part), path)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
