"""Shared fixtures and the acceptance-summary reporter.

Tests named ``test_criterion_<n>_*`` in ``test_acceptance.py`` are the
release gate; the terminal summary prints one ``ACCEPTANCE n (...): PASS``
or ``FAIL`` line per criterion.
"""

from __future__ import annotations

import re

import pytest

from amr_logic_aug.corpus import build_corpus
from amr_logic_aug.lexicon import default_lexicon

CRITERIA = {
    1: "reference rewrites for the four laws",
    2: "definition and case-study equivalences",
    3: "full-corpus oracle soundness sweep",
    4: "involution properties",
    5: "corpus and dataset counts",
    6: "round-trip and malformed-input fuzz",
    7: "prompt augmentation",
    8: "rule alteration templates",
    9: "contrastive loss numerics",
}

_CRITERION = re.compile(r"test_acceptance\.py::test_criterion_(\d+)")
_results: dict[int, bool] = {}


@pytest.fixture(scope="session")
def lexicon():
    return default_lexicon()


@pytest.fixture(scope="session")
def full_corpus(lexicon):
    """The default corpus; shared because several criteria sweep it."""
    return build_corpus(lexicon)


@pytest.fixture(scope="session")
def small_corpus(lexicon):
    return build_corpus(lexicon, 400, seed=11)


def pytest_runtest_logreport(report):
    match = _CRITERION.search(report.nodeid)
    if not match:
        return
    number = int(match.group(1))
    if report.when == "call":
        _results[number] = _results.get(number, True) and report.outcome == "passed"
    elif report.outcome not in ("passed",):  # setup/teardown error or skip
        _results[number] = False


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_results):
        status = "PASS" if _results[number] else "FAIL"
        label = CRITERIA.get(number, "unknown criterion")
        terminalreporter.write_line(f"ACCEPTANCE {number} ({label}): {status}")
