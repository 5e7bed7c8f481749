"""One test per acceptance criterion at its stated tolerance.

Each criterion prints a single [PASS]/[FAIL] line; the lines are repeated in
the terminal summary so they show up without -s.
"""
from functools import lru_cache

import pytest

from nonpisot.acceptance import CHECKS

IDS = ["1", "2", "3a", "3b", "4a", "4b", "4c", "5", "6a", "6b", "6c", "7a", "7b", "8", "9",
       "10a", "10b", "10c", "11a", "11b"]
LINES = {}


@lru_cache(maxsize=None)
def _results(group: str):
    return {r.cid: r for r in CHECKS[group]()}


def _group(cid: str) -> str:
    return cid.rstrip("abc")


@pytest.mark.parametrize("cid", IDS)
def test_criterion(cid):
    res = _results(_group(cid))[cid]
    LINES[cid] = res.line()
    print(res.line())
    assert res.passed, res.line()


def test_every_criterion_covered():
    produced = set()
    for g in CHECKS:
        produced |= {r.cid for r in _results(g).values()}
    assert produced == set(IDS)
