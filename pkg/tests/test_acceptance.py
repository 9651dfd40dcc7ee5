"""Acceptance criteria 1-12, each backed by one exact property suite."""
import time

import pytest

from ordcut.sampling import DEFAULT_SEED
from ordcut.verify import SUITES

CRITERIA = [
    (1, "zxz", "Z x Z ball edges coincide, Q x Q edges differ"),
    (2, "invariance", "closed-form invariance group matches shift oracle"),
    (3, "signature", "nonzero signature iff edge of an invariance coset"),
    (4, "monoid", "monoid laws, neutral elements, idempotents are group cuts"),
    (5, "partition", "three-set partition and trivial invariance criterion"),
    (6, "quotient", "quotients by convex subgroups"),
    (7, "cofinality", "cofinality table for Z and Q components"),
    (8, "series", "exact series field laws, inverses and residues"),
    (9, "projection", "projection trichotomy and residue membership"),
    (10, "breadth", "invariance module of a pcs cut equals its breadth"),
    (11, "rplace", "same R-place exactly on equal cuts and edge pairs"),
    (12, "cli", "print/parse identity, determinism, fuzzing"),
]


@pytest.mark.parametrize("number,suite,title", CRITERIA, ids=[f"{n:02d}-{s}" for n, s, _ in CRITERIA])
def test_criterion(number, suite, title, acceptance_log):
    t0 = time.perf_counter()
    check = SUITES[suite](DEFAULT_SEED)
    elapsed = time.perf_counter() - t0
    line = f"{'PASS' if check.ok else 'FAIL'} {number:2d} {title}: {check.detail} ({elapsed:.1f}s)"
    print(line)
    acceptance_log.append(line)
    assert check.checked > 0
    assert check.ok, check.detail
