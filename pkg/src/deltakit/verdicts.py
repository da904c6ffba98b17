"""Three-valued verdicts for finite checks.

``PASS`` means the property was verified on the whole stated range, ``FAIL``
means an explicit counterexample was found, and ``INCONCLUSIVE`` means the
search was cut off (budget, cap, or a sufficient-but-not-necessary
criterion did not apply) without deciding the claim.
"""

PASS = "PASS"
FAIL = "FAIL"
INCONCLUSIVE = "INCONCLUSIVE"

_RANK = {PASS: 0, INCONCLUSIVE: 1, FAIL: 2}

#: Process exit codes used by the command line interface.
EXIT_CODES = {PASS: 0, FAIL: 1, INCONCLUSIVE: 2}


def combine(*verdicts):
    """Combine verdicts: any FAIL dominates, then any INCONCLUSIVE."""
    worst = PASS
    for v in verdicts:
        if v not in _RANK:
            raise ValueError(f"unknown verdict {v!r}")
        if _RANK[v] > _RANK[worst]:
            worst = v
    return worst
