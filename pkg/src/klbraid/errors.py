"""Shared exception types.

Precondition violations raise plain ``ValueError``.  The two classes here
cover the remaining cases: an internal cross-check that should never fire
(a bug, not bad input), and a request that exceeds a configured brute-force
bound (bad input of a specific, user-fixable kind).
"""


class InternalConsistencyError(RuntimeError):
    """An internal invariant failed; indicates a bug, not a bad argument."""


class OracleBoundError(ValueError):
    """A brute-force computation was requested above its configured bound."""
