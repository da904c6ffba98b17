"""Typed errors shared across the package.

Contract violations (mismatched sources/targets, ill-formed presentations)
raise :class:`CompatibilityError`; structural axioms that fail at
construction time raise :class:`AxiomError`; enumeration guards raise
:class:`BudgetExceeded`.  All derive from :class:`DeltakitError` so callers
can catch everything the library throws with one clause.
"""


class DeltakitError(Exception):
    """Base class for all errors raised by deltakit."""


class CompatibilityError(DeltakitError, ValueError):
    """Inputs do not compose / do not line up (src-tgt mismatch, bad shapes)."""


class AxiomError(DeltakitError, ValueError):
    """A structural axiom (monotonicity, associativity, unit law...) failed."""


class BudgetExceeded(DeltakitError, RuntimeError):
    """An enumeration would exceed the configured work budget."""
