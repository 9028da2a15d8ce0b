"""Workbench for movement-based leader election on the triangular grid.

Simulates systems of oblivious particles that elect a unique leader purely
by moving, verifies every execution step against the rule set's invariants,
and exhaustively model-checks small instances over all sequential
schedules.
"""

__version__ = "0.1.0"
