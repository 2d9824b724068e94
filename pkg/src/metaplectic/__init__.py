"""Metaplectic-anyon circuit compiler.

Synthesizes qutrit Clifford + R circuits approximating arbitrary n-qutrit
unitaries to a target precision, with exact R-count accounting and
independent verification by simulation.
"""

__version__ = "0.1.0"

from .eisenstein import EisensteinInt  # noqa: F401
