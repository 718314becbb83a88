"""Non-reciprocal two-mode bosonic dynamics in truncated Fock space."""

__version__ = "0.1.0"
