"""Reversible programming with Pi: syntax, typing, evaluation, semantic models,
allocation/hiding arrows, a quantum matrix backend and reversible Turing machines."""
