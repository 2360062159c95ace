"""Checks of the first integrals, Lax pairs, local series and a beta = 2 oracle."""

from .suite import run_suite

__all__ = ["run_suite"]
