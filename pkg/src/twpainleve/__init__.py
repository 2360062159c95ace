"""Tracy-Widom distributions for beta = 2, 4, 6 from the Hastings-McLeod
Painleve II solution, with a verification suite for the underlying algebra."""

from . import beta6_connection, distribution, pii_core, tail_series
from .distribution import build_table, pdf_moments
from .pii_core import solve_hm

__version__ = "0.1.0"

__all__ = ["beta6_connection", "distribution", "pii_core", "tail_series",
           "build_table", "pdf_moments", "solve_hm"]
