"""Certified numerics: directed-rounding intervals, error envelopes,
ratio certificates, tail certificates, and the constants audit."""

from .interval import (  # noqa: F401
    DEFAULT_PRECISION,
    MAX_PRECISION,
    InconclusiveEnclosureError,
    IntervalReal,
    escalate,
    pi_interval,
    sqrt_int,
)
from .envelopes import crank_main_term, envelope, rank_main_term  # noqa: F401
