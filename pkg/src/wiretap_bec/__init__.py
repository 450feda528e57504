"""Finite-blocklength secrecy analysis of polar and Reed-Muller wiretap
codes over a binary erasure eavesdropper channel."""

__version__ = "0.1.0"

from . import bitchannel, codes, gf2, oracle, secrecy, simulate  # noqa: F401,E402
