"""Binary linear codes from trace defining sets over GF(2^m)."""

__version__ = "0.1.0"
