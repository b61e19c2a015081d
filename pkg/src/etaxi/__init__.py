"""Exact operator algebra of the eta-xi ghost system on truncated Fock spaces."""

from __future__ import annotations

__version__ = "0.1.0"
