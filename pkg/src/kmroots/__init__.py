"""Exact combinatorics of Kac-Moody root systems and highest-weight module weights."""
