"""Symbolic and analytic reference domains."""
