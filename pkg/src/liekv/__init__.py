"""Exact free-Lie-algebra engine for the Campbell-Hausdorff series and the
Kashiwara-Vergne equations, with numeric and enveloping-algebra cross-checks."""

__version__ = "0.1.0"
