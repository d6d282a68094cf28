"""Certify trivial-centralizer hypotheses for hyperbolic toral automorphisms."""

__version__ = "0.1.0"
