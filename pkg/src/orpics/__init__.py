"""Verification toolkit for one-relator products induced by generalised
triangle groups: word combinatorics, free-product arithmetic, description
refinement, triangle-group oracles, picture audits and a bounded word-problem
solver."""

__version__ = "0.1.0"
