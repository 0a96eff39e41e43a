"""Exact classification of words with constants over group actions and
constructive solving of mixed inequalities over Thompson's group F and
finitary permutation groups."""

__version__ = "0.1.0"
