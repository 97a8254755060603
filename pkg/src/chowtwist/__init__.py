"""Exact computation of twisted Chow groups of classifying spaces for small
finite groups, together with the group-cohomological and lattice-theoretic
machinery (bar-resolution cohomology, transfers, coflasque resolutions,
graded-module invariants) needed to verify their closed forms."""

__version__ = "0.1.0"
