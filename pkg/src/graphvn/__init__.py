"""Weighted directed graphs, their loop-weight groups and free graph algebra moments."""
