"""Exact-arithmetic workbench for corings over rings with local units."""
