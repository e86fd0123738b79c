"""Exact computations in Lie algebras of polynomial vector fields."""
