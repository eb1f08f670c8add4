"""Exact algebra: polynomials, Lie algebras, brackets, pencils and the completeness criterion."""
