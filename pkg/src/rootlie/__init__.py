"""Exact Hall numbers, root categories and the Lie algebras they carry."""
