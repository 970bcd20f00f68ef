"""Lattices, fans, the quantum torus and deformed chart algebras."""
