"""The deformed matrix algebra of GL_θ(n): normal forms, minors and the antipode."""
