"""Projective, grassmannian and flag varieties built from deformed coordinate rings."""
