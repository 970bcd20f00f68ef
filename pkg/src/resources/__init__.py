"""Bundled example fans and their expected chart presentations."""
