"""CLI entry package for qtoric.

Purpose: Expose the ``qtoric`` command-line entry module.
"""
