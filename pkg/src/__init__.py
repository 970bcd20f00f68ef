"""Core package for qtoric.

Purpose: Exact symbolic algebra of θ-deformed toric varieties, grassmannians
and flag varieties.
"""
