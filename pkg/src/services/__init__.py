"""Shared service utilities (config loading, inputs, suites, reports).

Purpose: Glue the algebra packages to the command line: configuration, JSON
inputs, verification suites and their reports.
"""
