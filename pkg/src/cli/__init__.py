"""
CLI module: run configs, the experiment registry, output writers.

Entry point: ``python -m src.cli``.
"""
