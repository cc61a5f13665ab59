"""Integration tests for the subcover command line."""
