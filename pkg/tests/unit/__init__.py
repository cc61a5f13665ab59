"""Unit tests for subcover components."""
