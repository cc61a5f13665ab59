"""
subcover Test Suite

Structure:
- unit/: Fast, isolated unit tests per package
- integration/: The command line end to end, against temporary run directories
"""
