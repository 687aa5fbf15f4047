"""Global variables and constants for unit tests."""

SEED = 12
