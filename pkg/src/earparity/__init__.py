"""Odd-C3+ detection, ear-decomposition parity parameters and certificates."""
