"""Modular symbols, twisted special values and p-adic L-functions on Hida family branches."""
__version__ = "0.1.0"
