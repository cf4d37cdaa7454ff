"""Exact construction of exceptional Lie algebras and certification of property (P)
for their distinguished non-regular nilpotent orbits."""

__version__ = "0.1.0"
