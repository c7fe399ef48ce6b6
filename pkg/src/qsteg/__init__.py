"""Hiding classical bits in Fock and coherent optical states disguised as thermal noise."""

__version__ = "0.1.0"
