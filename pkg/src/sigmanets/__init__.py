"""Kernel library for Petri nets, pre-nets, sigma nets and whole-grain
nets: translations between them, free monoidal-category execution
semantics, open nets glued by pushout, and enumeration-based checking of
the laws relating all of the above."""

__version__ = "0.1.0"
