"""
Specialization of Modules (smod)

Purpose: Exact computation over Q(u)[x] and Q[x] of Groebner bases, presented
modules, free resolutions, Tor and Ext, and randomized checks that these
constructions commute with the substitution u -> alpha.
"""

__version__ = "0.1.0"
