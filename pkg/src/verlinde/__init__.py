"""Exact fusion-ring, polynomial-ideal and AF-algebra K-theory computations
for the WZW categories built on SU(2), SU(3), Sp(4) and G2."""

__version__ = "0.1.0"
