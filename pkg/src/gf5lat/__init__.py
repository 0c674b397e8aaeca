"""Self-dual codes over GF(5), their Construction-A lattices, and the
machinery to verify minimum weights, kissing numbers, shadows and theta
series of those lattices."""

from gf5lat.gf5 import LinearCode, dual_code, is_self_dual, puncture, rref

__all__ = ["LinearCode", "dual_code", "is_self_dual", "puncture", "rref"]

__version__ = "0.1.0"
