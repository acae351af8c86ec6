"""Fitting length toolkit.

Builds finite soluble permutation groups from wreath-product expressions,
computes Fitting lengths and Hall subgroups from propagated Sylow systems and
checks the known Fitting-length bounds against measured values.
"""

__version__ = "1.0.0"
