"""Cell decompositions of totally nonnegative Springer fibres, computed exactly."""

__version__ = "0.1.0"
