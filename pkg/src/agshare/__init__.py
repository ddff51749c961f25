"""Linear secret sharing from algebraic-geometric codes on small curves."""

__version__ = "0.1.0"
