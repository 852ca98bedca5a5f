"""Access-based intuitionistic knowledge: proof kernel, algebraic models, common knowledge."""

__version__ = "0.1.0"
