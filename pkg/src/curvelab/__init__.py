"""GUE level-curvature toolkit."""

__version__ = "0.1.0"
