"""knotw: width invariants of knot and spatial-graph diagrams."""

__version__ = "0.1.0"
