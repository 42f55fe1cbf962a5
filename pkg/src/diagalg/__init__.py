"""Diagram algebras with labelled and ghost boundaries, the presented label
algebra and its evaluation map, normal forms, and the symplectic blob algebra."""

__version__ = "0.1.0"
