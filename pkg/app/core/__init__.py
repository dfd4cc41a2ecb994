"""Algebra core: exact linear algebra up to the bicategory of corings."""

__all__ = [
    "exact_linalg",
    "local_ring",
    "unital_module",
    "tensor_engine",
    "coring_core",
    "coring_constructors",
    "bicategory",
    "adjunction",
]
