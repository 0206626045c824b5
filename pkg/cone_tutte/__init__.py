"""
cone-tutte: discrete and continuous harmonic maps onto non-convex polygons.

Tutte-type embeddings of disk triangulations, boundary cone certification,
exact injectivity certificates, convex-extension reduction, weight recovery
and Poisson-kernel experiments on the unit disk.
"""

__version__ = "1.0.0"
