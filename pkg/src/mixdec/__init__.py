"""Numerical laboratory for mixed-norm decoupling on the paraboloid."""
