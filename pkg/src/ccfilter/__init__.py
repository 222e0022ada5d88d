"""Cascaded complementary filtering for 9-DOF attitude estimation."""

__version__ = "0.1.0"
