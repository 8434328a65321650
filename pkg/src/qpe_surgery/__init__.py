"""QPE compilation to lattice surgery with resource estimation."""

__version__ = "0.1.0"
