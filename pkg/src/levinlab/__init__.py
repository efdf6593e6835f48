"""Resource-bounded universal induction on a small prefix-free machine."""

__version__ = "0.1.0"
