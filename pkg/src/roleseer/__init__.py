"""Dynamic social-network role analytics toolkit."""

__version__ = "0.1.0"
