"""Wrappers for external data sources."""
