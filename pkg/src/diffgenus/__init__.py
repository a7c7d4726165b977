"""Difference graphs of finite nilpotent groups: construction, genus and
crosscap computation, and verification of the genus/crosscap classification."""

__version__ = "0.1.0"
