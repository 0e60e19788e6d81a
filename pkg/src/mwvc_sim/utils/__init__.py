"""Utility package for logging, exceptions and keyed random streams."""
