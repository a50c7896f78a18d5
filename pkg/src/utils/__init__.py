"""
Utility functions and helpers for the checker.

This module contains the logging setup shared by every component.
"""
