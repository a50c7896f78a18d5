"""
Core module for the translation checker.

This module contains configuration management, the exception hierarchy,
shared value types, the bag-of-words detector and the detection pipeline.
"""
