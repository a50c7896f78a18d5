"""
Test suite for the referential transparency translation checker.

Covers tree parsing, RTI extraction, the translation gateway, detection,
evaluation, the pipeline and the command line.
"""
