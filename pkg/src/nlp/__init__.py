"""
Parsing and phrase extraction.

Bracketed constituency trees, RTI extraction and pairing, and the
synthetic corpus generator used for desk-scale runs.
"""
