"""
Reports and evaluation.

Deterministic JSON reports, table output, precision and threshold
sweeps over labelled issues, and the fault-injection experiment.
"""
