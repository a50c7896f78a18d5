"""
Referential Transparency Translation Checker

Metamorphic testing for machine translation: noun phrases that should
translate the same way alone and inside their sentence are translated
both ways, and pairs whose translations disagree are reported.

Version: 1.0
"""

__version__ = "1.0"
__description__ = "Referential transparency translation checker"
