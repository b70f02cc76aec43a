"""
Test package for discdeg.
"""
