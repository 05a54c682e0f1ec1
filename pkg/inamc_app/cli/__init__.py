"""
Command line tasks.
"""
