"""
Exponential integrators for the Clancy-Rudy INa Markov chain model.
"""

__version__ = "0.1.1"
