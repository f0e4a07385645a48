"""
Classical testbed for projected (Zeno) dilation of constrained linear DAEs
"""

__version__ = "1.0.0"
