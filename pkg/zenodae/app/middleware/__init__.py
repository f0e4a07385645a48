"""
Middleware for invariant and failure tracking around suite runs
"""
