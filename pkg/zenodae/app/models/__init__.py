"""
Pydantic models for the zeno-dae testbed
"""
