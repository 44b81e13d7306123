"""
tioa-kit handlers, one per query kind.
"""
