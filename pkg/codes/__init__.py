"""
Code families for the coding lab
Shared code abstractions, channels, Reed-Solomon, Hadamard, polynomial,
concatenated and random linear codes
"""
