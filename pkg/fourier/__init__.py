"""
Boolean Fourier analysis, hard-core predicates and multiplication codes
"""
