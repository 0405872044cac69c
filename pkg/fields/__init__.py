"""
Finite-field substrate for the coding lab
Field descriptors, polynomial algebra, linear systems and y-root extraction
"""
