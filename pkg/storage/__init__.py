"""
Storage module for the coding lab
Word files and experiment result records
"""
