"""
Experiment driver for the coding lab
Configuration, environment settings, reporting and the command-line interface
"""
