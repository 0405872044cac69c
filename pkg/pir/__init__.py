"""
Private information retrieval built from perfectly smooth local decoders
"""
