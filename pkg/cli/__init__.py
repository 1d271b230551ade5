"""
KLV CLI Package
"""
