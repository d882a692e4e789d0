"""
Surface syntax, proof-script loading and file helpers.
"""
