"""
Proof kernel and finite-store semantic checker for the decorated equational logic of global state.
"""
