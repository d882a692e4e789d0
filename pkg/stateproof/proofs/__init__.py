"""
Built-in proofs, random term generation and the rule-soundness sweep.
"""
