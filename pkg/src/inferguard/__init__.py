"""Privacy-preserving genome similarity queries with inference control.

BGN encryption over a composite-order pairing group, Bloom-filter gram
encodings, a Reed-Muller fuzzy commitment with zero-knowledge proofs, and the
Mastermind-style attack the inference control is meant to stop.
"""

__version__ = '0.1.0'
