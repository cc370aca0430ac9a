"""Exact computations with flat quasi-Frobenius Lie superalgebras."""
