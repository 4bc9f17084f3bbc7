"""Graded ideals, Macaulay matrices, Hilbert functions and a small Groebner engine over F_p."""
