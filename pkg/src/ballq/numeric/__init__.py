"""Ball arithmetic, point sampling, approximate kernels, recognition and Lefschetz counts."""
