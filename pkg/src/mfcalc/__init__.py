"""Symbol calculus for Mellin and Fourier convolution operators on the half-line."""

__version__ = "0.1.0"
