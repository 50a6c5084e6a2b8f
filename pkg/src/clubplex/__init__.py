"""clubplex - exact s-club / s-plex solvers built around x-degeneracy Turing kernels."""

__version__ = "0.1.0"
