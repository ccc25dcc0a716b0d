"""Least adjacency eigenvalues of complements of unicyclic graphs."""

from .eigen import Spectrum, full_spectrum, least_eigenpair, rayleigh
from .families import complete, cycle, s3, star, u_pq, u_prime
from .graph import (
    Graph,
    canonical_form,
    complement,
    decode_graph6,
    encode_graph6,
    eigen_residual,
    is_unicyclic,
    new_graph,
    quadratic_form,
)
from .poly import IntPoly, char_poly, least_real_root, paper_f, paper_g, paper_g_bar

__version__ = "0.1.0"
