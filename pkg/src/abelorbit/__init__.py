"""Exact models for orbits of cycles on abelian varieties.

Two finite-dimensional models are provided: an exterior-algebra model of the
cohomology ring of A and A x A^ in which the Fourier-Mukai transform is
computed, and a Hermitian-matrix model of Pic(A)_Q for A = E^g in which
endomorphisms and translations act. Orbit spans are computed exactly in the
truncated symmetric algebra on the latter.
"""

__version__ = "0.1.0"
