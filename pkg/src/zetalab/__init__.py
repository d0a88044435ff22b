"""zetalab: a desk-scale numerical workbench for prime counting bands,
truncated asymptotic series, zeta evaluation, critical-line zeros, and
horizontal curve-integral decompositions."""

from ._kernels import BACKEND as SIEVE_BACKEND

__version__ = "0.1.0"

__all__ = ["SIEVE_BACKEND", "__version__"]
