"""Associated Legendre functions of complex degree and order, fractional
stepping operators realized by loop-contour quadrature, and a registry that
numerically verifies the identities connecting them."""

from .numerics import EvalResult, gamma_complex, hyp2f1, loggamma_complex

__all__ = ["EvalResult", "gamma_complex", "hyp2f1", "loggamma_complex"]
__version__ = "0.1.0"
