"""Exact computer algebra for the polynomial representation of double affine
Hecke algebras: Macdonald polynomials for reduced root systems, their
evaluation / duality / norm / recurrence laws, shift operators, Gaussian
twists, and roots-of-unity modular data."""

from .rootdata import build_root_system, RootSystemData, ConfigurationError
from .coeffs import (SymbolicDomain, RationalDomain, CyclotomicDomain,
                     DomainError, ExponentError)
from .macdonald import MacdonaldTable
from .modular import ModularData, build_modular, verify_modular, ModularError

__version__ = "0.1.0"

__all__ = [
    "build_root_system", "RootSystemData", "ConfigurationError",
    "SymbolicDomain", "RationalDomain", "CyclotomicDomain",
    "DomainError", "ExponentError",
    "MacdonaldTable",
    "ModularData", "build_modular", "verify_modular", "ModularError",
    "__version__",
]
