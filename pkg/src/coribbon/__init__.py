"""Exact construction and verification of a coribbon weak Hopf algebra.

The package builds, from Temperley-Lieb recoupling data at a root of unity,
the reconstructed weak Hopf algebra together with its coquasitriangular,
coribbon and corepresentation structure, and verifies every defining axiom
exactly over a cyclotomic number field.
"""

from coribbon.cyclotomic import (
    CycloScalar,
    cyclotomic_polynomial,
    field_degree,
    loop_value,
    quantum_factorial,
    quantum_int,
    root_power,
)

__version__ = "0.1.0"

__all__ = [
    "CycloScalar",
    "cyclotomic_polynomial",
    "field_degree",
    "loop_value",
    "quantum_factorial",
    "quantum_int",
    "root_power",
    "__version__",
]
