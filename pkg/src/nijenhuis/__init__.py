"""Exact computations with Nijenhuis operators on finite-dimensional associative algebras.

Submodules:

``core``       algebras, bimodules, operators, verification, deformed products
``tensor``     multilinear maps, cup and Froelicher-Nijenhuis brackets, differentials
``complexes``  cochain complexes, cohomology, the long exact sequence
``nsalg``      NS-algebras, labeled cochains, the NS differential and Theta
``defext``     deformations, abelian extensions, the Wells map
``homotopy``   2-term and graded A-infinity data, crossed modules, NS-infinity
``cli``        the document format and the ``nijenhuis`` command
"""

from __future__ import annotations

from .core import (
    Algebra,
    Bimodule,
    LinearMap,
    NijAlgebra,
    NijBimodule,
    Report,
    StructureError,
    VerificationError,
    deformed_algebra,
    verify_core,
)

__version__ = "0.1.0"

__all__ = [
    "Algebra",
    "Bimodule",
    "LinearMap",
    "NijAlgebra",
    "NijBimodule",
    "Report",
    "StructureError",
    "VerificationError",
    "deformed_algebra",
    "verify_core",
    "__version__",
]
