"""cyclotwist: exact arithmetic for small tensor-category invariants.

Subpackages by task:

* ``exactalg``    integer/GF(2) linear algebra, Smith normal forms
* ``fusion``      fusion rings, regular representations, determinant bounds
* ``cocycle``     3-cocycles on cyclic groups, cohomology classes
* ``obstruction`` existence criteria for cyclic actions on Cuntz algebras
* ``numring``     Z[2cos(2pi/p)] arithmetic and lattice-splitting certificates
* ``pimsner``     simplicity of Toeplitz/Cuntz-Pimsner algebras, block model
* ``cli``         command-line front end (`cyclotwist ...`)
"""

from . import exactalg, fusion, cocycle, obstruction, numring, pimsner

__all__ = [
    "exactalg",
    "fusion",
    "cocycle",
    "obstruction",
    "numring",
    "pimsner",
]

__version__ = "0.1.0"
