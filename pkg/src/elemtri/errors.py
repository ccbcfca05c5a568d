"""Exception types raised by elemtri."""

import numpy as np


class ShapeError(ValueError):
    """Operand shapes or block dimensions are inconsistent."""


class ScalarMismatchError(TypeError):
    """Real and complex matrices were mixed in one operation."""


class NotTriangularError(ValueError):
    """A matrix expected to be (block) lower triangular has entries above the diagonal."""

    def __init__(self, message, position=None):
        super().__init__(message)
        self.position = position


class SingularMatrixError(np.linalg.LinAlgError):
    """A required inverse does not exist.

    ``index`` names the offending diagonal entry, block, or elimination
    step (0-based). ``witness`` optionally carries the matrix whose
    singularity was detected, e.g. the Schur block of a Hessenberg matrix.
    """

    def __init__(self, message, index=None, witness=None):
        super().__init__(message)
        self.index = index
        self.witness = witness


class HessenbergError(ValueError):
    """A matrix is not strict lower k-Hessenberg."""

    def __init__(self, message, position=None):
        super().__init__(message)
        self.position = position


class SizeGuardError(ValueError):
    """Subset enumeration was requested on a matrix larger than the guard allows."""
