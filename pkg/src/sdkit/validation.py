"""Input validation helpers in the style of sklearn.utils.validation."""

import numpy as np

from .codes import TernaryCode, is_self_dual
from .exceptions import InvalidLatticeError, NotSelfDualError, ValidationError
from .lattice import LatticeGram


def check_gram(gram):
    """Return an int64 symmetric square array, or raise ValidationError."""
    g = np.asarray(gram, dtype=object)
    if g.ndim != 2 or g.shape[0] != g.shape[1]:
        raise ValidationError("Gram matrix must be square, got shape %r" % (g.shape,))
    for x in g.flat:
        if isinstance(x, (bool, np.bool_)) or int(x) != x:
            raise ValidationError("Gram matrix must have integer entries")
    g = g.astype(np.int64)
    if not np.array_equal(g, g.T):
        raise ValidationError("Gram matrix is not symmetric")
    return g


def check_lattice(x, unimodular=False):
    """Coerce a LatticeGram or a Gram array into a validated LatticeGram."""
    if isinstance(x, LatticeGram):
        lat = x
    else:
        try:
            lat = LatticeGram(check_gram(x))
        except InvalidLatticeError as exc:
            raise ValidationError(str(exc))
    if unimodular and not lat.is_unimodular():
        raise InvalidLatticeError("lattice is not unimodular (det %d)" % lat.determinant)
    return lat


def check_generator_matrix(rows, self_dual=False):
    """Coerce rows over GF(3) into a TernaryCode; rows must be independent."""
    if isinstance(rows, TernaryCode):
        code = rows
        given = code.dimension
    else:
        a = np.asarray(rows)
        if a.ndim != 2:
            raise ValidationError("generator matrix must be two-dimensional")
        if a.dtype.kind not in "iu":
            raise ValidationError("generator matrix must have integer entries")
        if np.any((a < 0) | (a > 2)):
            raise ValidationError("generator entries must be 0, 1 or 2")
        code = TernaryCode(a)
        given = a.shape[0]
    if code.dimension != given:
        raise ValidationError("generator matrix is rank deficient (%d rows, rank %d)"
                              % (given, code.dimension))
    if self_dual and not is_self_dual(code):
        raise NotSelfDualError("code is not self-dual")
    return code
