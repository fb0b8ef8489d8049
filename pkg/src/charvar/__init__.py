"""charvar: SL2/PSL2 character-variety computations for two-generator knot groups.

Submodules by topic:

* ``mat2``      unit-determinant 2x2 matrices, isometry and pair classification
* ``polys``     exact sparse polynomials, gcd/resultant, complex root finding
* ``words``     free-group words
* ``traces``    Fricke trace polynomials and the trace functions tr^2 - 4
* ``twobridge`` two-bridge knot exteriors: character curves, censuses, degrees
* ``triangle``  Euclidean/hyperbolic triangle groups and twist-knot searches
* ``bending``   bending deformations along splittings and constancy criteria
* ``arith``     number-theoretic bounds and the dihedral Betti-number formula
* ``cli``       command-line interface
"""

__version__ = "0.1.0"

from .errors import CharvarError, ConsistencyError, InvalidInputError  # noqa: F401
from .mat2 import (Mat2, IsomClass, IsomTag, PairTag, classify_isometry,  # noqa: F401
                   fixed_points, jorgensen_test, pair_classify,
                   translation_length)
from .polys import (LaurentPoly, SparsePoly, complex_roots, poly_gcd,  # noqa: F401
                    resultant, symmetrize)
from .traces import FrickePoint, f_gamma, power_trace, trace_poly  # noqa: F401
from .twobridge import (CharacterCurve, TwoBridgeKnot, alexander,  # noqa: F401
                        build_presentation, character_poly, cs_degree,
                        dihedral_census, lift_representation, longitude_word)
from .words import Word  # noqa: F401
