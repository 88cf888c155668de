"""Exact arithmetic in the quantum plane, its jet algebras A^(n), and F[GL_q(2)]."""
from .qcoeff import IntPoly, QScalar, gauss_binomial, q_power
from .freealg import JetSymbol, NCPoly, RewriteSystem, glq2_relations, jet_relations, nc_delta, nc_mul, normalize
from .jetalg import BiDegree, BiGradedPoly, delta_jet, from_free, mul_jet, pow_jet, x, y
from .ideals import (BuchbergerBudgetExceeded, IdealPresentation, ReductionTrace, buchberger,
                     extract_bihomogeneous, is_delta_stable, membership, reduce_x, reduce_y)
from .parse import ParseError, parse, parse_jet
from .render import render_jet

__version__ = "0.1.0"

__all__ = [
    "IntPoly", "QScalar", "gauss_binomial", "q_power",
    "JetSymbol", "NCPoly", "RewriteSystem", "glq2_relations", "jet_relations", "nc_delta", "nc_mul", "normalize",
    "BiDegree", "BiGradedPoly", "delta_jet", "from_free", "mul_jet", "pow_jet", "x", "y",
    "BuchbergerBudgetExceeded", "IdealPresentation", "ReductionTrace", "buchberger", "extract_bihomogeneous",
    "is_delta_stable", "membership", "reduce_x", "reduce_y",
    "ParseError", "parse", "parse_jet", "render_jet",
]
