"""Exact computer algebra for the quantum matrix space C[M_n]_q and its U_q sl_2n symmetries."""

from .coeffs import ONE, ZERO, Q, QScalar, S, U, eval_numeric, normalize, q_pochhammer
from .qmatrix import PolyM, det_q, normal_form, q_minor, shilov_star
from .textio import parse_poly, parse_scalar, render_poly, render_scalar

__all__ = [
    "ONE",
    "Q",
    "S",
    "U",
    "ZERO",
    "PolyM",
    "QScalar",
    "det_q",
    "eval_numeric",
    "normal_form",
    "normalize",
    "parse_poly",
    "parse_scalar",
    "q_minor",
    "q_pochhammer",
    "render_poly",
    "render_scalar",
    "shilov_star",
]
