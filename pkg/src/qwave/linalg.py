"""Exact linear algebra over Q(s, u) on sparse vectors (dict key -> QScalar)."""

from __future__ import annotations

from .coeffs import ONE, ZERO, QScalar


def _axpy(v: dict, c: QScalar, w: dict) -> dict:
    """v - c*w, dropping zeros."""
    out = dict(v)
    for k, x in w.items():
        y = out.get(k, ZERO) - c * x
        if y.is_zero():
            out.pop(k, None)
        else:
            out[k] = y
    return out


class Echelon:
    """Incrementally built row-echelon basis of a subspace.

    Rows are kept in insertion order; each row has a distinct pivot that is
    absent from all later rows, so one pass in order reduces any vector.
    """

    def __init__(self):
        self.rows: list[tuple[object, dict]] = []
        # transform[i] expresses row i in terms of the inserted vectors
        self.transform: list[dict] = []
        self.count = 0

    def __len__(self):
        return len(self.rows)

    def reduce(self, v: dict, track: bool = False):
        comb: dict = {}
        for (p, row), tr in zip(self.rows, self.transform):
            c = v.get(p)
            if c is not None:
                v = _axpy(v, c, row)
                if track:
                    comb = _axpy(comb, c, tr)
        return (v, comb) if track else v

    def add(self, v: dict) -> bool:
        """Insert v; return False if it was already in the span."""
        r, comb = self.reduce(v, track=True)
        idx = self.count
        self.count += 1
        if not r:
            return False
        p = max(r)
        inv = r[p].inverse()
        row = {k: x * inv for k, x in r.items()}
        comb = {k: x * inv for k, x in comb.items()}
        comb[idx] = inv
        self.rows.append((p, row))
        self.transform.append(comb)
        return True

    def coordinates(self, v: dict) -> dict:
        """Coefficients of v in the inserted vectors (only independent ones).

        Raises ValueError when v is outside the span.
        """
        r, comb = self.reduce(v, track=True)
        if r:
            raise ValueError("vector not in span")
        return {k: -x for k, x in comb.items() if not x.is_zero()}


def rank(vectors) -> int:
    e = Echelon()
    for v in vectors:
        e.add(v)
    return len(e)


def solve_square(matrix: list[list[QScalar]], rhs: list[QScalar]) -> list[QScalar]:
    """Gauss-Jordan solve of a nonsingular system."""
    m = len(matrix)
    a = [list(row) + [b] for row, b in zip(matrix, rhs)]
    for col in range(m):
        piv = next((r for r in range(col, m) if not a[r][col].is_zero()), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        a[col], a[piv] = a[piv], a[col]
        inv = a[col][col].inverse()
        a[col] = [x * inv for x in a[col]]
        for r in range(m):
            if r != col and not a[r][col].is_zero():
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[m] for row in a]


__all__ = ["Echelon", "rank", "solve_square", "ONE"]
