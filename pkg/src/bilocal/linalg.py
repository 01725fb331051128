"""Small exact linear algebra over Fraction: rref, nullspace, solve, minors.

Matrices are lists of row lists.  Sizes here are tiny (tens to a few
hundred), so plain fraction Gaussian elimination is the right tool.
"""

from __future__ import annotations

from fractions import Fraction


def rref(rows):
    """Reduced row echelon form (copy) and the list of pivot columns."""
    m = [list(map(Fraction, r)) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((k for k in range(r, nrows) if m[k][c]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for k in range(nrows):
            if k != r and m[k][c]:
                f = m[k][c]
                m[k] = [x - f * y for x, y in zip(m[k], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m, pivots


def nullspace(rows, ncols=None):
    """Basis of the kernel of the matrix, as coefficient lists."""
    if not rows:
        if ncols is None:
            return []
        basis = []
        for j in range(ncols):
            v = [Fraction(0)] * ncols
            v[j] = Fraction(1)
            basis.append(v)
        return basis
    ncols = len(rows[0]) if ncols is None else ncols
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        basis.append(v)
    return basis


def solve(a, b):
    """Solve a x = b for square nonsingular a; raises on singular input."""
    n = len(a)
    aug = [list(map(Fraction, a[i])) + [Fraction(b[i])] for i in range(n)]
    red, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ValueError("singular system")
    return [red[i][n] for i in range(n)]


def det(a):
    m = [list(map(Fraction, r)) for r in a]
    n = len(m)
    sign = 1
    out = Fraction(1)
    for c in range(n):
        pivot = next((k for k in range(c, n) if m[k][c]), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            m[c], m[pivot] = m[pivot], m[c]
            sign = -sign
        out *= m[c][c]
        inv = 1 / m[c][c]
        for k in range(c + 1, n):
            if m[k][c]:
                f = m[k][c] * inv
                m[k] = [x - f * y for x, y in zip(m[k], m[c])]
    return sign * out


def leading_principal_minors(a):
    n = len(a)
    return [det([row[: k + 1] for row in a[: k + 1]]) for k in range(n)]


class RowSpan:
    """Incrementally maintained row space over a dynamic, orderable key set.

    Rows are dicts {key: Fraction}; ``add`` reduces the candidate against
    the stored echelon rows and reports whether it was independent.
    """

    def __init__(self):
        self._rows = {}  # leading key -> reduced row dict

    def _reduce(self, vec):
        vec = {k: Fraction(c) for k, c in vec.items() if c}
        while vec:
            lead = min(vec)
            row = self._rows.get(lead)
            if row is None:
                return lead, vec
            f = vec[lead]
            for k, c in row.items():
                s = vec.get(k, 0) - f * c
                if s:
                    vec[k] = s
                else:
                    vec.pop(k, None)
        return None, {}

    def add(self, vec) -> bool:
        lead, red = self._reduce(vec)
        if lead is None:
            return False
        inv = 1 / red[lead]
        self._rows[lead] = {k: c * inv for k, c in red.items()}
        return True

    def contains(self, vec) -> bool:
        lead, _ = self._reduce(vec)
        return lead is None

    def dim(self) -> int:
        return len(self._rows)
