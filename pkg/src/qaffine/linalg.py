"""Sparse exact linear algebra helpers shared by the algebra modules.

Vectors are dicts mapping hashable keys to nonzero GaussRational (or
LaurentPoly) coefficients.  The incremental echelon keeps rows normalized so
that membership and rank queries stay cheap.
"""

from __future__ import annotations

from .scalars import GaussRational


def vec_add(a: dict, b: dict, scale=None) -> dict:
    """a + scale*b over sparse dicts (scale defaults to 1)."""
    out = dict(a)
    for k, v in b.items():
        w = v if scale is None else scale * v
        if not w:
            continue
        s = out.get(k)
        if s is None:
            out[k] = w
        else:
            s = s + w
            if s:
                out[k] = s
            else:
                del out[k]
    return out


def vec_scale(a: dict, c) -> dict:
    if not c:
        return {}
    return {k: c * v for k, v in a.items()}


class Echelon:
    """Incremental reduced echelon over sparse dict vectors.

    Keys must be totally ordered via the `key_order` callable (larger value =
    preferred pivot).  Coefficients must support +, *, inverse() and truth
    testing.
    """

    def __init__(self, key_order=None):
        self.rows: dict = {}
        self.key_order = key_order or (lambda k: k)

    def _pivot(self, v: dict):
        return max(v, key=self.key_order)

    def reduce(self, v: dict) -> dict:
        """Full linear reduction modulo the span of the stored rows.

        Rows are kept mutually reduced, so one pass over the pivot keys
        present in v suffices (eliminating a pivot never reintroduces
        another pivot key).
        """
        v = dict(v)
        hits = [k for k in v if k in self.rows]
        for k in hits:
            c = v.get(k)
            if c:
                v = vec_add(v, self.rows[k], -c)
        return v

    def insert(self, v: dict) -> bool:
        """Reduce v and add it to the basis; True if the rank grew."""
        v = self.reduce(v)
        if not v:
            return False
        p = self._pivot(v)
        inv = v[p].inverse()
        v = {k: inv * c for k, c in v.items()}
        for q, row in self.rows.items():
            c = row.get(p)
            if c:
                self.rows[q] = vec_add(row, v, -c)
        self.rows[p] = v
        return True

    @property
    def rank(self) -> int:
        return len(self.rows)

    def contains(self, v: dict) -> bool:
        return not self.reduce(v)

    def coordinates(self, v: dict):
        """Express v over the pivot rows; None if v is outside the span.

        Returns a dict pivot-key -> coefficient with v = sum coeff * row.
        """
        v = dict(v)
        coeffs: dict = {}
        while v:
            p = self._pivot(v)
            row = self.rows.get(p)
            if row is None:
                return None
            c = v[p]
            coeffs[p] = c
            v = vec_add(v, row, -c)
        return coeffs


def span_rank(vectors, key_order=None) -> int:
    ech = Echelon(key_order)
    for v in vectors:
        ech.insert(v)
    return ech.rank


def nullspace(columns: list, key_order=None, one=None):
    """Kernel basis of the linear map x -> sum x_j * columns[j].

    `columns` is a list of sparse dict vectors (the images of the unit
    coordinate vectors).  Returns kernel vectors as dicts column-index ->
    coefficient.  `one` is the multiplicative unit of the coefficient type.
    """
    key_order = key_order or (lambda k: k)
    rows: dict = {}
    combos: dict = {}
    kernel = []
    if one is None:
        one = GaussRational(1)
    for j, col in enumerate(columns):
        v = dict(col)
        combo = {j: one}
        while v:
            p = max(v, key=key_order)
            row = rows.get(p)
            if row is None:
                inv = v[p].inverse()
                rows[p] = {k: inv * c for k, c in v.items()}
                combos[p] = {k: inv * c for k, c in combo.items()}
                combo = None
                break
            c = v[p]
            v = vec_add(v, row, -c)
            combo = vec_add(combo, combos[p], -c)
        if combo is not None:
            kernel.append(combo)
    return kernel
