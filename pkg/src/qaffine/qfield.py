"""Fast univariate rational-function arithmetic for the membership sweep.

Single-parameter runs spend nearly all their time on coefficient arithmetic;
this module strips the generic multivariate layers down to dicts mapping
integer exponents to Fractions.  Semantics match RatFunc over one variable
restricted to real coefficients; `to_ratfunc` converts back for certificate
output.
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import GaussRational, LaurentPoly, RatFunc


def qp_add(a: dict, b: dict) -> dict:
    out = dict(a)
    for e, c in b.items():
        s = out.get(e)
        if s is None:
            out[e] = c
        else:
            s = s + c
            if s:
                out[e] = s
            else:
                del out[e]
    return out


def qp_mul(a: dict, b: dict) -> dict:
    if len(a) > len(b):
        a, b = b, a
    out: dict = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = e1 + e2
            c = c1 * c2
            s = out.get(e)
            if s is None:
                out[e] = c
            else:
                s = s + c
                if s:
                    out[e] = s
                else:
                    del out[e]
    return out


def qp_neg(a: dict) -> dict:
    return {e: -c for e, c in a.items()}


def qp_scale(a: dict, c: Fraction) -> dict:
    return {e: c * v for e, v in a.items()}


def qp_shift(a: dict, k: int) -> dict:
    if not k:
        return dict(a)
    return {e + k: c for e, c in a.items()}


def qp_divexact(a: dict, b: dict):
    """a/b when exact, else None (single-term b always divides)."""
    if not b:
        raise ZeroDivisionError
    if not a:
        return {}
    if len(b) == 1:
        [(e, c)] = b.items()
        ci = 1 / c
        return {ea - e: ca * ci for ea, ca in a.items()}
    alo, ahi = min(a), max(a)
    blo, bhi = min(b), max(b)
    if ahi - alo < bhi - blo:
        return None
    qlo, qhi = alo - blo, ahi - bhi
    lead = bhi
    lci = 1 / b[bhi]
    rem = dict(a)
    q: dict = {}
    budget = qhi - qlo + 1
    while rem:
        budget -= 1
        if budget < 0:
            return None
        rk = max(rem)
        qe = rk - lead
        if qe < qlo or qe > qhi:
            return None
        qc = rem[rk] * lci
        s = q.get(qe)
        s = qc if s is None else s + qc
        if s:
            q[qe] = s
        elif qe in q:
            del q[qe]
        for be, bcoef in b.items():
            key = qe + be
            v = qc * bcoef
            s = rem.get(key)
            s = -v if s is None else s - v
            if s:
                rem[key] = s
            else:
                rem.pop(key, None)
    return q


def qp_gcd(a: dict, b: dict) -> dict:
    """Monic gcd of the polynomial parts (monomial content stripped)."""

    def dense(p: dict):
        if not p:
            return []
        lo, hi = min(p), max(p)
        out = [Fraction(0)] * (hi - lo + 1)
        for e, c in p.items():
            out[e - lo] = c
        while out and not out[-1]:
            out.pop()
        start = 0
        while start < len(out) and not out[start]:
            start += 1
        return out[start:]

    fa, fb = dense(a), dense(b)
    if not fa:
        fa, fb = fb, fa
    while fb:
        if len(fa) < len(fb):
            fa, fb = fb, fa
            continue
        lead = 1 / fb[-1]
        fb = [c * lead for c in fb]
        r = list(fa)
        for top in range(len(r) - 1, len(fb) - 2, -1):
            c = r[top]
            if not c:
                continue
            off = top - (len(fb) - 1)
            for k in range(len(fb)):
                r[off + k] = r[off + k] - c * fb[k]
        while r and not r[-1]:
            r.pop()
        start = 0
        while start < len(r) and not r[start]:
            start += 1
        fa, fb = fb, r[start:]
    if not fa:
        return {0: Fraction(1)}
    lead = 1 / fa[-1]
    return {k: c * lead for k, c in enumerate(fa) if c}


class QF:
    """num/den over Fraction-coefficient univariate Laurent dicts."""

    __slots__ = ("n", "d")

    def __init__(self, n: dict, d: dict | None = None, _normalize=True):
        if d is not None and _normalize:
            n, d = _qf_normalize(n, d)
        self.n = n
        self.d = d  # None means denominator 1

    def __bool__(self):
        return bool(self.n)

    def __neg__(self):
        return QF(qp_neg(self.n), self.d, _normalize=False)

    def __add__(self, other: "QF") -> "QF":
        if self.d is None and other.d is None:
            return QF(qp_add(self.n, other.n), None, _normalize=False)
        sd = self.d if self.d is not None else {0: Fraction(1)}
        od = other.d if other.d is not None else {0: Fraction(1)}
        num = qp_add(qp_mul(self.n, od), qp_mul(other.n, sd))
        return QF(num, qp_mul(sd, od))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "QF") -> "QF":
        if self.d is None and other.d is None:
            return QF(qp_mul(self.n, other.n), None, _normalize=False)
        sd = self.d if self.d is not None else None
        od = other.d if other.d is not None else None
        den = sd if od is None else (od if sd is None else qp_mul(sd, od))
        return QF(qp_mul(self.n, other.n), den)

    def inverse(self) -> "QF":
        if not self.n:
            raise ZeroDivisionError("inverse of zero")
        den = self.d if self.d is not None else {0: Fraction(1)}
        return QF(den, dict(self.n))

    def __eq__(self, other):
        if not isinstance(other, QF):
            return NotImplemented
        sd = self.d if self.d is not None else {0: Fraction(1)}
        od = other.d if other.d is not None else {0: Fraction(1)}
        return qp_mul(self.n, od) == qp_mul(other.n, sd)

    def __hash__(self):
        raise TypeError("QF is unhashable")

    def to_ratfunc(self, vars: tuple) -> RatFunc:
        num = LaurentPoly(vars, {(e,): GaussRational(c) for e, c in self.n.items()})
        if self.d is None:
            return RatFunc(num)
        den = LaurentPoly(vars, {(e,): GaussRational(c) for e, c in self.d.items()})
        return RatFunc(num, den)


def _qf_normalize(n: dict, d: dict):
    if not d:
        raise ZeroDivisionError("zero denominator")
    if not n:
        return n, None
    if len(d) == 1:
        [(e, c)] = d.items()
        ci = 1 / c
        return {ea - e: ca * ci for ea, ca in n.items()}, None
    q = qp_divexact(n, d)
    if q is not None:
        return q, None
    if len(n) > 1:
        g = qp_gcd(n, d)
        if len(g) > 1:
            n = qp_divexact(n, g)
            d = qp_divexact(d, g)
            if len(d) == 1:
                [(e, c)] = d.items()
                ci = 1 / c
                return {ea - e: ca * ci for ea, ca in n.items()}, None
    # normalize: monic denominator with zero minimal exponent
    lo = min(d)
    lead = d[max(d)]
    if lo or lead != 1:
        ci = 1 / lead
        d = {e - lo: c * ci for e, c in d.items()}
        n = {e - lo: c * ci for e, c in n.items()}
    return n, d


def qf_one() -> QF:
    return QF({0: Fraction(1)}, None, _normalize=False)


def poly_to_qf(p: LaurentPoly) -> QF:
    """Real univariate LaurentPoly -> QF; raises on imaginary parts."""
    n: dict = {}
    for e, c in p.terms.items():
        if c.im:
            raise ValueError("imaginary coefficient outside the fast field")
        n[e[0] if e else 0] = c.re
    return QF(n, None, _normalize=False)
