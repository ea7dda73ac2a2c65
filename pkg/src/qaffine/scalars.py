"""Exact coefficient arithmetic.

Everything downstream computes over the field Q(i) (rationals extended by a
square root of -1), its sparse multivariate Laurent polynomial ring, and the
fraction field of that ring.  No floats anywhere; all operations are exact.

Conventions:
  * a Laurent polynomial carries an ordered tuple of variable names and a
    dict mapping integer exponent vectors (negative exponents allowed) to
    nonzero GaussRational coefficients;
  * two polynomials over different variable tuples are aligned by taking the
    union of their variables before combining;
  * the zero polynomial has an empty term dict.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping


class ZeroAssignment(Exception):
    """Raised when a variable with a negative exponent is evaluated at 0."""


class GaussRational:
    """A number re + im*sqrt(-1) with exact rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if isinstance(re, Fraction) else Fraction(re)
        self.im = im if isinstance(im, Fraction) else Fraction(im)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        other = as_gauss(other)
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __add__(self, other):
        other = as_gauss(other)
        return GaussRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussRational(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-as_gauss(other))

    def __rsub__(self, other):
        return as_gauss(other) + (-self)

    def __mul__(self, other):
        other = as_gauss(other)
        if not self.im and not other.im:
            return GaussRational(self.re * other.re)
        return GaussRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def inverse(self):
        if not self:
            raise ZeroDivisionError("GaussRational inverse of 0")
        n = self.re * self.re + self.im * self.im
        return GaussRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        return self * as_gauss(other).inverse()

    def __rtruediv__(self, other):
        return as_gauss(other) * self.inverse()

    def conjugate(self):
        return GaussRational(self.re, -self.im)

    def __repr__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}*i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}*i"


def as_gauss(x) -> GaussRational:
    if isinstance(x, GaussRational):
        return x
    if isinstance(x, (int, Fraction)):
        return GaussRational(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to GaussRational")


G_ZERO = GaussRational(0)
G_ONE = GaussRational(1)
G_MINUS_ONE = GaussRational(-1)
G_I = GaussRational(0, 1)


def _merge_vars(a: tuple, b: tuple) -> tuple:
    if a == b:
        return a
    seen = dict.fromkeys(a)
    for v in b:
        seen.setdefault(v)
    return tuple(sorted(seen))


class LaurentPoly:
    """Sparse multivariate Laurent polynomial over GaussRational."""

    __slots__ = ("vars", "terms")

    def __init__(self, vars: tuple, terms: Mapping[tuple, GaussRational] | None = None):
        self.vars = tuple(vars)
        self.terms = dict(terms) if terms else {}

    # -- constructors -------------------------------------------------

    @staticmethod
    def constant(c, vars: tuple = ()) -> "LaurentPoly":
        c = as_gauss(c)
        vars = tuple(vars)
        zero = (0,) * len(vars)
        return LaurentPoly(vars, {zero: c} if c else {})

    @staticmethod
    def variable(name: str, vars: tuple) -> "LaurentPoly":
        vars = tuple(vars)
        i = vars.index(name)
        exp = tuple(1 if j == i else 0 for j in range(len(vars)))
        return LaurentPoly(vars, {exp: G_ONE})

    @staticmethod
    def monomial(vars: tuple, exps: tuple, coeff=1) -> "LaurentPoly":
        c = as_gauss(coeff)
        return LaurentPoly(tuple(vars), {tuple(exps): c} if c else {})

    # -- bookkeeping ---------------------------------------------------

    def _aligned(self, other: "LaurentPoly"):
        if self.vars == other.vars:
            return self, other
        vs = _merge_vars(self.vars, other.vars)
        return self.extend(vs), other.extend(vs)

    def extend(self, vars: tuple) -> "LaurentPoly":
        """Reindex onto a superset of the current variables."""
        vars = tuple(vars)
        if vars == self.vars:
            return self
        pos = [vars.index(v) for v in self.vars]
        n = len(vars)
        terms = {}
        for exp, c in self.terms.items():
            new = [0] * n
            for p, e in zip(pos, exp):
                new[p] = e
            terms[tuple(new)] = c
        return LaurentPoly(vars, terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> GaussRational:
        if not self.terms:
            return G_ZERO
        [(exp, c)] = self.terms.items()
        if any(exp):
            raise ValueError("not a constant polynomial")
        return c

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def __len__(self):
        return len(self.terms)

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.constant(other, self.vars)
        a, b = self._aligned(other)
        terms = dict(a.terms)
        for exp, c in b.terms.items():
            s = terms.get(exp)
            if s is None:
                terms[exp] = c
            else:
                s = s + c
                if s:
                    terms[exp] = s
                else:
                    del terms[exp]
        return LaurentPoly(a.vars, terms)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.constant(other, self.vars)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            c = as_gauss(other)
            if not c:
                return LaurentPoly(self.vars)
            return LaurentPoly(self.vars, {e: k * c for e, k in self.terms.items()})
        a, b = self._aligned(other)
        if len(a.terms) > len(b.terms):
            a, b = b, a
        terms: dict = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                exp = tuple(x + y for x, y in zip(e1, e2))
                c = c1 * c2
                s = terms.get(exp)
                if s is None:
                    terms[exp] = c
                else:
                    s = s + c
                    if s:
                        terms[exp] = s
                    else:
                        del terms[exp]
        return LaurentPoly(a.vars, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise TypeError("exponent must be int")
        if n < 0:
            return self.inverse_monomial() ** (-n)
        result = LaurentPoly.constant(1, self.vars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def inverse_monomial(self) -> "LaurentPoly":
        """Inverse of an invertible monomial."""
        if len(self.terms) != 1:
            raise ValueError("inverse requires a single-term polynomial")
        [(exp, c)] = self.terms.items()
        return LaurentPoly(self.vars, {tuple(-e for e in exp): c.inverse()})

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, GaussRational)):
            other = LaurentPoly.constant(other, self.vars)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        a, b = self._aligned(other)
        return a.terms == b.terms

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    # -- queries and maps ----------------------------------------------

    def degree_in(self, name: str):
        """(min, max) exponent of a variable, or None if absent."""
        if name not in self.vars or not self.terms:
            return None
        i = self.vars.index(name)
        es = [e[i] for e in self.terms]
        return (min(es), max(es))

    def eval(self, assign: Mapping[str, GaussRational]) -> GaussRational:
        """Full evaluation; every variable must be assigned.

        Raises ZeroAssignment if a variable with a negative exponent is 0.
        """
        vals = []
        for v in self.vars:
            if v not in assign:
                raise KeyError(f"no assignment for variable {v!r}")
            vals.append(as_gauss(assign[v]))
        total = G_ZERO
        inv_cache: dict = {}
        for exp, c in self.terms.items():
            term = c
            for i, e in enumerate(exp):
                if e == 0:
                    continue
                x = vals[i]
                if e > 0:
                    for _ in range(e):
                        term = term * x
                else:
                    if not x:
                        raise ZeroAssignment(
                            f"variable {self.vars[i]!r} = 0 hit a negative exponent"
                        )
                    xi = inv_cache.get(i)
                    if xi is None:
                        xi = x.inverse()
                        inv_cache[i] = xi
                    for _ in range(-e):
                        term = term * xi
            total = total + term
        return total

    def subst_scalars(self, assign: Mapping[str, GaussRational]) -> "LaurentPoly":
        """Substitute exact values for a subset of variables."""
        keep = tuple(v for v in self.vars if v not in assign)
        idx_keep = [self.vars.index(v) for v in keep]
        idx_sub = [(i, as_gauss(assign[v])) for i, v in enumerate(self.vars) if v in assign]
        out = LaurentPoly(keep)
        terms: dict = {}
        for exp, c in self.terms.items():
            val = c
            for i, x in idx_sub:
                e = exp[i]
                if e == 0:
                    continue
                if not x:
                    if e < 0:
                        raise ZeroAssignment(
                            f"variable {self.vars[i]!r} = 0 hit a negative exponent"
                        )
                    val = G_ZERO
                    break
                p = x if e > 0 else x.inverse()
                for _ in range(abs(e)):
                    val = val * p
            if not val:
                continue
            key = tuple(exp[i] for i in idx_keep)
            s = terms.get(key)
            if s is None:
                terms[key] = val
            else:
                s = s + val
                if s:
                    terms[key] = s
                else:
                    del terms[key]
        out.terms = terms
        return out

    def map_coeff(self, fn) -> "LaurentPoly":
        terms = {}
        for e, c in self.terms.items():
            v = fn(c)
            if v:
                terms[e] = v
        return LaurentPoly(self.vars, terms)

    def shift(self, name: str, k: int) -> "LaurentPoly":
        """Multiply by name**k."""
        if k == 0:
            return self
        i = self.vars.index(name)
        terms = {}
        for e, c in self.terms.items():
            e2 = list(e)
            e2[i] += k
            terms[tuple(e2)] = c
        return LaurentPoly(self.vars, terms)

    # -- normalization helpers ------------------------------------------

    def lead_key(self) -> tuple:
        """Graded-lex largest exponent vector (deterministic tie-break)."""
        return max(self.terms, key=lambda e: (sum(e), e))

    def content_monomial(self):
        """(coeff, exps) such that self / (coeff * x**exps) is primitive.

        coeff is the leading coefficient under graded-lex; exps is the
        componentwise minimum exponent vector.
        """
        if not self.terms:
            return G_ONE, (0,) * len(self.vars)
        mins = None
        for e in self.terms:
            if mins is None:
                mins = list(e)
            else:
                for i, x in enumerate(e):
                    if x < mins[i]:
                        mins[i] = x
        lead = self.terms[self.lead_key()]
        return lead, tuple(mins)

    def primitive(self) -> "LaurentPoly":
        c, m = self.content_monomial()
        if c == G_ONE and not any(m):
            return self
        ci = c.inverse()
        return LaurentPoly(
            self.vars,
            {tuple(a - b for a, b in zip(e, m)): k * ci for e, k in self.terms.items()},
        )

    def div_exact(self, other: "LaurentPoly"):
        """Quotient self/other if the division is exact, else None."""
        a, b = self._aligned(other)
        if not b.terms:
            raise ZeroDivisionError("division by zero polynomial")
        if not a.terms:
            return LaurentPoly(a.vars)
        if len(b.terms) == 1:
            return a * b.inverse_monomial()
        # the quotient's exponents must live in the per-variable span box
        nv = len(a.vars)
        qlo, qhi = [0] * nv, [0] * nv
        budget = 1
        for i in range(nv):
            amin = amax = None
            for e in a.terms:
                x = e[i]
                if amin is None or x < amin:
                    amin = x
                if amax is None or x > amax:
                    amax = x
            bmin = bmax = None
            for e in b.terms:
                x = e[i]
                if bmin is None or x < bmin:
                    bmin = x
                if bmax is None or x > bmax:
                    bmax = x
            if amax - amin < bmax - bmin:
                return None
            qlo[i], qhi[i] = amin - bmin, amax - bmax
            budget *= qhi[i] - qlo[i] + 1
        lead = b.lead_key()
        lc = b.terms[lead]
        lci = lc.inverse()
        rem = dict(a.terms)
        b_items = list(b.terms.items())
        q_terms: dict = {}
        while rem:
            budget -= 1
            if budget < 0:
                return None
            rk = max(rem, key=lambda e: (sum(e), e))
            qexp = tuple(x - y for x, y in zip(rk, lead))
            if any(x < l or x > h for x, l, h in zip(qexp, qlo, qhi)):
                return None
            qc = rem[rk] * lci
            cur = q_terms.get(qexp)
            cur = qc if cur is None else cur + qc
            if cur:
                q_terms[qexp] = cur
            elif qexp in q_terms:
                del q_terms[qexp]
            for be, bcoef in b_items:
                key = tuple(x + y for x, y in zip(qexp, be))
                s = rem.get(key)
                v = qc * bcoef
                s = -v if s is None else s - v
                if s:
                    rem[key] = s
                else:
                    rem.pop(key, None)
        return LaurentPoly(a.vars, q_terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for exp in sorted(self.terms, key=lambda e: (-sum(e), tuple(-x for x in e))):
            c = self.terms[exp]
            mono = "*".join(
                f"{v}^{e}" if e != 1 else v
                for v, e in zip(self.vars, exp)
                if e
            )
            if mono:
                bits.append(f"({c})*{mono}")
            else:
                bits.append(f"({c})")
        return " + ".join(bits)


def lp_arith(a: LaurentPoly, b: LaurentPoly, kind: str) -> LaurentPoly:
    """Exact add/mul on Laurent polynomials (variable universes unioned)."""
    if kind == "add":
        return a + b
    if kind == "mul":
        return a * b
    raise ValueError(f"unknown kind {kind!r}")


def lp_eval(a: LaurentPoly, assign: Mapping[str, GaussRational]) -> GaussRational:
    return a.eval(assign)


class RatFunc:
    """Fraction num/den of Laurent polynomials.

    Normalization strips monomial and scalar content from the denominator and
    divides through when the division happens to be exact; equality is always
    decided by cross-multiplication, so it is independent of normal forms.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: LaurentPoly | None = None, _normalize=True):
        if den is None:
            den = LaurentPoly.constant(1, num.vars)
        if not den.terms:
            raise ZeroDivisionError("RatFunc with zero denominator")
        num, den = num._aligned(den)
        if _normalize:
            num, den = _rf_normalize(num, den)
        self.num = num
        self.den = den

    @staticmethod
    def from_const(c, vars: tuple = ()) -> "RatFunc":
        return RatFunc(LaurentPoly.constant(c, vars))

    def is_zero(self) -> bool:
        return not self.num.terms

    def __bool__(self):
        return bool(self.num.terms)

    def _den_is_one(self) -> bool:
        d = self.den.terms
        if len(d) != 1:
            return False
        [(e, c)] = d.items()
        return not any(e) and c == G_ONE

    def __add__(self, other):
        other = _as_rf(other, self.num.vars)
        if self._den_is_one() and other._den_is_one():
            out = RatFunc.__new__(RatFunc)
            out.num = self.num + other.num
            out.den = self.den
            return out
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, _normalize=False)

    def __sub__(self, other):
        return self + (-_as_rf(other, self.num.vars))

    def __rsub__(self, other):
        return _as_rf(other, self.num.vars) + (-self)

    def __mul__(self, other):
        other = _as_rf(other, self.num.vars)
        if self._den_is_one() and other._den_is_one():
            out = RatFunc.__new__(RatFunc)
            out.num = self.num * other.num
            out.den = self.den
            return out
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if not self.num.terms:
            raise ZeroDivisionError("inverse of zero RatFunc")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        return self * _as_rf(other, self.num.vars).inverse()

    def __rtruediv__(self, other):
        return _as_rf(other, self.num.vars) * self.inverse()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, GaussRational, LaurentPoly)):
            other = _as_rf(other, self.num.vars)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return (self.num * other.den) == (other.num * self.den)

    def __hash__(self):
        # hash-compatible only for normalized representatives; callers that
        # need exact dedup compare with == instead.
        return hash((self.num, self.den))

    def eval(self, assign) -> GaussRational:
        d = self.den.eval(assign)
        if not d:
            raise ZeroDivisionError("denominator vanishes at assignment")
        return self.num.eval(assign) / d

    def __repr__(self):
        if self.den.is_constant() and self.den.constant_value() == G_ONE:
            return repr(self.num)
        return f"({self.num!r})/({self.den!r})"


def _as_rf(x, vars) -> RatFunc:
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, LaurentPoly):
        return RatFunc(x)
    return RatFunc(LaurentPoly.constant(x, vars))


def gcd_univar(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Monic gcd of two single-variable Laurent polynomials.

    Monomial content is stripped first (units in the Laurent ring), then the
    Euclidean algorithm runs on the polynomial parts with monic remainders.
    """
    vars = a.vars if a.vars else b.vars
    if len(vars) > 1:
        raise ValueError("gcd_univar requires at most one variable")

    def dense(p: LaurentPoly):
        if not p.terms:
            return []
        exps = [e[0] if e else 0 for e in p.terms]
        lo = min(exps)
        hi = max(exps)
        out = [G_ZERO] * (hi - lo + 1)
        for e, c in p.terms.items():
            out[(e[0] if e else 0) - lo] = c
        return out

    fa, fb = dense(a), dense(b)
    if not fa:
        fa, fb = fb, fa
    if not fb:
        if not fa:
            return LaurentPoly.constant(1, vars)
        lead = fa[-1].inverse()
        return LaurentPoly(vars, {(k,): c * lead for k, c in enumerate(fa) if c})

    def norm(f):
        while f and not f[-1]:
            f.pop()
        start = 0
        while start < len(f) and not f[start]:
            start += 1
        return f[start:]

    fa, fb = norm(list(fa)), norm(list(fb))
    while fb:
        if len(fa) < len(fb):
            fa, fb = fb, fa
            continue
        lead = fb[-1].inverse()
        fb = [c * lead for c in fb]
        # remainder of fa by monic fb
        r = list(fa)
        for top in range(len(r) - 1, len(fb) - 2, -1):
            c = r[top]
            if not c:
                continue
            off = top - (len(fb) - 1)
            for k in range(len(fb)):
                r[off + k] = r[off + k] - c * fb[k]
        fa, fb = fb, norm(r)
    lead = fa[-1].inverse()
    return LaurentPoly(vars, {(k,): c * lead for k, c in enumerate(fa) if c})


def _rf_normalize(num: LaurentPoly, den: LaurentPoly):
    if not num.terms:
        return num, LaurentPoly.constant(1, num.vars)
    if len(den.terms) == 1:
        [(e, c)] = den.terms.items()
        if not any(e) and c == G_ONE:
            return num, den
        return num * den.inverse_monomial(), LaurentPoly.constant(1, num.vars)
    q = num.div_exact(den)
    if q is not None:
        return q, LaurentPoly.constant(1, num.vars)
    if len(num.vars) <= 1 and len(num.terms) > 1:
        g = gcd_univar(num, den)
        if len(g.terms) > 1:
            num = num.div_exact(g)
            den = den.div_exact(g)
            if len(den.terms) == 1:
                return num * den.inverse_monomial(), LaurentPoly.constant(1, num.vars)
    dc, dm = den.content_monomial()
    dci = dc.inverse()
    den = LaurentPoly(
        den.vars,
        {tuple(a - b for a, b in zip(e, dm)): k * dci for e, k in den.terms.items()},
    )
    num = LaurentPoly(
        num.vars,
        {tuple(a - b for a, b in zip(e, dm)): k * dci for e, k in num.terms.items()},
    )
    return num, den


def rf_solve(system: list, rhs: list):
    """Solve system * x = rhs exactly over rational functions.

    Returns one solution vector (list of RatFunc) or None when inconsistent.
    Free variables are set to 0.  The solution is re-checked against every
    row before being returned.
    """
    m = len(system)
    if m != len(rhs):
        raise ValueError("row count mismatch between system and rhs")
    n = len(system[0]) if m else 0
    vars = ()
    for row in system:
        if len(row) != n:
            raise ValueError("ragged system")
        for x in row:
            vars = _merge_vars(vars, x.num.vars)
    for x in rhs:
        vars = _merge_vars(vars, x.num.vars)

    rows = [[_as_rf(x, vars) for x in row] + [_as_rf(rhs[i], vars)] for i, row in enumerate(system)]
    pivots = []
    r = 0
    for col in range(n):
        p = None
        for i in range(r, m):
            if rows[i][col]:
                p = i
                break
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = rows[r][col].inverse()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if rows[i][n]:
            return None
    zero = RatFunc.from_const(0, vars)
    sol = [zero] * n
    for i, col in enumerate(pivots):
        sol[col] = rows[i][n]
    for i in range(m):
        acc = RatFunc.from_const(0, vars)
        for j in range(n):
            if system[i][j] and sol[j]:
                acc = acc + _as_rf(system[i][j], vars) * sol[j]
        if acc != _as_rf(rhs[i], vars):
            return None
    return sol
