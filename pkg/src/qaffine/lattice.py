"""Weight lattice, bilinear form, simple roots, and the twisting bicharacter.

A lattice vector is an integer tuple of length rank+1: coefficients over the
simple roots alpha_0..alpha_Nhat followed by the coefficient of the degree
element (written `d` below).  The distinguished isotropic vector delta is the
positive imaginary generator; it expands over the simple roots with the
coefficient vector `delta_alpha`.

The epsilon-basis expansions of alpha_0 and alpha_Nhat are the ones certified
by the realization (see `derive_gram`); the printed variants they replace are
kept in PRINTED_FORMS for the discrepancy report.
"""

from __future__ import annotations

from fractions import Fraction

from . import liesuper
from .scalars import G_MINUS_ONE, G_ONE, GaussRational, LaurentPoly, as_gauss
from .liesuper import BadRank, ParityMap


class NotProportional(Exception):
    """Realization bracket failed to certify a Gram entry."""


def derive_gram(tau: int, n: int):
    """Gram matrix certified by the matrix realization."""
    try:
        return liesuper.derive_gram(tau, n)
    except liesuper.NotProportional as exc:  # re-badge under this module
        raise NotProportional(str(exc)) from exc


class LatticeCase:
    """Simple-root data for one (tau, n) pair."""

    def __init__(self, tau: int, n: int):
        self.pm = ParityMap(tau, n)
        self.tau, self.n = tau, n
        self.N = self.pm.N
        self.Nhat = self.pm.Nhat
        self.rank = self.Nhat + 1
        self.s = self.pm.s
        self.dbar = tuple(self.pm.dbar(i) for i in range(1, self.N + 1))
        self._alpha_eps = self._build_alpha_eps()
        self._gram = None

    def _build_alpha_eps(self):
        """eps-expansion of each simple root: (eps coeffs, delta coeff)."""
        N, tau = self.N, self.tau
        rows = []
        if tau == 1:
            a0 = [0] * N
            a0[0], a0[N - 1] = -1, 1
            rows.append((tuple(a0), 1))
        else:
            a0 = [0] * N
            a0[0] = -2 if tau == 2 else -1
            rows.append((tuple(a0), 1))
        for i in range(1, N):
            v = [0] * N
            v[i - 1], v[i] = 1, -1
            rows.append((tuple(v), 0))
        if tau == 2:
            aN = [0] * N
            aN[N - 1] = 2
            rows.append((tuple(aN), 0))
        elif tau == 4:
            aN = [0] * N
            aN[N - 1] = 1
            rows.append((tuple(aN), 0))
        return rows

    # -- vectors --------------------------------------------------------

    def zero(self) -> tuple:
        return (0,) * (self.rank + 1)

    def alpha(self, i: int) -> tuple:
        v = [0] * (self.rank + 1)
        v[i] = 1
        return tuple(v)

    def d_vec(self) -> tuple:
        v = [0] * (self.rank + 1)
        v[-1] = 1
        return tuple(v)

    def delta_alpha(self) -> tuple:
        """delta over the alpha basis (zero d-coefficient)."""
        if self.tau == 2:
            coeffs = (1,) + (2,) * (self.N - 1) + (1,)
        else:
            coeffs = (1,) * self.rank
        return coeffs + (0,)

    def delta_alpha_solved(self) -> tuple | None:
        """Independent integer solve of delta = sum c_i alpha_i."""
        # unknowns c_0..c_Nhat; equations over eps coords and the delta coord
        rows = []
        rhs = []
        for k in range(self.N):
            rows.append([Fraction(self._alpha_eps[i][0][k]) for i in range(self.rank)])
            rhs.append(Fraction(0))
        rows.append([Fraction(self._alpha_eps[i][1]) for i in range(self.rank)])
        rhs.append(Fraction(1))
        # plain fraction elimination
        m, ncol = len(rows), self.rank
        aug = [row + [rhs[i]] for i, row in enumerate(rows)]
        piv = []
        r = 0
        for c in range(ncol):
            p = next((i for i in range(r, m) if aug[i][c]), None)
            if p is None:
                continue
            aug[r], aug[p] = aug[p], aug[r]
            inv = 1 / aug[r][c]
            aug[r] = [x * inv for x in aug[r]]
            for i in range(m):
                if i != r and aug[i][c]:
                    f = aug[i][c]
                    aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
            piv.append(c)
            r += 1
        for i in range(r, m):
            if aug[i][ncol]:
                return None
        sol = [Fraction(0)] * ncol
        for i, c in enumerate(piv):
            sol[c] = aug[i][ncol]
        if any(x.denominator != 1 for x in sol):
            return None
        return tuple(int(x) for x in sol) + (0,)

    def to_eps(self, vec: tuple):
        """(eps coeffs tuple, delta coeff, d coeff) of a lattice vector."""
        eps = [0] * self.N
        delta = 0
        for i in range(self.rank):
            c = vec[i]
            if not c:
                continue
            row, dc = self._alpha_eps[i]
            for k in range(self.N):
                eps[k] += c * row[k]
            delta += c * dc
        return tuple(eps), delta, vec[-1]

    def form(self, x: tuple, y: tuple) -> int:
        """Symmetric bilinear form via eps expansions.

        (eps_i,eps_j) = delta_ij dbar_i, (delta,delta)=0, (d,delta)=1,
        (d,d)=0, (eps_i,delta)=(eps_i,d)=0.
        """
        xe, xdel, xd = self.to_eps(x)
        ye, ydel, yd = self.to_eps(y)
        total = sum(a * b * s for a, b, s in zip(xe, ye, self.dbar))
        total += xd * ydel + xdel * yd
        return total

    def gram(self):
        if self._gram is None:
            self._gram = [
                [self.form(self.alpha(i), self.alpha(j)) for j in range(self.rank)]
                for i in range(self.rank)
            ]
        return self._gram

    def height(self, vec: tuple) -> int:
        return sum(vec[: self.rank])

    def add(self, x: tuple, y: tuple) -> tuple:
        return tuple(a + b for a, b in zip(x, y))

    def sub(self, x: tuple, y: tuple) -> tuple:
        return tuple(a - b for a, b in zip(x, y))

    def neg(self, x: tuple) -> tuple:
        return tuple(-a for a in x)


class Weight:
    """A lattice vector with its epsilon-side expansion attached."""

    __slots__ = ("case", "vec")

    def __init__(self, case: LatticeCase, vec: tuple):
        if len(vec) != case.rank + 1:
            raise ValueError("weight vector has wrong arity")
        self.case = case
        self.vec = tuple(vec)

    @property
    def alpha_coeffs(self) -> tuple:
        return self.vec[:-1]

    @property
    def d_coeff(self) -> int:
        return self.vec[-1]

    def eps(self):
        return self.case.to_eps(self.vec)

    def __add__(self, other):
        return Weight(self.case, self.case.add(self.vec, other.vec))

    def __sub__(self, other):
        return Weight(self.case, self.case.sub(self.vec, other.vec))

    def __eq__(self, other):
        return isinstance(other, Weight) and self.vec == other.vec

    def __hash__(self):
        return hash(self.vec)

    def __repr__(self):
        return f"Weight{self.vec}"


# printed eps-expansions that the derived Gram overrides, for the report
PRINTED_FORMS = {
    "alpha0": {1: "delta - eps_1 + eps_{N-1}", 2: "delta - 2 eps_1", 4: "delta - 2 eps_1"},
    "alphaN": {2: "eps_N", 4: "2 eps_N"},
}
ADOPTED_FORMS = {
    "alpha0": {1: "delta - eps_1 + eps_N", 2: "delta - 2 eps_1", 4: "delta - eps_1"},
    "alphaN": {2: "2 eps_N", 4: "eps_N"},
}


def simple_roots(tau: int, n: int):
    """The simple roots alpha_0..alpha_Nhat as Weight objects."""
    case = LatticeCase(tau, n)
    return [Weight(case, case.alpha(i)) for i in range(case.rank)]


def form(x: Weight, y: Weight) -> int:
    if x.case.tau != y.case.tau or x.case.n != y.case.n:
        raise ValueError("weights from different lattices")
    return x.case.form(x.vec, y.vec)


class Bicharacter:
    """Biadditive twisting map with values in invertible Laurent monomials.

    table[(a, b)] with a, b in {0..Nhat, 'd'} holds chi on basis pairs; the
    extension to the lattice is by biadditivity.  Construction guarantees the
    defining constraints; the delta-triviality condition is guaranteed for
    the `hat`, `solved` and `explicit` modes (all built through the solver).
    """

    def __init__(self, case: LatticeCase, mode: str = "hat", assignments=None):
        self.case = case
        self.mode = mode
        if mode == "solved":
            ps = [
                f"p{i}_{j}"
                for i in range(1, case.rank)
                for j in range(i + 1, case.rank)
            ]
            self.vars = ("q",) + tuple(ps)
        elif mode in ("hat", "explicit"):
            self.vars = ("q",)
        else:
            raise ValueError(f"unknown bicharacter mode {mode!r}")
        self.assignments = dict(assignments or {})
        self.table: dict = {}
        self._mono: dict = {}
        self._build()

    # -- construction ----------------------------------------------------

    def _q(self, k: int) -> LaurentPoly:
        exp = [0] * len(self.vars)
        exp[0] = k
        return LaurentPoly.monomial(self.vars, tuple(exp), 1)

    def _p_sym(self, i: int, j: int) -> LaurentPoly:
        name = f"p{i}_{j}"
        exp = [0] * len(self.vars)
        exp[self.vars.index(name)] = 1
        return LaurentPoly.monomial(self.vars, tuple(exp), 1)

    def _middle_value(self, i: int, j: int, gram) -> LaurentPoly:
        """chi(alpha_i, alpha_j) for 1 <= i < j <= Nhat per mode."""
        if self.mode == "solved":
            return self._p_sym(i, j)
        if self.mode == "hat":
            return self._q(gram[i][j])
        val = self.assignments.get((i, j))
        if val is None:
            return self._q(gram[i][j])
        c = as_gauss(val)
        if not c:
            raise ValueError(f"explicit p[{i},{j}] must be nonzero")
        return LaurentPoly.constant(c, self.vars)

    def _build(self):
        case = self.case
        rank = case.rank
        gram = case.gram()
        t: dict = {}
        for i in range(rank):
            gii = gram[i][i]
            t[(i, i)] = (
                LaurentPoly.constant(-1, self.vars) if gii == 0 else self._q(gii)
            )
        for i in range(1, rank):
            for j in range(i + 1, rank):
                v = self._middle_value(i, j, gram)
                t[(i, j)] = v
                t[(j, i)] = self._q(2 * gram[i][j]) * v.inverse_monomial()
        # affine row: chi(alpha_0, alpha_i) forced by delta-triviality
        delta = case.delta_alpha()
        for i in range(1, rank):
            m = self._q(2 * gram[0][i])
            for j in range(1, rank):
                c = delta[j]
                if not c:
                    continue
                base = t[(i, j)]
                m = m * (base if c > 0 else base.inverse_monomial()) ** abs(c)
            t[(0, i)] = m
            t[(i, 0)] = self._q(2 * gram[0][i]) * m.inverse_monomial()
        for i in range(rank):
            t[(i, "d")] = self._q(1 if i == 0 else 0)
            t[("d", i)] = self._q(1 if i == 0 else 0)
        t[("d", "d")] = self._q(0)
        self.table = t
        one = G_ONE
        for key, val in t.items():
            [(exp, c)] = val.terms.items()
            self._mono[key] = (c, exp)
        self._one_exp = (0,) * len(self.vars)

    # -- evaluation --------------------------------------------------------

    def chi_mono(self, x: tuple, y: tuple):
        """chi(x, y) as (GaussRational unit, exponent tuple)."""
        rank = self.case.rank
        coeff = G_ONE
        exp = [0] * len(self.vars)
        keys = list(range(rank)) + ["d"]
        for a_idx, a in enumerate(keys):
            xa = x[a_idx]
            if not xa:
                continue
            for b_idx, b in enumerate(keys):
                yb = y[b_idx]
                if not yb:
                    continue
                c, e = self._mono[(a, b)]
                k = xa * yb
                if c == G_MINUS_ONE:
                    if k % 2:
                        coeff = -coeff
                elif c != G_ONE:
                    base = c if k > 0 else c.inverse()
                    for _ in range(abs(k)):
                        coeff = coeff * base
                for t_i, t_e in enumerate(e):
                    if t_e:
                        exp[t_i] += t_e * k
        return coeff, tuple(exp)

    def chi(self, x: tuple, y: tuple) -> LaurentPoly:
        c, e = self.chi_mono(x, y)
        return LaurentPoly.monomial(self.vars, e, c)

    def chi_inv_mono(self, x: tuple, y: tuple):
        c, e = self.chi_mono(x, y)
        return c, tuple(-k for k in e)

    def one(self) -> LaurentPoly:
        return LaurentPoly.constant(1, self.vars)

    def specialize_points(self, rng, count: int):
        """Deterministic nonzero rational assignments for the variables."""
        points = []
        for _ in range(count):
            assign = {}
            for v in self.vars:
                num = 0
                while num == 0:
                    num = rng.randint(-10 ** 6, 10 ** 6)
                den = rng.randint(1, 10 ** 6)
                assign[v] = GaussRational(Fraction(num, den))
            points.append(assign)
        return points


def chi(bc: Bicharacter, x, y) -> LaurentPoly:
    """Module-level wrapper accepting Weight or raw vectors."""
    xv = x.vec if isinstance(x, Weight) else tuple(x)
    yv = y.vec if isinstance(y, Weight) else tuple(y)
    return bc.chi(xv, yv)


def validate_ass(bc: Bicharacter, tau: int | None = None, n: int | None = None) -> bool:
    """Does chi(alpha_i, s'*delta) = 1 hold for every i?

    s' is 1 for tau in {1,2} and 2 for tau=4.
    """
    case = bc.case
    sprime = 2 if case.tau == 4 else 1
    delta = case.delta_alpha()
    target = tuple(sprime * c for c in delta)
    one = bc.one()
    for i in range(case.rank):
        if bc.chi(case.alpha(i), target) != one:
            return False
    return True


def solve_ass(tau: int, n: int) -> Bicharacter:
    """Bicharacter with maximal free parameters satisfying delta-triviality."""
    return Bicharacter(LatticeCase(tau, n), mode="solved")


def hat_bicharacter(tau: int, n: int) -> Bicharacter:
    """Single-parameter mode: middle values q^{(alpha_i,alpha_j)}.

    The affine-row entries come from the delta-triviality solver; at
    isotropic nodes of odd delta-coefficient they differ from the naive
    q-power by a sign (the naive table violates the condition).
    """
    return Bicharacter(LatticeCase(tau, n), mode="hat")


def explicit_bicharacter(tau: int, n: int, assignments) -> Bicharacter:
    """Free middle parameters pinned to explicit nonzero scalars."""
    bc = Bicharacter(LatticeCase(tau, n), mode="explicit", assignments=assignments)
    if not validate_ass(bc):
        raise ValueError("explicit assignments violate the delta-triviality condition")
    return bc
