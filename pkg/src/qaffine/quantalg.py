"""The twisted quantum algebra as a terminating rewriting system.

Words are tuples over a mixed alphabet:
  * an int i stands for the raising generator E_i,
  * ('F', i) for the lowering generator F_i,
  * ('K', vec) / ('L', vec) for the group-like generators, where vec is an
    integer lattice vector (alpha coordinates plus the degree coordinate).

A FreeElement is a formal sum of such words with Laurent-polynomial
coefficients over the bicharacter's variables.  normal_form rewrites any
element onto the triangular basis: an F-word, a group-algebra element
K_a L_b, then an E-word.  The rewrite moves every F past every E (producing
the group-like correction terms), pushes K/L letters into the middle with
monomial twists, and merges group letters; each step reduces the number of
(E, F) inversions or the letter count, so it terminates, and the triangular
basis property makes the result independent of rewrite order.
"""

from __future__ import annotations

from .lattice import Bicharacter, LatticeCase
from .scalars import G_ONE, LaurentPoly, RatFunc


class Inhomogeneous(Exception):
    """Operation requires a multidegree-homogeneous element."""


def letter_degree(case: LatticeCase, letter) -> tuple:
    dim = case.rank + 1
    if isinstance(letter, int):
        v = [0] * dim
        v[letter] = 1
        return tuple(v)
    kind = letter[0]
    if kind == "F":
        v = [0] * dim
        v[letter[1]] = -1
        return tuple(v)
    if kind in ("K", "L"):
        return (0,) * dim
    raise ValueError(f"unknown letter {letter!r}")


def word_degree(case: LatticeCase, word: tuple) -> tuple:
    dim = case.rank + 1
    v = [0] * dim
    for letter in word:
        if isinstance(letter, int):
            v[letter] += 1
        elif letter[0] == "F":
            v[letter[1]] -= 1
    return tuple(v)


def _letter_sort_key(letter):
    if isinstance(letter, int):
        return (0, letter, ())
    kind, payload = letter
    order = {"F": 1, "K": 2, "L": 3}[kind]
    return (order, 0, payload) if kind != "F" else (order, payload, ())


class FreeElement:
    """Formal sum of words with LaurentPoly coefficients."""

    __slots__ = ("bc", "terms")

    def __init__(self, bc: Bicharacter, terms=None):
        self.bc = bc
        self.terms = dict(terms) if terms else {}

    # -- constructors ---------------------------------------------------

    @staticmethod
    def zero(bc) -> "FreeElement":
        return FreeElement(bc)

    @staticmethod
    def one(bc) -> "FreeElement":
        return FreeElement(bc, {(): bc.one()})

    @staticmethod
    def word(bc, word: tuple, coeff=None) -> "FreeElement":
        c = coeff if coeff is not None else bc.one()
        if isinstance(c, int):
            c = LaurentPoly.constant(c, bc.vars)
        return FreeElement(bc, {tuple(word): c} if c else {})

    @staticmethod
    def E(bc, i: int) -> "FreeElement":
        return FreeElement.word(bc, (i,))

    @staticmethod
    def F(bc, i: int) -> "FreeElement":
        return FreeElement.word(bc, (("F", i),))

    @staticmethod
    def K(bc, vec: tuple) -> "FreeElement":
        if not any(vec):
            return FreeElement.one(bc)
        return FreeElement.word(bc, (("K", tuple(vec)),))

    @staticmethod
    def L(bc, vec: tuple) -> "FreeElement":
        if not any(vec):
            return FreeElement.one(bc)
        return FreeElement.word(bc, (("L", tuple(vec)),))

    # -- ring structure ---------------------------------------------------

    def _iadd_term(self, word, coeff):
        s = self.terms.get(word)
        if s is None:
            if coeff:
                self.terms[word] = coeff
        else:
            s = s + coeff
            if s:
                self.terms[word] = s
            else:
                del self.terms[word]

    def __add__(self, other: "FreeElement") -> "FreeElement":
        out = FreeElement(self.bc, self.terms)
        for w, c in other.terms.items():
            out._iadd_term(w, c)
        return out

    def __neg__(self):
        return FreeElement(self.bc, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, LaurentPoly)):
            return self.scale(other)
        out = FreeElement(self.bc)
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                out._iadd_term(w1 + w2, c1 * c2)
        return out

    __rmul__ = __mul__

    def scale(self, c) -> "FreeElement":
        if isinstance(c, int):
            c = LaurentPoly.constant(c, self.bc.vars)
        if not c:
            return FreeElement(self.bc)
        return FreeElement(self.bc, {w: c * v for w, v in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, FreeElement) and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    # -- degrees ----------------------------------------------------------

    def degree(self) -> tuple:
        """Common multidegree; raises Inhomogeneous when mixed."""
        case = self.bc.case
        deg = None
        for w in self.terms:
            d = word_degree(case, w)
            if deg is None:
                deg = d
            elif deg != d:
                raise Inhomogeneous(f"mixed multidegrees {deg} and {d}")
        return deg if deg is not None else (0,) * (case.rank + 1)

    def homogeneous_parts(self) -> dict:
        case = self.bc.case
        parts: dict = {}
        for w, c in self.terms.items():
            parts.setdefault(word_degree(case, w), FreeElement(self.bc))._iadd_term(w, c)
        return parts

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for w in sorted(self.terms, key=lambda t: tuple(map(_letter_sort_key, t))):
            c = self.terms[w]
            name = "*".join(
                (f"E{letter}" if isinstance(letter, int) else f"{letter[0]}{letter[1]}")
                for letter in w
            ) or "1"
            bits.append(f"({c})*{name}")
        return " + ".join(bits)


def q_bracket(x: FreeElement, y: FreeElement) -> FreeElement:
    """Twisted commutator x*y - chi(deg y, deg x)^{-1} y*x."""
    lam, mu = x.degree(), y.degree()
    c, e = x.bc.chi_inv_mono(mu, lam)
    coeff = LaurentPoly.monomial(x.bc.vars, e, c)
    return x * y - (y * x).scale(coeff)


def q_bracket_op(x: FreeElement, y: FreeElement) -> FreeElement:
    """The twisted commutator of the opposite bicharacter (F-side mirror)."""
    lam, mu = x.degree(), y.degree()
    c, e = x.bc.chi_inv_mono(lam, mu)
    coeff = LaurentPoly.monomial(x.bc.vars, e, c)
    return x * y - (y * x).scale(coeff)


class NormalElement:
    """Sum of triples (F-word, K vec, L vec, E-word) with coefficients."""

    __slots__ = ("bc", "terms")

    def __init__(self, bc, terms=None):
        self.bc = bc
        self.terms = dict(terms) if terms else {}

    def _iadd(self, key, coeff):
        s = self.terms.get(key)
        if s is None:
            if coeff:
                self.terms[key] = coeff
        else:
            s = s + coeff
            if s:
                self.terms[key] = s
            else:
                del self.terms[key]

    def __eq__(self, other):
        return isinstance(other, NormalElement) and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def __sub__(self, other):
        out = NormalElement(self.bc, self.terms)
        for k, c in other.terms.items():
            out._iadd(k, -c)
        return out

    def to_free(self) -> FreeElement:
        out = FreeElement(self.bc)
        for (fw, kv, lv, ew), c in self.terms.items():
            word = tuple(("F", i) for i in fw)
            if any(kv):
                word += (("K", kv),)
            if any(lv):
                word += (("L", lv),)
            word += ew
            out._iadd_term(word, c)
        return out

    def triangular_split(self):
        """Group terms by (F-word, K vec, L vec) -> E-side FreeElement."""
        out: dict = {}
        for (fw, kv, lv, ew), c in self.terms.items():
            out.setdefault((fw, kv, lv), FreeElement(self.bc))._iadd_term(ew, c)
        return out

    def __repr__(self):
        return repr(self.to_free())


def normal_form(x: FreeElement, strategy: str = "left") -> NormalElement:
    """Rewrite onto the triangular basis F-word * K_a L_b * E-word.

    strategy='left' folds letters left to right; strategy='pairwise' reduces
    adjacent inversions repeatedly.  Both strategies agree (confluence).
    """
    bc = x.bc
    case = bc.case
    dim = case.rank + 1
    zero_vec = (0,) * dim

    def chi_lp(a, b):
        c, e = bc.chi_mono(a, b)
        return LaurentPoly.monomial(bc.vars, e, c)

    def alpha_vec(i):
        v = [0] * dim
        v[i] = 1
        return tuple(v)

    out = NormalElement(bc)
    if strategy == "left":
        for word, coeff in x.terms.items():
            state = {((), zero_vec, zero_vec, ()): coeff}
            for letter in word:
                new: dict = {}

                def add(key, c):
                    s = new.get(key)
                    if s is None:
                        if c:
                            new[key] = c
                    else:
                        s = s + c
                        if s:
                            new[key] = s
                        else:
                            del new[key]

                for (fw, kv, lv, ew), c in state.items():
                    if isinstance(letter, int):
                        add((fw, kv, lv, ew + (letter,)), c)
                        continue
                    kind, payload = letter
                    edeg = word_degree(case, ew)
                    if kind == "K":
                        cc = chi_lp(payload, edeg).inverse_monomial()
                        add((fw, tuple(a + b for a, b in zip(kv, payload)), lv, ew), c * cc)
                    elif kind == "L":
                        cc = chi_lp(edeg, payload)
                        add((fw, kv, tuple(a + b for a, b in zip(lv, payload)), ew), c * cc)
                    else:  # F_i moving left through E-word, K, L
                        i = payload
                        ai = alpha_vec(i)
                        through = chi_lp(kv, ai).inverse_monomial() * chi_lp(ai, lv)
                        add((fw + (i,), kv, lv, ew), c * through)
                        pre = zero_vec
                        for m, u in enumerate(ew):
                            if u == i:
                                ck = chi_lp(ai, pre).inverse_monomial()
                                cl = chi_lp(pre, ai)
                                rest = ew[:m] + ew[m + 1 :]
                                add(
                                    (fw, tuple(a + b for a, b in zip(kv, ai)), lv, rest),
                                    -(c * ck),
                                )
                                add(
                                    (fw, kv, tuple(a + b for a, b in zip(lv, ai)), rest),
                                    c * cl,
                                )
                            pre = tuple(a + b for a, b in zip(pre, letter_degree(case, u)))
                state = new
            for key, c in state.items():
                out._iadd(key, c)
        return out

    if strategy != "pairwise":
        raise ValueError(f"unknown strategy {strategy!r}")

    # pairwise: repeatedly rewrite one reducible adjacent pair per word
    work = dict(x.terms)
    result = NormalElement(bc)

    def classify(letter):
        if isinstance(letter, int):
            return 3  # E
        return {"F": 0, "K": 1, "L": 2}[letter[0]]

    guard = 0
    while work:
        guard += 1
        if guard > 10 ** 7:
            raise RuntimeError("pairwise rewriting failed to terminate")
        word, coeff = work.popitem()
        pos = None
        for m in range(len(word) - 1):
            a, b = classify(word[m]), classify(word[m + 1])
            if a > b or (a == b and a in (1, 2)):
                pos = m
                break
        if pos is None:
            fw = tuple(l[1] for l in word if not isinstance(l, int) and l[0] == "F")
            kv = zero_vec
            lv = zero_vec
            for l in word:
                if not isinstance(l, int) and l[0] == "K":
                    kv = tuple(a + b for a, b in zip(kv, l[1]))
                if not isinstance(l, int) and l[0] == "L":
                    lv = tuple(a + b for a, b in zip(lv, l[1]))
            ew = tuple(l for l in word if isinstance(l, int))
            result._iadd((fw, kv, lv, ew), coeff)
            continue
        a, b = word[pos], word[pos + 1]
        head, tail = word[:pos], word[pos + 2 :]

        def emit(mid_letters, c):
            w2 = head + tuple(mid_letters) + tail
            s = work.get(w2)
            if s is None:
                if c:
                    work[w2] = c
            else:
                s = s + c
                if s:
                    work[w2] = s
                else:
                    del work[w2]

        ca, cb = classify(a), classify(b)
        if ca == 3 and cb == 3:
            raise AssertionError("E,E pair is never an inversion")
        if ca == 3 and cb == 0:  # E_i F_j
            i, j = a, b[1]
            emit((b, a), coeff)
            if i == j:
                ai = alpha_vec(i)
                emit((("K", ai),), -coeff)
                emit((("L", ai),), coeff)
        elif ca == 3 and cb == 1:  # E_i K_a -> chi(a, alpha_i)^{-1} K_a E_i
            emit((b, a), coeff * chi_lp(b[1], alpha_vec(a)).inverse_monomial())
        elif ca == 3 and cb == 2:  # E_i L_a -> chi(alpha_i, a) L_a E_i
            emit((b, a), coeff * chi_lp(alpha_vec(a), b[1]))
        elif ca == 1 and cb == 0:  # K_a F_i -> chi(a, alpha_i)^{-1} F_i K_a
            emit((b, a), coeff * chi_lp(a[1], alpha_vec(b[1])).inverse_monomial())
        elif ca == 2 and cb == 0:  # L_a F_i -> chi(alpha_i, a) F_i L_a
            emit((b, a), coeff * chi_lp(alpha_vec(b[1]), a[1]))
        elif ca == 2 and cb == 1:  # L K -> K L
            emit((b, a), coeff)
        elif ca == 1 and cb == 1:  # merge K
            emit((("K", tuple(x + y for x, y in zip(a[1], b[1]))),) if any(
                x + y for x, y in zip(a[1], b[1])
            ) else (), coeff)
        elif ca == 2 and cb == 2:  # merge L
            emit((("L", tuple(x + y for x, y in zip(a[1], b[1]))),) if any(
                x + y for x, y in zip(a[1], b[1])
            ) else (), coeff)
        else:
            raise AssertionError(f"unhandled pair {a!r}, {b!r}")
    return result


def ef_commutator_split(bc: Bicharacter, x: FreeElement, i: int):
    """K- and L-side components of x F_i - F_i x for x in the E-subalgebra.

    Returns (P, Q) with  x F_i - F_i x = K_{alpha_i} P + L_{alpha_i} Q  in
    normal form; P and Q live one alpha_i below x.
    """
    case = bc.case
    dim = case.rank + 1
    ai = [0] * dim
    ai[i] = 1
    ai = tuple(ai)
    P = FreeElement(bc)
    Q = FreeElement(bc)
    for word, coeff in x.terms.items():
        pre = [0] * dim
        for m, u in enumerate(word):
            if u == i:
                c_k, e_k = bc.chi_inv_mono(ai, tuple(pre))
                c_l, e_l = bc.chi_mono(tuple(pre), ai)
                rest = word[:m] + word[m + 1 :]
                P._iadd_term(rest, coeff * LaurentPoly.monomial(bc.vars, e_k, -c_k))
                Q._iadd_term(rest, coeff * LaurentPoly.monomial(bc.vars, e_l, c_l))
            pre[u] += 1
    return P, Q


class RelatorSet:
    """Homogeneous E-side relators with recorded multidegrees."""

    def __init__(self, bc: Bicharacter, relators):
        self.bc = bc
        self.relators = list(relators)  # (name, FreeElement)

    def __len__(self):
        return len(self.relators)

    def elements(self):
        return [r for _n, r in self.relators]

    def names(self):
        return [n for n, _r in self.relators]

    def degrees(self):
        return [r.degree() for _n, r in self.relators]

    def mirrored(self):
        """F-side images under the swap E_i -> F_i (opposite bicharacter)."""
        out = []
        for name, r in self.relators:
            out.append((name.replace("e[", "f["), _mirror_element(r)))
        return out


def _mirror_element(x: FreeElement) -> FreeElement:
    out = FreeElement(x.bc)
    for w, c in x.terms.items():
        out._iadd_term(tuple(("F", i) for i in w), c)
    return out


def serre_relators(tau: int, n: int, bc: Bicharacter) -> RelatorSet:
    """The four defining relator families evaluated on the Gram matrix."""
    case = bc.case
    gram = case.gram()
    rank = case.rank
    E = lambda i: FreeElement.E(bc, i)
    rels = []
    for i in range(rank):
        if gram[i][i] == 0:
            rels.append((f"iso-square-e[{i}]", q_bracket(E(i), E(i))))
    for i in range(rank):
        for j in range(i + 1, rank):
            if gram[i][j] == 0:
                rels.append((f"commute-e[{i},{j}]", q_bracket(E(i), E(j))))
    for i in range(rank):
        for j in range(rank):
            if i == j or gram[i][i] == 0:
                continue
            if -2 * gram[i][j] == gram[i][i]:
                rels.append(
                    (f"serre3-e[{i},{j}]", q_bracket(E(i), q_bracket(E(i), E(j))))
                )
            if -gram[i][j] == gram[i][i]:
                rels.append(
                    (
                        f"serre4-e[{i},{j}]",
                        q_bracket(E(i), q_bracket(E(i), q_bracket(E(i), E(j)))),
                    )
                )
    for i in range(rank):
        if gram[i][i] != 0:
            continue
        for j in range(rank):
            for k in range(j + 1, rank):
                if i in (j, k):
                    continue
                if gram[j][k] == 0 and gram[i][j] != 0 and -gram[i][j] == gram[i][k]:
                    rels.append(
                        (
                            f"iso-braid-e[{i},{j},{k}]",
                            q_bracket(q_bracket(E(i), E(j)), q_bracket(E(i), E(k))),
                        )
                    )
    # monic normalization on the graded-lex leading word
    out = []
    for name, r in rels:
        if not r.terms:
            continue
        lead = max(r.terms)
        lc = r.terms[lead]
        out.append((name, r.scale(lc.inverse_monomial())))
    return RelatorSet(bc, out)


# -- Hopf structure maps -------------------------------------------------


def coproduct(x: FreeElement):
    """Delta(x) as a list of (left, right) FreeElement pairs."""
    bc = x.bc
    case = bc.case
    dim = case.rank + 1

    def alpha_vec(i):
        v = [0] * dim
        v[i] = 1
        return tuple(v)

    pairs: dict = {}
    for word, coeff in x.terms.items():
        acc = {((), ()): coeff}
        for letter in word:
            if isinstance(letter, int):
                legs = [((letter,), ()), ((("K", alpha_vec(letter)),), (letter,))]
            elif letter[0] == "F":
                i = letter[1]
                legs = [((letter,), (("L", alpha_vec(i)),)), ((), (letter,))]
            elif letter[0] == "K":
                legs = [((letter,), (letter,))]
            else:
                legs = [((letter,), (letter,))]
            new: dict = {}
            for (lw, rw), c in acc.items():
                for la, ra in legs:
                    key = (lw + la, rw + ra)
                    s = new.get(key)
                    new[key] = c if s is None else s + c
                    if not new[key]:
                        del new[key]
            acc = new
        for key, c in acc.items():
            s = pairs.get(key)
            pairs[key] = c if s is None else s + c
            if not pairs[key]:
                del pairs[key]
    return [
        (FreeElement.word(bc, lw, c), FreeElement.word(bc, rw))
        for (lw, rw), c in sorted(
            pairs.items(),
            key=lambda kv: (
                tuple(map(_letter_sort_key, kv[0][0])),
                tuple(map(_letter_sort_key, kv[0][1])),
            ),
        )
    ]


def antipode(x: FreeElement) -> FreeElement:
    bc = x.bc
    case = bc.case
    dim = case.rank + 1

    def alpha_vec(i):
        v = [0] * dim
        v[i] = 1
        return tuple(v)

    def s_letter(letter) -> FreeElement:
        if isinstance(letter, int):
            ai = alpha_vec(letter)
            return FreeElement.word(
                bc, (("K", tuple(-a for a in ai)), letter), -bc.one()
            )
        kind, payload = letter
        if kind == "F":
            ai = alpha_vec(payload)
            return FreeElement.word(
                bc, (letter, ("L", tuple(-a for a in ai))), -bc.one()
            )
        neg = tuple(-a for a in payload)
        if not any(neg):
            return FreeElement.one(bc)
        return FreeElement.word(bc, ((kind, neg),))

    out = FreeElement(bc)
    for word, coeff in x.terms.items():
        acc = FreeElement.word(bc, (), coeff)
        for letter in reversed(word):
            acc = acc * s_letter(letter)
        out = out + acc
    return out


def counit(x: FreeElement) -> LaurentPoly:
    total = LaurentPoly.constant(0, x.bc.vars)
    for word, coeff in x.terms.items():
        if all(not isinstance(l, int) and l[0] in ("K", "L") for l in word):
            total = total + coeff
    return total


# -- the degreewise radical ----------------------------------------------


class RadicalCache:
    """Per-bicharacter memo of radical components and their echelons."""

    def __init__(self, bc: Bicharacter):
        self.bc = bc
        self.components: dict = {}


def words_of_degree(rank: int, deg: tuple):
    """All arrangements of the multiset given by alpha coordinates."""
    counts = list(deg[:rank])
    total = sum(counts)
    if total == 0:
        yield ()
        return
    out: list = []

    def rec(prefix):
        if len(prefix) == total:
            out.append(tuple(prefix))
            return
        for i in range(rank):
            if counts[i]:
                counts[i] -= 1
                prefix.append(i)
                rec(prefix)
                prefix.pop()
                counts[i] += 1

    rec([])
    yield from out


def radical_component(tau: int, n: int, bc: Bicharacter, lam: tuple, cache=None):
    """Exact basis of the radical's component at a positive multidegree.

    The defining condition is recursive: x lies in the component iff for
    every i the K- and L-side pieces of x F_i - F_i x lie in the component
    one alpha_i lower.  Components below are computed (and cached) first.
    """
    case = bc.case
    if cache is None:
        cache = RadicalCache(bc)
    lam = tuple(lam)
    if lam in cache.components:
        return cache.components[lam][0]
    rank = case.rank
    if any(c < 0 for c in lam[:rank]) or lam[rank] != 0 or sum(lam[:rank]) == 0:
        cache.components[lam] = ([], None)
        return []
    words = list(words_of_degree(rank, lam))
    lowers = {}
    for i in range(rank):
        if lam[i] > 0:
            mu = list(lam)
            mu[i] -= 1
            mu = tuple(mu)
            radical_component(tau, n, bc, mu, cache)
            lowers[i] = cache.components[mu][1]

    from .linalg import Echelon

    columns = []
    for w in words:
        x = FreeElement.word(bc, w)
        vec: dict = {}
        for i, ech in lowers.items():
            P, Q = ef_commutator_split(bc, x, i)
            for tag, elem in (("K", P), ("L", Q)):
                res = {ww: RatFunc(c) for ww, c in elem.terms.items()}
                if ech is not None:
                    res = ech.reduce(res)
                for ww, c in res.items():
                    if c:
                        vec[(i, tag, ww)] = c
        columns.append(vec)
    kernel = nullspace_cols(columns, one=RatFunc.from_const(1, bc.vars))
    basis = []
    for combo in kernel:
        elem = FreeElement(bc)
        # clear denominators: multiply by the product of denominators
        mult = None
        for c in combo.values():
            mult = c.den if mult is None else mult * c.den
        for j, c in combo.items():
            scaled = c.num * mult.div_exact(c.den)
            elem._iadd_term(words[j], scaled)
        basis.append(elem)
    ech = Echelon()
    for b in basis:
        ech.insert({w: RatFunc(c) for w, c in b.terms.items()})
    cache.components[lam] = (basis, ech)
    return basis


def nullspace_cols(columns, one=None):
    from .linalg import nullspace

    return nullspace(columns, one=one)
