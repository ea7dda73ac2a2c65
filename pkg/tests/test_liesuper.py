import random

import pytest

from qaffine.liesuper import (
    BadRank,
    LoopElement,
    ParityMap,
    TEST_CASES,
    check_relations,
    check_z_ideal,
    chevalley,
    derive_gram,
    gl_bracket,
    phi,
    psi,
    root_multiplicities,
    supertrace,
    twisted_membership,
    z_classical,
)
from qaffine.scalars import GaussRational


def test_parity_counts_balance():
    for tau, n in TEST_CASES:
        pm = ParityMap(tau, n)
        ones = sum(pm.pbar(i) for i in range(1, pm.Nprime + 1))
        assert ones == pm.Nprime // 2


def test_sign_map_defining_property():
    for tau, n in [(2, 2), (2, 3)]:
        pm = ParityMap(tau, n)
        for i in range(1, pm.Nprime + 1):
            assert pm.g(i) * pm.g(pm.gamma(i)) == (-1) ** pm.pbar(i)
    for tau, n in [(4, 1), (4, 2)]:
        pm = ParityMap(tau, n)
        for i in range(1, pm.Nprime):
            lhs = pm.gprime(i) * pm.gprime(pm.gamma1(i))
            assert lhs == (-1) ** pm.pbar(pm.theta(i))


def test_bracket_anticommutator_on_odd_units():
    pm = ParityMap(1, 1) if False else ParityMap(1, 2)
    # gl(1|1)-style check inside the (1,2) pattern: indices n=2, odd unit pair
    e12 = LoopElement.unit(pm, 2, 3)  # parity 0+1 -> odd
    e21 = LoopElement.unit(pm, 3, 2)
    br = gl_bracket(e12, e21)
    expect = LoopElement.unit(pm, 2, 2) + LoopElement.unit(pm, 3, 3)
    assert br == expect


def test_derivation_and_center():
    pm = ParityMap(1, 2)
    x = LoopElement.unit(pm, 1, 2, 3)
    d = LoopElement.derivation(pm)
    assert gl_bracket(d, x) == x.scale(3)
    c = LoopElement.central(pm)
    assert gl_bracket(c, x).is_zero()
    assert gl_bracket(c, d).is_zero()


def test_supertrace_values():
    pm = ParityMap(1, 2)
    assert supertrace(LoopElement.unit(pm, 1, 1)) == GaussRational(1)
    assert supertrace(LoopElement.unit(pm, 4, 4)) == GaussRational(-1)
    assert supertrace(LoopElement.unit(pm, 1, 2)).re == 0


def test_supertrace_cyclic():
    rng = random.Random(1)
    pm = ParityMap(1, 2)

    def mult(x, y):
        # plain matrix product on t^0 terms
        out = LoopElement(pm)
        for (i, j, _t), a in x.terms.items():
            for (k, l, _t2), b in y.terms.items():
                if j == k:
                    cur = out.terms.get((i, l, 0))
                    out.terms[(i, l, 0)] = a * b if cur is None else cur + a * b
        return out

    def str_of(x):
        return supertrace(x, 0)

    for _ in range(30):
        i, j, k, l = (rng.randint(1, 4) for _ in range(4))
        x, y = LoopElement.unit(pm, i, j), LoopElement.unit(pm, k, l)
        z = LoopElement.unit(pm, rng.randint(1, 4), rng.randint(1, 4))
        lhs = str_of(mult(gl_bracket(x, y), z))
        rhs = str_of(mult(x, gl_bracket(y, z)))
        assert lhs == rhs


def test_phi_properties():
    pm = ParityMap(2, 2)
    units = [
        LoopElement.unit(pm, i, j)
        for i in range(1, pm.Nprime + 1)
        for j in range(1, pm.Nprime + 1)
    ]
    for u in units:
        assert phi(pm, phi(pm, u)) == u
    ident = LoopElement.identity(pm)
    assert phi(pm, ident) == ident.scale(-1)
    rng = random.Random(5)
    for _ in range(20):
        i, j, k, l = (rng.randint(1, pm.Nprime) for _ in range(4))
        x, y = LoopElement.unit(pm, i, j), LoopElement.unit(pm, k, l)
        assert phi(pm, gl_bracket(x, y)) == gl_bracket(phi(pm, x), phi(pm, y))


def test_psi_properties():
    pm = ParityMap(4, 1)

    def psik(x, k):
        for _ in range(k):
            x = psi(pm, x)
        return x

    units = [
        LoopElement.unit(pm, i, j)
        for i in range(1, pm.Nprime + 1)
        for j in range(1, pm.Nprime + 1)
    ]
    assert all(psik(u, 4) == u for u in units)
    assert any(psik(u, 2) != u for u in units)
    ident = LoopElement.identity(pm)
    assert psi(pm, ident) == ident.scale(-1)
    rng = random.Random(5)
    for _ in range(20):
        i, j, k, l = (rng.randint(1, pm.Nprime) for _ in range(4))
        x, y = LoopElement.unit(pm, i, j), LoopElement.unit(pm, k, l)
        assert psi(pm, gl_bracket(x, y)) == gl_bracket(psi(pm, x), psi(pm, y))


def test_twisted_membership_of_generators():
    for tau, n in [(2, 2), (2, 3), (4, 1), (4, 2)]:
        pm, hs, es, fs = chevalley(tau, n)
        for i, (e, f) in enumerate(zip(es, fs)):
            tdeg = 1 if i == 0 else 0
            assert twisted_membership(tau, pm, e, tdeg)
            assert twisted_membership(tau, pm, f, -tdeg)
        for h in hs:
            assert twisted_membership(tau, pm, h, 0)


def test_twisted_membership_wrong_eigenvalue():
    pm = ParityMap(2, 2)
    x = LoopElement.unit(pm, 1, 1) - LoopElement.unit(
        pm, pm.gamma(1), pm.gamma(1)
    )
    assert twisted_membership(2, pm, x, 0)
    assert not twisted_membership(2, pm, x, 1)


def test_identity_in_odd_eigenspace_order4():
    pm = ParityMap(4, 1)
    ident = LoopElement.identity(pm)
    assert twisted_membership(4, pm, ident, 2)
    assert not twisted_membership(4, pm, ident, 0)


def test_pairing_relation_all_cases():
    for tau, n in TEST_CASES:
        pm, hs, es, fs = chevalley(tau, n)
        for i, e in enumerate(es):
            for j, f in enumerate(fs):
                br = gl_bracket(e, f)
                expect = hs[i] if i == j else LoopElement(pm)
                assert br == expect, (tau, n, i, j)


def test_check_relations_all_cases():
    for tau, n in TEST_CASES:
        checks = check_relations(tau, n)
        bad = [c for c in checks if c["status"] != "PASS"]
        assert not bad, (tau, n, bad[:3])


def test_fault_injection_reports_witness():
    tau, n = 2, 2
    pm, hs, es, fs = chevalley(tau, n)
    gram = derive_gram(tau, n)
    # corrupt e_1 by flipping the sign of one term
    key = sorted(es[1].terms)[0]
    es[1].terms[key] = -es[1].terms[key]

    import qaffine.liesuper as mod

    orig = mod.chevalley
    mod.chevalley = lambda t, m: (pm, hs, es, fs)
    try:
        checks = check_relations(tau, n, gram)
    finally:
        mod.chevalley = orig
    bad = [c for c in checks if c["status"] == "FAIL"]
    assert bad
    assert any(c["witness"] for c in bad)


def test_z_classical_examples():
    pm = ParityMap(1, 2)
    z3 = z_classical(1, 2, 3)
    d = LoopElement.derivation(pm)
    assert gl_bracket(d, z3) == z3.scale(3)
    checks = check_z_ideal(1, 2)
    assert all(c["status"] == "PASS" for c in checks)


def test_z_ideal_all_cases():
    for tau, n in TEST_CASES:
        checks = check_z_ideal(tau, n)
        bad = [c for c in checks if c["status"] != "PASS"]
        assert not bad, (tau, n, bad[:2])


def test_jacobi_superidentity_random():
    rng = random.Random(9)
    pm = ParityMap(1, 2)

    def rand_hom():
        par = rng.randint(0, 1)
        terms = {}
        for _ in range(3):
            i, j = rng.randint(1, 4), rng.randint(1, 4)
            if pm.entry_parity(i, j) != par:
                continue
            c = rng.randint(-3, 3)
            if c:
                terms[(i, j, rng.randint(-2, 2))] = GaussRational(c)
        return LoopElement(pm, terms), par

    for _ in range(40):
        (x, a), (y, b), (z, _c) = rand_hom(), rand_hom(), rand_hom()
        lhs = gl_bracket(x, gl_bracket(y, z))
        rhs = gl_bracket(gl_bracket(x, y), z) + gl_bracket(y, gl_bracket(x, z)).scale(
            (-1) ** (a * b)
        )
        assert lhs == rhs


def test_positive_part_support():
    # brackets of raising generators never hit lowering-side units: for the
    # untwisted class, t-degree 0 terms stay strictly upper triangular and
    # nothing lands on the central or degree elements
    for tau, n in [(1, 2), (1, 3)]:
        pm, _hs, es, _fs = chevalley(tau, n)
        frontier = list(es)
        seen = list(es)
        for _ in range(3):
            new = []
            for e in es:
                for x in frontier:
                    b = gl_bracket(e, x)
                    if b:
                        new.append(b)
            frontier = new
            seen.extend(new)
        for x in seen:
            assert not x.c and not x.d
            for (i, j, t), _v in x.terms.items():
                assert t > 0 or i < j


def test_root_multiplicities_examples():
    mults = root_multiplicities(1, 2, 5)
    a1 = (0, 1, 0, 0)
    assert mults[a1] == (1, 0)
    # imaginary root delta: three diagonal directions at t-degree 1
    delta = (1, 1, 1, 1)
    ev, od = mults[delta]
    assert ev + od == 3 and od == 0
    # 2*alpha_1 is not a root
    assert (0, 2, 0, 0) not in mults


def test_root_multiplicities_bound_guard():
    with pytest.raises(ValueError):
        root_multiplicities(1, 2, 13)


def test_bad_rank():
    with pytest.raises(BadRank):
        ParityMap(1, 1)
    with pytest.raises(BadRank):
        ParityMap(4, 0)
