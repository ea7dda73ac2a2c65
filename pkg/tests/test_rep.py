import pytest

from qaffine.lattice import Bicharacter, LatticeCase
from qaffine.liesuper import TEST_CASES
from qaffine.quantalg import FreeElement, serre_relators
from qaffine.rep import (
    AssumptionViolated,
    Representation,
    check_rep,
    classical_limit_check,
    psi_generator,
    psi_z,
)
from qaffine.scalars import LaurentPoly
from qaffine.zelement import build_Z


def test_lowering_image_class1():
    bc = Bicharacter(LatticeCase(1, 2), "hat")
    m = psi_generator(1, 2, bc, "F", 1)
    assert set(m.entries) == {(2, 1)}
    v = m.entries[(2, 1)]
    [(exp, c)] = v.terms.items()
    assert c == 1
    assert exp[v.vars.index("u1")] == -1


def test_lowering_image_class2_affine():
    bc = Bicharacter(LatticeCase(2, 2), "hat")
    m = psi_generator(2, 2, bc, "F", 0)
    assert set(m.entries) == {(1, 8)}
    v = m.entries[(1, 8)]
    [(exp, _c)] = v.terms.items()
    assert exp[v.vars.index("t")] == -1


def test_lowering_image_class4_affine():
    bc = Bicharacter(LatticeCase(4, 1), "hat")
    m = psi_generator(4, 1, bc, "F", 0)
    assert set(m.entries) == {(2, 1), (1, 6)}
    for v in m.entries.values():
        [(exp, _c)] = v.terms.items()
        assert exp[v.vars.index("t")] == -1


def test_degree_twist_conjugation():
    bc = Bicharacter(LatticeCase(1, 2), "hat")
    rep = Representation(1, 2, bc)
    kd = rep.k_d(1)
    e0 = rep.e_gen(0)
    lhs = kd * e0
    rhs = (e0 * kd).scale(LaurentPoly.variable("q", rep.vars))
    assert lhs == rhs


def test_group_inverse_and_products():
    bc = Bicharacter(LatticeCase(2, 2), "hat")
    rep = Representation(2, 2, bc)
    case = bc.case
    a = case.alpha(1)
    b = case.alpha(3)
    ka = rep.group_image("K", a)
    kb = rep.group_image("K", b)
    kab = rep.group_image("K", case.add(a, b))
    assert ka * kb == kab
    ident = rep.group_image("K", case.zero())
    assert ka * rep.group_image("K", case.neg(a)) == ident


def test_psi_apply_is_multiplicative():
    bc = Bicharacter(LatticeCase(1, 2), "hat")
    rep = Representation(1, 2, bc)
    x = FreeElement.E(bc, 1) * FreeElement.F(bc, 1)
    lhs = rep.apply(x)
    rhs = rep.e_gen(1) * rep.f_gen(1)
    assert lhs == rhs
    assert rep.apply(FreeElement.one(bc)) == __import__(
        "qaffine.rep", fromlist=["RepMatrix"]
    ).RepMatrix.identity(rep.size, rep.vars)


def test_relator_images_vanish():
    for tau, n in [(1, 2), (2, 2), (4, 1)]:
        bc = Bicharacter(LatticeCase(tau, n), "solved")
        rep = Representation(tau, n, bc)
        for name, r in serre_relators(tau, n, bc).relators:
            assert rep.apply(r).is_zero(), (tau, n, name)


def test_pairing_relation_under_rep():
    bc = Bicharacter(LatticeCase(1, 3), "solved")
    rep = Representation(1, 3, bc)
    for i in range(bc.case.rank):
        lhs = rep.apply(
            FreeElement.E(bc, i) * FreeElement.F(bc, i)
            - FreeElement.F(bc, i) * FreeElement.E(bc, i)
        )
        rhs = rep.l_alpha(i) - rep.k_alpha(i)
        assert lhs == rhs


@pytest.mark.parametrize("tau,n", TEST_CASES)
def test_check_rep_full(tau, n):
    for mode in ("hat", "solved"):
        checks = check_rep(tau, n, Bicharacter(LatticeCase(tau, n), mode))
        bad = [c for c in checks if c["status"] != "PASS"]
        assert not bad, (tau, n, mode, bad[:3])


def test_assumption_guard():
    case = LatticeCase(1, 2)
    bc = Bicharacter(case, "solved")
    # tamper with the affine row so the delta-triviality condition fails
    sym = LaurentPoly.variable("p1_2", bc.vars)
    bc.table[(0, 1)] = sym
    bc._mono[(0, 1)] = (list(sym.terms.values())[0], list(sym.terms.keys())[0])
    with pytest.raises(AssumptionViolated):
        Representation(1, 2, bc)


def test_scalar_image_small():
    for tau, n in [(1, 2), (4, 1)]:
        for mode in ("hat", "solved"):
            bc = Bicharacter(LatticeCase(tau, n), mode)
            bundle = build_Z(tau, n, bc)
            b, ok = psi_z(tau, n, bc, bundle.Z)
            assert ok and b is not None and not b.is_zero(), (tau, n, mode)


def test_scalar_image_commutes_with_generators():
    tau, n = 1, 2
    bc = Bicharacter(LatticeCase(tau, n), "hat")
    rep = Representation(tau, n, bc)
    bundle = build_Z(tau, n, bc)
    img = rep.apply(bundle.Z)
    for i in range(bc.case.rank):
        for g in (rep.e_gen(i), rep.f_gen(i), rep.k_alpha(i)):
            assert img * g == g * img
    kd = rep.k_d(1)
    qs = LaurentPoly.constant(1, rep.vars).shift("q", bc.case.s)
    assert kd * img == (img * kd).scale(qs)


def test_degree_bookkeeping():
    # the image of a homogeneous element has t-degree equal to the
    # delta-coefficient of its multidegree
    bc = Bicharacter(LatticeCase(1, 2), "hat")
    rep = Representation(1, 2, bc)
    case = bc.case
    x = FreeElement.E(bc, 0) * FreeElement.E(bc, 1)
    img = rep.apply(x)
    _eps, delta, _d = case.to_eps(x.degree())
    for v in img.entries.values():
        lo, hi = v.degree_in("t")
        assert lo == hi == delta


def test_classical_limit_all():
    for tau, n in [(1, 2), (2, 2), (4, 1)]:
        bc = Bicharacter(LatticeCase(tau, n), "hat")
        assert classical_limit_check(tau, n, bc)
