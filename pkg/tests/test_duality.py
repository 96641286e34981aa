from fractions import Fraction

import pytest

from qgcheck.duality import (
    AlgMultUnitary,
    bidual_map,
    build_alg_mult_unitary,
    build_dual,
    check_biduality,
    check_convolution_compat,
    check_dual,
    check_dual_modular,
    check_hopf_star_iso,
    check_pentagon_and_lemmas,
    check_radford,
)
from qgcheck.errors import CheckFailure, ModelError
from qgcheck.linalg import LinMap, Vec
from qgcheck.models import GroupTable, build_function_algebra, build_group_algebra
from qgcheck.report import ensure
from qgcheck.scalars import Cyc


@pytest.fixture(scope="module")
def dual_cache(model_cache):
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = build_dual(model_cache(name))
        return cache[name]

    return get


def assert_iso(t, src, dst):
    ensure(check_hopf_star_iso(t, src, dst))


def test_trivial_dual_is_trivial(dual_cache):
    dd = dual_cache("trivial")
    assert dd.dual.dim == 1
    assert dd.dual.unit == dd.source.unit
    assert dd.dual.mult == dd.source.mult
    assert dd.dual.antipode == dd.source.idA


# Hand-computed dual data for the four-dimensional model, basis
# (1, x, g, gx): the convolution unit is x + gx, the dual modular element
# is -x + gx, and the dual antipode sends 1^ -> -g^, x^ -> x^, g^ -> 1^,
# gx^ -> gx^.  Both scaling constants equal -1.
def test_sweedler_dual_oracle(dual_cache):
    dd = dual_cache("sweedler")
    one = Cyc.one(1)
    assert dict(dd.dual.unit.data) == {1: one, 3: one}
    assert dict(dd.dual_haar.delta.data) == {1: -one, 3: one}
    assert dd.haar.mu == -one
    assert dd.dual_haar.mu == -one
    expect = {(2, 0): -one, (1, 1): one, (0, 2): one, (3, 3): one}
    assert {(i, j): v for i, j, v in dd.dual.antipode.entries()} == expect
    # S^2 on the dual is -S^2 here because the scaling constant is -1
    s2 = dd.source.antipode @ dd.source.antipode
    assert dd.dual.antipode @ dd.dual.antipode == s2.scale(-one)


def test_taft_scaling_constants(dual_cache):
    dd = dual_cache("taft3")
    assert dd.haar.mu == Cyc.zeta(3, 2)
    assert dd.dual_haar.mu == Cyc.zeta(3, 1)


@pytest.mark.parametrize("name", ["trivial", "c_z2", "c_s3", "cg_s3",
                                  "d_z3", "sweedler", "taft3"])
def test_dual_full_suite(dual_cache, name):
    dd = dual_cache(name)
    ensure(check_dual(dd))
    ensure(check_dual_modular(dd))
    ensure(check_radford(dd))
    ensure(check_biduality(dd))


# The dual of a function algebra is the group algebra: delta_a * delta_b
# = (1/|G|) delta_{ab}, unit |G| delta_e, and dividing by |G| is a Hopf
# *-isomorphism onto the group-algebra model.
def test_function_algebra_dual_is_group_algebra(dual_cache, model_cache):
    dd = dual_cache("c_s3")
    g = GroupTable.symmetric(3)
    sixth = Cyc.rational(Fraction(1, 6))
    for a in range(6):
        for b in range(6):
            col = dd.dual.mult.column(a * 6 + b)
            assert dict(col.data) == {g.mul(a, b): sixth}
    assert dict(dd.dual.unit.data) == {0: Cyc.rational(6)}
    t = LinMap.identity(dd.source.A).scale(sixth)
    assert_iso(t, dd.dual, model_cache("cg_s3"))


# The dual of a group algebra is the function algebra on the same labels:
# u_g^ * u_h^ = [g = h] u_g^, and the identity matrix is already the
# isomorphism onto the function-algebra model.
def test_group_algebra_dual_is_function_algebra(dual_cache, model_cache):
    dd = dual_cache("cg_s3")
    one = Cyc.one(1)
    for a in range(6):
        for b in range(6):
            col = dd.dual.mult.column(a * 6 + b)
            assert dict(col.data) == ({a: one} if a == b else {})
    assert_iso(LinMap.identity(dd.source.A), dd.dual, model_cache("c_s3"))


# Discrete Fourier transform oracles on cyclic groups: the character
# matrix u_j |-> sum_k zeta^{jk} delta_k is a Hopf *-isomorphism from the
# group algebra to the function algebra, and composing with the 1/n
# relabeling identifies the dual of the function algebra with the
# function algebra itself.
@pytest.mark.parametrize("n", [2, 3, 4])
def test_cyclic_fourier_duality(n):
    cg = build_group_algebra(GroupTable.cyclic(n))
    c = build_function_algebra(GroupTable.cyclic(n))
    dft = LinMap.from_entries(
        cg.A, c.A,
        ((k, j, Cyc.zeta(n, (j * k) % n)) for j in range(n) for k in range(n)))
    assert_iso(dft, cg, c)

    ddc = build_dual(c)
    scale = LinMap.identity(c.A).scale(Cyc.rational(Fraction(1, n)))
    assert_iso(scale, ddc.dual, cg)
    assert_iso(dft @ scale, ddc.dual, c)

    ddg = build_dual(cg)
    assert_iso(LinMap.identity(cg.A), ddg.dual, c)


# W(u_g (x) u_h) = u_{h^-1 g} (x) u_h on a group algebra; for Z_2 that is
# the permutation fixing (0,0) and (1,0) and swapping (0,1) with (1,1).
def test_mult_unitary_group_permutation(model_cache):
    mw = build_alg_mult_unitary(model_cache("cg_z2"))
    one = Cyc.one(1)
    expect = {(0, 0): one, (3, 1): one, (2, 2): one, (1, 3): one}
    assert {(i, j): v for i, j, v in mw.w.entries()} == expect
    assert mw.w @ mw.w_inv == LinMap.identity(mw.model.AA)


@pytest.mark.parametrize("name", ["trivial", "c_z2", "c_z3", "c_s3",
                                  "sweedler", "taft3"])
def test_pentagon_and_lemmas(dual_cache, name):
    dd = dual_cache(name)
    ensure(check_pentagon_and_lemmas(dd))


def test_pentagon_sampled_path(dual_cache):
    # forcing the cap below dim^3 exercises the seeded sampler
    dd = dual_cache("c_s3")
    records = check_pentagon_and_lemmas(dd, cap=10, samples=100)
    pentagon = next(r for r in records if r.check_id.endswith("pentagon"))
    assert "seeded" in pentagon.law
    ensure(records)


@pytest.mark.parametrize("name", ["trivial", "c_z2", "cg_z3", "sweedler",
                                  "taft3"])
def test_convolution_compat(dual_cache, name):
    ensure(check_convolution_compat(dual_cache(name)))


# On the four-dimensional model S^4 = id while delta = g and the dual
# modular element are nontrivial; the two conjugations compose to minus
# the identity, the sign being the scaling constant.
def test_radford_collapse_oracle(dual_cache):
    dd = dual_cache("sweedler")
    m, dm = dd.source, dd.dual
    s4 = m.antipode @ m.antipode @ m.antipode @ m.antipode
    assert s4 == m.idA
    conj = m.lmul(dd.haar.delta_inv) @ m.rmul(dd.haar.delta) \
        @ dm.lmul(dd.dual_haar.delta_inv) @ dm.rmul(dd.dual_haar.delta)
    assert conj == m.idA.scale(-Cyc.one(1))


def test_radford_nontrivial_antipode(dual_cache, taft3):
    s2 = taft3.antipode @ taft3.antipode
    assert s2 != taft3.idA
    assert s2 @ s2 != taft3.idA
    ensure(check_radford(dual_cache("taft3")))


def test_bidual_map_unit(dual_cache):
    dd = dual_cache("c_s3")
    kappa = bidual_map(dd)
    bidd = build_dual(dd.dual, dd.dual_haar, validate=False)
    assert kappa(dd.source.unit) == bidd.dual.unit
    assert bidd.dual.name.endswith("^^")


def test_build_dual_rejects_broken_model(model_cache):
    with pytest.raises((ModelError, CheckFailure)):
        build_dual(model_cache("broken"))


def test_mult_unitary_type(model_cache):
    mw = build_alg_mult_unitary(model_cache("c_z2"))
    assert isinstance(mw, AlgMultUnitary)
    assert mw.w.dom == mw.model.AA and mw.w.cod == mw.model.AA
