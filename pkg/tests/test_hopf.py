from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qgcheck.errors import ModelError
from qgcheck.hopf import (check_cancellation, galois, galois_variants,
                          solve_antipode, solve_counit, validate_model,
                          verify_counit_antipode)
from qgcheck.linalg import LinMap, Vec
from qgcheck.models import GroupTable, build_broken, builtin
from qgcheck.report import ensure
from qgcheck.scalars import Cyc


def one():
    return Cyc.one(1)


# Twisted multiplications on functions over Z2, enumerated by hand from the
# definitions: gl sends d_a (x) d_b to d_b (x) d_{a-b}, gr to d_{a-b} (x) d_b,
# rl to d_a (x) d_{a^-1 b}, rr to d_{b-a} (x) d_a (indices mod 2).
def test_galois_oracle_functions_on_z2(model_cache):
    m = model_cache("c_z2")
    g = galois(m)
    expect = {
        "gl": [((b, a ^ b), (a, b)) for a in range(2) for b in range(2)],
        "gr": [((a ^ b, b), (a, b)) for a in range(2) for b in range(2)],
        "rl": [((a, a ^ b), (a, b)) for a in range(2) for b in range(2)],
        "rr": [((a ^ b, a), (a, b)) for a in range(2) for b in range(2)],
    }
    for kind, pairs in expect.items():
        want = LinMap.from_entries(
            m.AA, m.AA,
            (((r[0] * 2 + r[1]), (c[0] * 2 + c[1]), one()) for r, c in pairs))
        assert g[kind] == want, kind


def test_galois_variant_count_and_cancellation(sweedler, c_s3):
    assert len(galois_variants(sweedler)) == 16
    ensure(check_cancellation(sweedler))
    ensure(check_cancellation(c_s3))


def test_cancellation_taft3(taft3):
    ensure(check_cancellation(taft3, variants=False))


@pytest.mark.parametrize("name", ["trivial", "c_z3", "c_z4", "cg_z2", "cg_z3",
                                  "c_s3", "cg_s3", "d_z2", "d_z3", "sweedler",
                                  "taft3"])
def test_validate_builtin_models(model_cache, name):
    ensure(validate_model(model_cache(name)))


def test_validate_double_s3(d_s3):
    ensure(validate_model(d_s3))


def test_solved_antipode_is_group_inverse(model_cache):
    m = model_cache("cg_z3")
    s = solve_antipode(m)
    want = LinMap.from_entries(m.A, m.A, (((3 - g) % 3, g, one()) for g in range(3)))
    assert s == want
    assert s == m.antipode


def test_solved_counit_matches_stored(sweedler, model_cache):
    for m in (sweedler, model_cache("c_s3")):
        assert solve_counit(m) == m.counit
    assert solve_antipode(sweedler) == sweedler.antipode


def test_sweedler_product_table(sweedler):
    m = sweedler
    e = {lab: m.element({lab: 1}) for lab in ("1", "x", "g", "gx")}
    zero = Vec.zero(m.A)
    table = {
        ("x", "x"): zero,
        ("x", "g"): m.element({"gx": -1}),
        ("x", "gx"): zero,
        ("g", "x"): e["gx"],
        ("g", "g"): e["1"],
        ("g", "gx"): e["x"],
        ("gx", "x"): zero,
        ("gx", "g"): m.element({"x": -1}),
        ("gx", "gx"): zero,
    }
    for (a, b), want in table.items():
        assert m.mul(e[a], e[b]) == want, (a, b)
    for lab in e:
        assert m.mul(e["1"], e[lab]) == e[lab]
        assert m.mul(e[lab], e["1"]) == e[lab]


def test_sweedler_coproduct_antipode_star(sweedler):
    m = sweedler
    x, g, gx = (m.element({lab: 1}) for lab in ("x", "g", "gx"))
    unit = m.unit
    assert m.coprod(g) == g.tensor(g)
    assert m.coprod(x) == x.tensor(unit) + g.tensor(x)
    assert m.coprod(gx) == gx.tensor(g) + unit.tensor(gx)
    assert m.antipode(x) == m.element({"gx": -1})
    assert m.antipode(gx) == x
    assert m.antipode(m.antipode(x)) == m.element({"x": -1})
    assert m.bar(x) == x
    assert m.bar(g) == g
    assert m.bar(gx) == m.element({"gx": -1})


def test_taft3_relations(taft3):
    m = taft3
    zeta = Cyc.zeta(3)
    g, x = m.element({"g": 1}), m.element({"x": 1})
    assert m.mul(m.mul(g, g), g) == m.unit
    assert m.mul(m.mul(x, x), x) == Vec.zero(m.A)
    # x g = zeta g x
    assert m.mul(x, g) == zeta * m.mul(g, x)
    # S(x) = -g^2 x, S^2(x) = zeta x
    assert m.antipode(x) == Vec(m.A, {m.basis_index("g2x"): -Cyc.one(3)})
    assert m.antipode(m.antipode(x)) == zeta * x


def test_broken_model_fails_antipode_laws():
    records = validate_model(build_broken())
    bad = [r for r in records if not r.ok]
    assert bad, "broken model must fail validation"
    assert any("antipode" in r.check_id for r in bad)
    assert all(r.witness or r.residual is not None for r in bad)
    # the algebra layer itself is untouched
    assert all(r.ok for r in records if ".struct.alg" in r.check_id)


def test_counit_antipode_records_have_laws(sweedler):
    records = verify_counit_antipode(sweedler)
    assert all(r.law for r in records)
    assert {r.status for r in records} == {"pass"}


def test_mul2_matches_dense_product(model_cache):
    m = model_cache("c_z2")
    # product on A(x)A as one dense map: (m(x)m) o (id(x)flip(x)id)
    mm = (m.mult.tensor(m.mult)) @ LinMap.leg_permutation((2, 2, 2, 2), (0, 2, 1, 3))
    for i in range(4):
        for j in range(4):
            u, w = Vec.basis(m.AA, i), Vec.basis(m.AA, j)
            assert m.mul2(u, w) == mm(u.tensor(w))


def small_vecs(model, max_terms=3):
    idx = st.integers(min_value=0, max_value=model.dim * model.dim - 1)
    coeff = st.integers(min_value=-3, max_value=3)
    return st.dictionaries(idx, coeff, max_size=max_terms).map(
        lambda d: Vec(model.AA, {i: Cyc.rational(Fraction(c), 1)
                                 for i, c in d.items() if c}))


@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_mul2_is_associative_on_sweedler(data):
    m = builtin("sweedler")
    u = data.draw(small_vecs(m))
    v = data.draw(small_vecs(m))
    w = data.draw(small_vecs(m))
    assert m.mul2(m.mul2(u, v), w) == m.mul2(u, m.mul2(v, w))


def test_model_shape_errors():
    good = builtin("sweedler")
    with pytest.raises(ModelError):
        from dataclasses import replace
        replace(good, counit=LinMap.identity(good.A))
