"""Leg-aware sparse linear algebra over exact scalars."""

import random
from fractions import Fraction

import numpy as np
import pytest

from qgcheck.errors import LegMismatch, SingularMap
from qgcheck.linalg import (
    LinMap,
    Vec,
    apply_on_legs,
    det,
    embed_on_legs,
    eigh_checked,
    inverse,
    joint_eigenbasis,
    kernel,
    power_hermitian,
    rank,
    solve_linear,
    span_rank,
    tensor_all,
    to_multi,
)
from qgcheck.scalars import Cyc


def rand_map(rng, dom, cod, density=0.5, order=1):
    entries = []
    for i in range(cod):
        for j in range(dom):
            if rng.random() < density:
                entries.append((i, j, Fraction(rng.randint(-4, 4), rng.randint(1, 3))))
    return LinMap.from_entries((dom,), (cod,), entries)


def test_compose_and_leg_checks():
    f = LinMap.from_dense((2,), (3,), [[1, 0], [2, 1], [0, 3]])
    g = LinMap.from_dense((3,), (2,), [[1, 1, 0], [0, 1, 1]])
    h = g @ f
    assert h.dom == (2,) and h.cod == (2,)
    assert h.entry(0, 0) == 3
    with pytest.raises(LegMismatch):
        _ = f @ f


def test_tensor_shapes_and_values():
    f = LinMap.from_dense((2,), (2,), [[1, 2], [0, 1]])
    g = LinMap.from_dense((3,), (3,), [[0, 1, 0], [1, 0, 0], [0, 0, 1]])
    t = f.tensor(g)
    assert t.dom == (2, 3) and t.cod == (2, 3)
    fn, gn = f.to_numpy(), g.to_numpy()
    assert np.allclose(t.to_numpy(), np.kron(fn, gn))


def test_permutation_as_composed_flips():
    # one-line permutation (2 3 1): output legs are input legs (2,3,1),
    # which factors as flip(1,2) after flip(2,3) on three 2-dim legs
    dims = (2, 2, 2)
    perm = LinMap.leg_permutation(dims, (1, 2, 0))
    f23 = embed_on_legs(LinMap.flip(2, 2), [1, 2], dims)
    f12 = embed_on_legs(LinMap.flip(2, 2), [0, 1], dims)
    assert perm == f23 @ f12
    # entrywise against the direct index permutation
    for idx in range(8):
        i, j, k = to_multi(idx, dims)
        out = perm.apply(Vec.basis(dims, (i, j, k)))
        assert out == Vec.basis(dims, (j, k, i))


def test_disjoint_legs_commute():
    rng = random.Random(7)
    dims = (2, 3, 2)
    a = rand_map(rng, 2, 2)
    b = rand_map(rng, 3, 3)
    ea = embed_on_legs(a, [0], dims)
    eb = embed_on_legs(b, [1], dims)
    for _ in range(10):
        v = Vec((2, 3, 2), {rng.randrange(12): Cyc.rational(Fraction(rng.randint(1, 5)))})
        assert ea.apply(eb.apply(v)) == eb.apply(ea.apply(v))
    assert ea @ eb == eb @ ea


def test_apply_on_legs_matches_embedding():
    rng = random.Random(3)
    dims = (2, 2, 3)
    f = rand_map(rng, 2, 2, density=0.8)
    g = rand_map(rng, 3, 3, density=0.8)
    m = f.tensor(g)
    big = embed_on_legs(m, [1, 2], dims)
    v = Vec(dims, {i: Cyc.rational(Fraction(rng.randint(-3, 3))) for i in range(12)})
    assert apply_on_legs(m, [1, 2], v) == big.apply(v)


def test_solve_reports_inconsistent_vs_zero_kernel():
    a = LinMap.from_dense((2,), (3,), [[1, 0], [0, 1], [1, 1]])
    sol, ker = solve_linear(a, Vec.from_list((3,), [1, 2, 3]))
    assert sol is not None and not ker
    assert a.apply(sol) == Vec.from_list((3,), [1, 2, 3])
    bad, ker = solve_linear(a, Vec.from_list((3,), [1, 2, 4]))
    assert bad is None and not ker


def test_kernel_of_invariance_style_system():
    # the averaging-difference system for functions on a 2-element group:
    # rows encode sum_l D[(k,l)][j] p_l - p_j [k-th unit coord] = 0 and its
    # kernel must be the constants
    rows = []
    # coproduct of the 2-point function algebra: D[(k,l)][j] = [k+l=j mod 2]
    for k in range(2):
        for j in range(2):
            row = [0, 0]
            for l in range(2):
                if (k + l) % 2 == j:
                    row[l] += 1
            row[j] -= 1  # unit of the function algebra is (1,1)
            rows.append(row)
    m = LinMap.from_dense((2,), (4,), rows)
    ker = kernel(m)
    assert len(ker) == 1
    v = ker[0]
    assert v.get(0) == v.get(1) and not v.get(0).is_zero()


def test_det_and_inverse_exact():
    rng = random.Random(11)
    for trial in range(8):
        n = rng.randint(1, 5)
        m = rand_map(rng, n, n, density=0.7)
        d = det(m)
        if d.is_zero():
            with pytest.raises(SingularMap):
                inverse(m)
            continue
        mi = inverse(m)
        assert mi @ m == LinMap.identity((n,))
        assert m @ mi == LinMap.identity((n,))
    p = LinMap.leg_permutation((2, 2, 2), (1, 2, 0))
    assert det(p) == 1  # two 3-cycles on the 8 basis vectors: even
    assert det(LinMap.flip(2, 2)).rational_value() == -1  # a single transposition
    assert det(LinMap.flip(2, 3)).rational_value() == -1  # one 4-cycle: odd


def test_det_known_values():
    m = LinMap.from_dense((2,), (2,), [[1, 2], [3, 4]])
    assert det(m).rational_value() == -2
    z = Cyc.zeta(3)
    m2 = LinMap.from_entries((2,), (2,), [(0, 0, z), (1, 1, z)])
    assert det(m2) == z * z


def test_rank_and_functional():
    phi = LinMap.functional((3,), [1, 1, 0])
    assert phi.cod == ()
    v = Vec.from_list((3,), [2, 3, 5])
    assert phi.apply(v).get(0).rational_value() == 5
    assert rank(phi) == 1


def test_eigh_checked_and_powers():
    h = np.array([[2.0, 1.0], [1.0, 2.0]], dtype=complex)
    w, u = eigh_checked(h)
    assert np.allclose(sorted(w), [1.0, 3.0])
    hs = power_hermitian(h, 0.5)
    assert np.allclose(hs @ hs, h)
    with pytest.raises(ValueError):
        power_hermitian(np.array([[1.0, 0.0], [0.0, -1.0]]), 0.5)


def test_joint_eigenbasis():
    x = np.diag([1.0, 1.0, 2.0])
    q = np.linalg.qr(np.random.default_rng(0).normal(size=(3, 3)))[0]
    y0 = np.diag([5.0, 7.0, 9.0])
    x2, y2 = q @ x @ q.T, q @ y0 @ q.T
    u, ok = joint_eigenbasis(x2, y2)
    assert ok
    bad = np.array([[1.0, 0.0], [0.0, 1.0]]), np.array([[0.0, 1.0], [1.0, 0.0]])
    u, ok = joint_eigenbasis(np.diag([1.0, 2.0]), bad[1])
    assert not ok


def test_span_rank():
    mats = [np.eye(2), np.array([[0, 1], [1, 0]]), np.eye(2) * 2]
    assert span_rank(mats) == 2


def test_vector_ops():
    v = Vec.from_list((2,), [1, 2])
    w = Vec.from_list((2,), [0, 5])
    assert (v + w).get(1).rational_value() == 7
    t = v.tensor(w)
    assert t.dims == (2, 2)
    assert t.get((1, 1)).rational_value() == 10
    assert tensor_all(LinMap.identity((2,)), LinMap.identity((3,))).dom == (2, 3)
