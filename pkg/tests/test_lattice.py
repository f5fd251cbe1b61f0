import random
from fractions import Fraction

import pytest

from latvoa.lattice import (
    Coset,
    ScreeningLattices,
    build_screening_lattices,
    central_charge,
    conformal_dim,
    groundstates,
    num_simples,
    q_vector,
    quadratic_form_F,
    quotient_group,
)
from latvoa.rootdata import build_root_system

F = Fraction


def coords(momenta):
    return [tuple(m.coords) for m in momenta]


def test_a1_lattice_data(sl_a1):
    assert coords(sl_a1.basis_short) == [(-1,)]
    assert coords(sl_a1.basis_long) == [(2,)]
    assert coords(sl_a1.basis_dual) == [(F(1, 2),)]
    assert sl_a1.Q.coords == (F(1, 2),)
    assert sl_a1.space.norm(sl_a1.basis_short[0]) == 1
    assert sl_a1.space.norm(sl_a1.basis_long[0]) == 4
    assert central_charge(sl_a1) == -2


def test_b2_lattice_data(sl_b2):
    assert coords(sl_b2.basis_short) == [(-1, 0), (0, -1)]
    assert coords(sl_b2.basis_long) == [(1, 0), (0, 2)]
    assert coords(sl_b2.basis_dual) == [(1, 1), (F(1, 2), 1)]
    assert sl_b2.Q.coords == (F(1, 2), 1)
    assert central_charge(sl_b2) == -4
    # the second dual generator is Q itself
    assert sl_b2.basis_dual[1] == sl_b2.Q


def test_bn_lattice_data():
    for n in (2, 3, 4):
        sl = ScreeningLattices(build_root_system("B", n), 4)
        assert central_charge(sl) == -2 * n
        assert sl.Q.coords == tuple(F(j, 2) for j in range(1, n + 1))
        long_want = [
            tuple((1 if i == j else 0) if j < n - 1 else (2 if i == j else 0) for i in range(n))
            for j in range(n)
        ]
        assert coords(sl.basis_long) == long_want
        for a in sl.basis_short + sl.basis_long:
            assert conformal_dim(sl, a) == 1


def test_q_vector_examples():
    assert q_vector(build_root_system("A", 1), 2).coords == (F(1, 2),)
    assert q_vector(build_root_system("B", 2), 2).coords == (F(1, 2), 1)
    assert q_vector(build_root_system("B", 3), 2).coords == (F(1, 2), 1, F(3, 2))


def test_divisibility_rejected():
    with pytest.raises(ValueError, match=r"a_1"):
        build_screening_lattices(build_root_system("B", 2), 2)
    with pytest.raises(ValueError):
        build_screening_lattices(build_root_system("A", 1), 3)


def test_lattice_containments():
    # long in short in dual, as integer spans
    def integer_combination(target, basis):
        from latvoa import linalg

        mat = linalg.transpose([list(b.coords) for b in basis])
        sol = linalg.solve(mat, list(target.coords))
        return sol is not None and all(x.denominator == 1 for x in sol)

    for series, rank, ell in [("A", 1, 4), ("B", 2, 4), ("B", 3, 4), ("C", 3, 4), ("F", 4, 4), ("G", 2, 6)]:
        sl = ScreeningLattices(build_root_system(series, rank), ell)
        for b in sl.basis_long:
            assert integer_combination(b, sl.basis_short)
        for b in sl.basis_short:
            assert integer_combination(b, sl.basis_dual)


def test_conformal_dim_identity(sl_b2):
    # h(lam) = |lam - Q|^2/2 - |Q|^2/2
    rng = random.Random(3)
    for _ in range(100):
        lam = sl_b2.space.momentum(
            [F(rng.randint(-6, 6), rng.choice([1, 2, 3])) for _ in range(2)]
        )
        lhs = conformal_dim(sl_b2, lam)
        diff = lam - sl_b2.Q
        rhs = sl_b2.space.norm(diff) / 2 - sl_b2.space.norm(sl_b2.Q) / 2
        assert lhs == rhs
    assert conformal_dim(sl_b2, sl_b2.Q) == F(-1, 4)
    assert conformal_dim(sl_b2, sl_b2.space.zero()) == 0


def test_num_simples():
    assert num_simples(build_root_system("A", 1), 4) == 4
    for p in (1, 2, 3, 5):
        assert num_simples(build_root_system("A", 1), 2 * p) == 2 * p
    assert num_simples(build_root_system("B", 2), 4) == 4
    assert num_simples(build_root_system("B", 3), 4) == 4
    assert num_simples(build_root_system("G", 2), 6) == 3
    assert num_simples(build_root_system("C", 3), 4) == 8
    assert num_simples(build_root_system("F", 4), 4) == 4


def test_quotient_group_matches_num_simples():
    for series, rank, ell in [("A", 1, 4), ("A", 1, 6), ("B", 2, 4), ("B", 3, 4), ("G", 2, 6)]:
        sl = ScreeningLattices(build_root_system(series, rank), ell)
        qg = sl.module_cosets()
        assert qg.order == num_simples(sl.rs, ell)
        assert len(qg.coset_reps) == qg.order
        # representatives are pairwise distinct as cosets
        seen = []
        for rep in qg.coset_reps:
            c = sl.long_lattice_coset(rep)
            assert not any(c == s for s in seen)
            seen.append(c)


def test_quotient_structure():
    # A1 and B3 are cyclic of order four; B2 and B4 are Klein four-groups
    # (2Q lies in the long lattice for even n, e.g. 2Q = a1+ + a2+ for B2)
    def factors(series, rank):
        sl = ScreeningLattices(build_root_system(series, rank), 4)
        return sl.module_cosets().invariant_factors

    assert factors("A", 1) == [4]
    assert factors("B", 3) == [4]
    assert factors("B", 2) == [2, 2]
    assert factors("B", 4) == [2, 2]


def test_b2_two_q_in_long_lattice(sl_b2):
    two_q = 2 * sl_b2.Q
    assert sl_b2.long_lattice_coset(sl_b2.space.zero()).contains(two_q)
    assert two_q == sl_b2.basis_long[0] + sl_b2.basis_long[1]


def test_quotient_containment_error(sl_b2):
    with pytest.raises(ValueError):
        quotient_group(sl_b2, sl_b2.basis_long, sl_b2.basis_dual)


def test_a1_groundstates(sl_a1):
    expected = {
        "blue": (1, F(0), {(0,)}),
        "center": (1, F(-1, 8), {(F(1, 2),)}),
        "green": (1, F(0), {(1,)}),
        "steinberg": (2, F(3, 8), {(F(-1, 2),), (F(3, 2),)}),
    }
    for name, coset in sl_a1.named_cosets().items():
        gs, h = groundstates(sl_a1, coset)
        count, hw, reps = expected[name]
        assert len(gs) == count
        assert h == hw
        assert {g.coords for g in gs} == reps


def test_b2_groundstates(sl_b2):
    expected = {
        "blue": (2, F(0), {(0, 0), (1, 2)}),
        "center": (1, F(-1, 4), {(F(1, 2), 1)}),
        "green": (2, F(0), {(1, 1), (0, 1)}),
        "steinberg": (
            4,
            F(1, 4),
            {(F(3, 2), 2), (F(1, 2), 0), (F(-1, 2), 0), (F(1, 2), 2)},
        ),
    }
    for name, coset in sl_b2.named_cosets().items():
        gs, h = groundstates(sl_b2, coset)
        count, hw, reps = expected[name]
        assert (len(gs), h) == (count, hw)
        assert {g.coords for g in gs} == reps


def test_bn_groundstates_formula():
    # Blue/Green groundstates are Q + (1/2) sum e_k g_k over sign vectors
    # of fixed parity; the all-minus choice gives 0, so Blue carries parity
    # (-1)^n (the all-plus choice gives 2Q, which lands in Green for odd n).
    # Steinberg: Q +- g_k.  Counts 2^{n-1}, 2^{n-1}, 1, 2n.
    import itertools

    for n in (2, 3, 4):
        sl = ScreeningLattices(build_root_system("B", n), 4)
        gammas = [
            sl.space.momentum([1 if i >= k else 0 for i in range(n)]) for k in range(n)
        ]
        cosets = sl.named_cosets()
        for name, parity, count, hw in [
            ("blue", (-1) ** n, 2 ** (n - 1), F(0)),
            ("green", -((-1) ** n), 2 ** (n - 1), F(0)),
        ]:
            gs, h = groundstates(sl, cosets[name])
            assert len(gs) == count and h == hw
            want = set()
            for signs in itertools.product((1, -1), repeat=n):
                prod = 1
                for s in signs:
                    prod *= s
                if prod != parity:
                    continue
                v = sl.Q
                for s, g in zip(signs, gammas):
                    v = v + F(s, 2) * g
                want.add(v.coords)
            assert {g.coords for g in gs} == want
        gs, h = groundstates(sl, cosets["center"])
        assert len(gs) == 1 and h == F(-n, 8) and gs[0] == sl.Q
        gs, h = groundstates(sl, cosets["steinberg"])
        assert len(gs) == 2 * n and h == F(-n, 8) + F(1, 2)
        want = {(sl.Q + g).coords for g in gammas} | {(sl.Q - g).coords for g in gammas}
        assert {g.coords for g in gs} == want


def test_groundstates_representative_independence(sl_b2):
    rng = random.Random(4)
    base = sl_b2.named_cosets()["steinberg"]
    ref, href = groundstates(sl_b2, base)
    for _ in range(100):
        shift = sl_b2.space.zero()
        for b in sl_b2.basis_long:
            shift = shift + rng.randint(-3, 3) * b
        moved = Coset(sl_b2.space, base.rep + shift, base.basis)
        gs, h = groundstates(sl_b2, moved)
        assert h == href
        assert {g.coords for g in gs} == {g.coords for g in ref}


def test_quadratic_form():
    sl = ScreeningLattices(build_root_system("A", 1), 4)
    cosets = sl.named_cosets()
    assert quadratic_form_F(sl, cosets["blue"]) == 0
    assert quadratic_form_F(sl, cosets["center"]) == F(-1, 4)
    assert quadratic_form_F(sl, cosets["green"]) == 0
    assert quadratic_form_F(sl, cosets["steinberg"]) == F(3, 4)


def test_quadratic_form_b2(sl_b2):
    cosets = sl_b2.named_cosets()
    # F = e^{2 pi i h}: Steinberg h = 1/4 gives exponent 1/2, i.e. F = i
    assert quadratic_form_F(sl_b2, cosets["steinberg"]) == F(1, 2)
    assert quadratic_form_F(sl_b2, cosets["center"]) == F(-1, 2)


def test_quadratic_form_representative_independence(sl_b2):
    rng = random.Random(5)
    for name, coset in sl_b2.named_cosets().items():
        ref = quadratic_form_F(sl_b2, coset)
        for _ in range(25):
            shift = sl_b2.space.zero()
            for b in sl_b2.basis_long:
                shift = shift + rng.randint(-2, 2) * b
            moved = Coset(sl_b2.space, coset.rep + shift, coset.basis)
            assert quadratic_form_F(sl_b2, moved) == ref


def test_conformal_dim_integer_gap_on_lattice_shifts(sl_b2):
    # lam - mu in the short lattice with integer pairings gives an integer
    # conformal-dimension gap (layer alignment)
    rng = random.Random(6)
    count = 0
    while count < 100:
        mu = sl_b2.space.momentum([F(rng.randint(-4, 4), 2) for _ in range(2)])
        shift = sl_b2.space.zero()
        for b in sl_b2.basis_short:
            shift = shift + rng.randint(-3, 3) * b
        lam = mu + shift
        if sl_b2.space.pair(shift, mu).denominator != 1:
            continue
        gap = conformal_dim(sl_b2, lam) - conformal_dim(sl_b2, mu)
        assert gap.denominator == 1
        count += 1
