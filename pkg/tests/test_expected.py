import random

import pytest
import sympy
from hypothesis import given, strategies as st

from shiftcodim.errors import DisconnectedInput, NotInFamily
from shiftcodim.expected import (
    SetFamily,
    cyclic_interval,
    cyclic_interval_family,
    ec_from_s,
    ec_from_s_euler,
    ec_report,
    expected_codim,
    flacets,
    s_polynomial,
    tutte_polynomial,
    x,
    y,
    z,
)
from shiftcodim.matroid import Matroid, elements, mask

from helpers import (
    PAPPUS_LINES,
    components_of,
    contraction_components,
    line_mask,
    pappus,
    random_basis_matroid,
    random_matroid,
    square,
)

seeds = st.integers(0, 2**32 - 1)
LOOP = Matroid.uniform(0, 1)
COLOOP = Matroid.uniform(1, 1)


def random_family(rng, n, must=()):
    fam = {S for S in range(1 << n) if rng.random() < 0.5}
    fam.update(must)
    return SetFamily(n, sorted(fam))


class TestMobius:
    def test_boolean_lattice(self):
        assert SetFamily.all(2).mobius(0, {1, 2}) == 1
        assert SetFamily.all(3).mobius(0, {1, 2, 3}) == -1
        assert SetFamily.all(3).mobius({1}, {2}) == 0

    def test_small_family(self):
        F = SetFamily(3, [{1}, {1, 2}, {1, 3}, {1, 2, 3}])
        assert F.mobius({1}, {1, 2, 3}) == 1
        assert F.mobius({1, 2}, {1, 3}) == 0

    @given(seeds)
    def test_diagonal_and_recursion(self, seed):
        rng = random.Random(seed)
        n = rng.randint(1, 5)
        F = random_family(rng, n)
        for S in F:
            assert F.mobius(S, S) == 1
        for T in F:
            for S in F:
                if T & ~S or T == S:
                    assert T == S or F.mobius(T, S) == 0
                    continue
                inside = [U for U in F if T & ~U == 0 and U & ~S == 0 and U != S]
                assert F.mobius(T, S) == -sum(F.mobius(T, U) for U in inside)

    def test_explicit_power_set_matches_closed_form(self):
        F = SetFamily(3, range(8))
        A = SetFamily.all(3)
        assert all(F.mobius(T, S) == A.mobius(T, S) for T in range(8) for S in range(8))

    def test_not_in_family(self):
        with pytest.raises(NotInFamily):
            SetFamily(3, [{1}]).mobius({2}, {1})
        with pytest.raises(ValueError):
            SetFamily(3, [{1}, {1}])


class TestExpectedCodimension:
    def test_square(self):
        assert expected_codim(square()) == 4

    def test_pappus_lines(self):
        P = pappus()
        assert expected_codim(P, [line_mask(s) for s in PAPPUS_LINES]) == 9
        assert expected_codim(P) == 9

    @pytest.mark.parametrize("k,n", [(0, 3), (1, 4), (2, 4), (3, 5), (5, 5)])
    def test_uniform_is_zero(self, k, n):
        assert expected_codim(Matroid.uniform(k, n)) == 0

    def test_square_a_values(self):
        rep = ec_report(square())
        lines = {cyclic_interval(i, i + 2, 8) for i in (1, 3, 5, 7)}
        assert all(rep.a_of(L) == 1 for L in lines)
        assert rep.mu(0, {1, 2}) == 1

    @given(seeds)
    def test_a_and_b_routes_and_dense_path(self, seed):
        M = random_matroid(random.Random(seed), max_n=5)
        fast = ec_report(M)
        dense = ec_report(M, SetFamily(M.n, range(1 << M.n)))
        assert fast.ec == dense.ec
        assert list(fast.a) == list(dense.a) and list(fast.b) == list(dense.b)
        assert (fast.c >= 0).all()

    @given(seeds)
    def test_nullity_is_sum_of_a_on_downsets(self, seed):
        rng = random.Random(seed)
        M = random_matroid(rng, max_n=5)
        tops = [rng.randint(0, M.full) for _ in range(3)]
        down = SetFamily(M.n, [S for S in range(1 << M.n) if any(S & ~t == 0 for t in tops)])
        rep = ec_report(M, down)
        for S in down:
            assert rep.c_of(S) == sum(rep.a_of(T) for T in down if T & ~S == 0)


class TestIdentities:
    @given(seeds, st.data())
    def test_removal(self, seed, data):
        rng = random.Random(seed)
        M = random_matroid(rng)
        Z = data.draw(st.integers(0, M.full))
        F = random_family(rng, M.n, must=[Z])
        G = F.without(Z)
        rF, rG = ec_report(M, F), ec_report(M, G)
        aZ, bZ = rF.a_of(Z), rF.b_of(Z)
        assert rF.ec - rG.ec == aZ * bZ
        for S in G:
            assert rF.a_of(S) - rG.a_of(S) == aZ * F.mobius(Z, S)
            assert rF.b_of(S) - rG.b_of(S) == F.mobius(S, Z) * bZ

    @given(seeds)
    def test_disconnected_sets_have_no_a(self, seed):
        M = random_matroid(random.Random(seed))
        rep = ec_report(M)
        for S in range(1 << M.n):
            if S.bit_count() > 1 and not M.restrict(S).is_connected():
                assert rep.a_of(S) == 0
            if S != M.full and not M.contract(S).is_connected():
                assert rep.b_of(S) == 0

    @given(seeds)
    def test_disconnected_sets_in_component_closed_family(self, seed):
        rng = random.Random(seed)
        M = random_matroid(rng)
        fam = {S for S in range(1 << M.n) if rng.random() < 0.4}
        todo = list(fam)
        while todo:
            for comp in components_of(M, todo.pop()):
                if comp not in fam:
                    fam.add(comp)
                    todo.append(comp)
        rep = ec_report(M, SetFamily(M.n, sorted(fam)))
        for S in fam:
            if len(components_of(M, S)) > 1:
                assert rep.a_of(S) == 0

    def test_direct_sum_disconnection_by_construction(self):
        M = square().restrict(mask(range(1, 6))).direct_sum(Matroid.uniform(1, 2))
        rep = ec_report(M)
        for S in range(1 << M.n):
            if S & 0b11111 and S >> 5:
                assert rep.a_of(S) == 0

    @given(seeds)
    def test_duality(self, seed):
        rng = random.Random(seed)
        M = random_matroid(rng)
        F = random_family(rng, M.n)
        Fd = F.complement()
        D = M.dual()
        rM, rD = ec_report(M, F), ec_report(D, Fd)
        assert rM.ec == rD.ec
        for S in F:
            assert rM.a_of(S) == rD.b_of(M.full ^ S)

    @given(seeds)
    def test_flacet_invariance(self, seed):
        rng = random.Random(seed)
        M = random_basis_matroid(rng, max_n=7, min_n=2)
        if not M.is_connected():
            with pytest.raises(DisconnectedInput):
                flacets(M)
            return
        assert expected_codim(M, flacets(M)) == expected_codim(M)

    @given(seeds)
    def test_free_loop_coloop_extensions(self, seed):
        M = random_matroid(random.Random(seed), max_n=5)
        ec = expected_codim(M)
        assert expected_codim(M.free_extension()) == ec
        assert expected_codim(M.loop_extension()) == ec + M.k
        assert expected_codim(M.coloop_extension()) == ec + (M.n - M.k)

    @given(seeds)
    def test_direct_sum_formula(self, seed):
        rng = random.Random(seed)
        M, N = random_matroid(rng, max_n=3), random_matroid(rng, max_n=3)
        total = expected_codim(M.direct_sum(N))
        cross = N.k * (M.n - M.k) + M.k * (N.n - N.k)
        assert total == expected_codim(M) + expected_codim(N) + cross


class TestFlacets:
    def test_pappus(self):
        fl = set(flacets(pappus()))
        assert {line_mask(s) for s in PAPPUS_LINES} <= fl
        assert {1 << i for i in range(9)} <= fl
        extra = fl - {line_mask(s) for s in PAPPUS_LINES} - {1 << i for i in range(9)} - {0, (1 << 9) - 1}
        # the other flacets are the point complements, all of full rank
        assert extra == {((1 << 9) - 1) ^ (1 << i) for i in range(9)}
        assert all(pappus().rank(S) == 3 for S in extra)

    def test_square(self):
        fl = set(flacets(square()))
        assert {cyclic_interval(i, i + 2, 8) for i in (1, 3, 5, 7)} <= fl

    def test_uniform(self):
        U = Matroid.uniform(2, 4)
        assert expected_codim(U, flacets(U)) == 0

    def test_flacets_are_connected_both_ways(self):
        M = square()
        for S in flacets(M):
            assert M.restrict(S).is_connected() and M.contract(S).is_connected()
            assert len(contraction_components(M, S)) <= 1


class TestPolynomials:
    def test_small_s_polynomials(self):
        assert s_polynomial(COLOOP).as_expr() == 1 + y + z
        assert s_polynomial(LOOP).as_expr() == 1 + x + z
        assert s_polynomial(Matroid.uniform(1, 2)).as_expr() == x + y + z**2 + 4 * z + 2

    def test_small_tutte(self):
        assert tutte_polynomial(Matroid.uniform(1, 2)).as_expr() == x + y
        assert tutte_polynomial(COLOOP).as_expr() == y
        assert tutte_polynomial(LOOP).as_expr() == x

    @given(seeds)
    def test_tutte_is_classical_with_arguments_swapped(self, seed):
        M = random_matroid(random.Random(seed), max_n=5)
        classical = _deletion_contraction(M)
        swapped = sympy.expand(classical.subs({x: y, y: x}, simultaneous=True))
        assert sympy.expand(tutte_polynomial(M).as_expr() - swapped) == 0

    @given(seeds)
    def test_coefficients_and_pair_count(self, seed):
        M = random_matroid(random.Random(seed), max_n=5)
        s = s_polynomial(M)
        assert all(c > 0 for c in s.coeffs())
        assert sum(s.coeffs()) == 3**M.n

    def test_ec_from_s_on_named_matroids(self):
        assert ec_from_s(Matroid.uniform(1, 2)) == 0
        assert ec_from_s(square()) == 4
        assert ec_from_s(pappus()) == 9

    @given(seeds)
    def test_euler_form_matches_ec(self, seed):
        M = random_basis_matroid(random.Random(seed), max_n=6)
        assert ec_from_s_euler(M) == expected_codim(M)

    def test_mixed_partial_departs_from_ec(self):
        # the mixed partial at (0, 0, -1) only sees monomials of degree one in x and y
        M = Matroid.from_bases(5, [7, 11, 13, 14, 21, 25, 28])
        assert M.is_connected()
        assert expected_codim(M) == 2 and ec_from_s(M) == 0
        L = Matroid.uniform(2, 2).loop_extension()
        assert expected_codim(L) == 2 and ec_from_s(L) == 0


def _deletion_contraction(M: Matroid):
    if M.n == 0:
        return sympy.Integer(1)
    last = mask(range(2, M.n + 1))
    if M.rank(1) == 0:
        return y * _deletion_contraction(M.restrict(last))
    if M.coloops & 1:
        return x * _deletion_contraction(M.contract(1))
    return _deletion_contraction(M.restrict(last)) + _deletion_contraction(M.contract(1))
