"""Hive arrays: rhombus inequalities, counting, and honeycomb duality."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hivecomb import (BoundaryTriple, Hive, HiveShape, RhombusViolation,
                      boundary_from_weights, bz_pattern, bz_rows,
                      count_gt_patterns, count_lattice_hives,
                      decompose_tensor_product, degeneracy_graph,
                      dominant_vectors, enumerate_lattice_hives,
                      exists_lattice_hive, flatspace_decomposition,
                      hive_to_honeycomb, honeycomb_to_hive, rhombi,
                      rhombus_value, sigma_to_nu)
from hivecomb.hive import hive_index_of, root_of
from hivecomb import _kernels
from hivecomb.hive import (_fixed_rhombi_ok, _integral_boundary_array,
                           _kernel_plan)

ADJ = BoundaryTriple((2, 1, 0), (2, 1, 0), (-1, -2, -3))


def hives_for(lam, mu, nu):
    return enumerate_lattice_hives(BoundaryTriple(lam, mu, nu))


def random_triple(rng, n, span=5):
    """A random zero-sum dominant triple, not necessarily feasible."""
    lam = tuple(sorted((rng.randint(-span, span) for _ in range(n)), reverse=True))
    mu = tuple(sorted((rng.randint(-span, span) for _ in range(n)), reverse=True))
    rest = -(sum(lam) + sum(mu))
    nus = dominant_vectors(n, -3 * span, 3 * span, rest)
    return BoundaryTriple(lam, mu, rng.choice(nus)) if nus else None


def random_hive(rng, n, span=5):
    while True:
        t = random_triple(rng, n, span)
        if t is None:
            continue
        hs = enumerate_lattice_hives(t)
        if hs:
            return rng.choice(hs)


class TestShape:
    def test_sizes(self):
        for n in range(1, 7):
            s = HiveShape(n)
            assert s.size == (n + 1) * (n + 2) // 2
            assert len(list(s.indices())) == s.size
            assert len(list(s.interior())) == s.size - 3 * n
            assert len(list(s.boundary())) == 3 * n

    def test_rhombi_counts(self):
        for n, k in [(1, 0), (2, 3), (3, 9), (4, 18), (5, 30)]:
            assert len(rhombi(n)) == k

    def test_rhombi_against_adjacency(self):
        # every rhombus is two unit triangles glued along an interior edge,
        # so the count must match a direct scan over adjacent index pairs
        for n in range(1, 6):
            found = set()
            pts = set(HiveShape(n).indices())
            for (i, j) in pts:
                for s in ((0, 1), (1, 0), (1, -1)):
                    q = (i + s[0], j + s[1])
                    if q not in pts:
                        continue
                    for r in rhombi(n):
                        if set(r.obtuse) == {(i, j), q}:
                            found.add(r)
            assert found == set(rhombi(n))

    def test_root_roundtrip(self):
        for n in range(1, 6):
            for p in HiveShape(n).indices():
                r = root_of(n, *p)
                assert sum(r) == 0
                assert hive_index_of(n, r) == p


class TestHiveBasics:
    def test_fraction_coercion(self):
        h = Hive(1, ["1/2", 1, 0])
        assert h.value(0, 0) == Fraction(1, 2)
        assert h.value(1, 0) == 1
        assert all(isinstance(x, Fraction) for x in h.entries)

    def test_length_check(self):
        with pytest.raises(ValueError):
            Hive(2, [0, 1, 2])

    def test_boundary_walk_n2(self):
        t = BoundaryTriple((1, 0), (1, 0), (-1, -1))
        b = boundary_from_weights(t)
        h = Hive(2, [b.get((i, j), 0) for r in range(3)
                     for (i, j) in [(r - k, k) for k in range(r + 1)]])
        walk = [h.value(0, 0), h.value(1, 0), h.value(2, 0),
                h.value(1, 1), h.value(0, 2), h.value(0, 1)]
        assert walk == [0, 1, 1, 2, 2, 1]

    def test_boundary_walk_n3(self):
        hs = enumerate_lattice_hives(ADJ)
        h = hs[0]
        walk = [h.value(*p) for p in
                [(0, 0), (1, 0), (2, 0), (3, 0), (2, 1), (1, 2),
                 (0, 3), (0, 2), (0, 1)]]
        assert walk == [0, 2, 3, 3, 5, 6, 6, 5, 3]

    def test_boundary_triple_roundtrip(self):
        rng = random.Random(5)
        for _ in range(20):
            h = random_hive(rng, rng.randint(1, 4))
            b = boundary_from_weights(h.boundary_triple())
            for p, v in b.items():
                assert h.value(*p) == v

    def test_first_violation_order_and_is_valid(self):
        hs = enumerate_lattice_hives(ADJ)
        assert all(h.is_valid for h in hs)
        bad = hs[0].replaced((1, 1), 100)
        v = bad.first_violation()
        assert v is not None and rhombus_value(bad, v) < 0
        with pytest.raises(RhombusViolation):
            hive_to_honeycomb(bad)


class TestCounting:
    def test_adjoint_square(self):
        assert count_lattice_hives(ADJ) == 2
        hs = enumerate_lattice_hives(ADJ)
        assert [h.value(1, 1) for h in hs] == [4, 5]
        assert hs == sorted(hs, key=lambda h: h.entries)

    def test_enumeration_is_sorted_and_valid(self):
        rng = random.Random(11)
        for _ in range(25):
            t = random_triple(rng, rng.randint(1, 4))
            if t is None:
                continue
            hs = enumerate_lattice_hives(t)
            assert len(hs) == count_lattice_hives(t)
            assert hs == sorted(hs, key=lambda h: h.entries)
            for h in hs:
                assert h.is_valid and h.is_integral
                assert h.boundary_triple() == t

    def test_exists_matches_count(self):
        rng = random.Random(13)
        for _ in range(40):
            t = random_triple(rng, rng.randint(1, 4), span=3)
            if t is None:
                continue
            assert exists_lattice_hive(t) == (count_lattice_hives(t) > 0)

    def test_gl2_triangle_inequalities(self):
        # one-row separations: count is 1 exactly when each weight's
        # separation is at most the sum of the other two
        for l1 in range(-3, 4):
            for l2 in range(l1 - 3, l1 + 1):
                for m1 in range(-3, 4):
                    for m2 in range(m1 - 3, m1 + 1):
                        tot = l1 + l2 + m1 + m2
                        for n1 in range(-6, 7):
                            n2 = -tot - n1
                            if n2 > n1:
                                continue
                            t = BoundaryTriple((l1, l2), (m1, m2), (n1, n2))
                            a, b, c = l1 - l2, m1 - m2, n1 - n2
                            ok = a <= b + c and b <= a + c and c <= a + b
                            assert count_lattice_hives(t) == (1 if ok else 0)

    def test_rotation_invariance(self):
        rng = random.Random(17)
        for _ in range(15):
            t = random_triple(rng, rng.randint(2, 4), span=3)
            if t is None:
                continue
            c = count_lattice_hives(t)
            assert count_lattice_hives(t.rotated()) == c
            assert count_lattice_hives(t.twisted(2, -1)) == c

    def test_nonintegral_boundary_rejected(self):
        t = BoundaryTriple(("1/2", 0), (1, 0), ("-1/2", -1))
        with pytest.raises(ValueError):
            count_lattice_hives(t)

    def test_kernels_agree(self):
        rng = random.Random(19)
        for _ in range(20):
            t = random_triple(rng, rng.randint(2, 5), span=4)
            if t is None:
                continue
            plan = _kernel_plan(t.n)
            ent, boundary = _integral_boundary_array(t)
            if not _fixed_rhombi_ok(t.n, boundary):
                assert count_lattice_hives(t) == 0
                continue
            np_count = _kernels.count_numpy(ent.copy(), *plan)
            nb_count = _kernels.count_numba(ent.copy(), *plan)
            assert np_count == nb_count == count_lattice_hives(t)


class TestDecompose:
    def test_adjoint_square_multiset(self):
        got = decompose_tensor_product((2, 1, 0), (2, 1, 0))
        assert got == {(4, 2, 0): 1, (3, 2, 1): 2, (4, 1, 1): 1,
                       (3, 3, 0): 1, (2, 2, 2): 1}
        assert sum(got.values()) == 6

    def test_trivial_factor(self):
        assert decompose_tensor_product((3, 1, 0), (0, 0, 0)) == {(3, 1, 0): 1}

    def test_gl2_clebsch_gordan(self):
        got = decompose_tensor_product((2, 0), (1, -1))
        assert got == {(3, -1): 1, (2, 0): 1, (1, 1): 1}

    def test_consistent_with_counts(self):
        for sigma, mult in decompose_tensor_product((2, 1, 0), (2, 1, 0)).items():
            t = BoundaryTriple((2, 1, 0), (2, 1, 0), sigma_to_nu(sigma))
            assert count_lattice_hives(t) == mult


class TestGT:
    def test_frozen_counts(self):
        assert count_gt_patterns((1, 0)) == 2
        assert count_gt_patterns((3, 1)) == 3
        assert count_gt_patterns((2, 1, 0)) == 8
        assert count_gt_patterns((2, 0, -2)) == 27

    def test_nonintegral_rejected(self):
        with pytest.raises(ValueError):
            count_gt_patterns(("1/2", 0))


class TestHoneycombDuality:
    def test_roundtrip_adjoint(self):
        for H in enumerate_lattice_hives(ADJ):
            assert honeycomb_to_hive(hive_to_honeycomb(H)) == H

    def test_roundtrip_random(self):
        rng = random.Random(23)
        for _ in range(20):
            H = random_hive(rng, rng.randint(1, 5))
            h = hive_to_honeycomb(H)
            assert honeycomb_to_hive(h) == H
            assert h.boundary_conditions() == boundary_conditions_of(H)

    def test_edge_lengths_are_rhombus_values(self):
        rng = random.Random(29)
        for _ in range(10):
            H = random_hive(rng, rng.randint(2, 4))
            h = hive_to_honeycomb(H)
            dual = {}
            from hivecomb.honeycomb import dual_graph
            dg = dual_graph(h.tinkertoy)
            for e in h.tinkertoy.edges:
                if e.is_boundary:
                    continue
                p, q = dg.dual_of[e]
                dual[frozenset((hive_index_of(H.n, p), hive_index_of(H.n, q)))] = \
                    h.edge_length(e)
            for r in rhombi(H.n):
                key = frozenset(r.obtuse)
                if key in dual:
                    assert dual[key] == rhombus_value(H, r)

    def test_constant_hive_collapses(self):
        t = BoundaryTriple((1, 1, 1), (2, 2, 2), (-3, -3, -3))
        (H,) = enumerate_lattice_hives(t)
        h = hive_to_honeycomb(H)
        assert len(set(h.positions.values())) == 1


def boundary_conditions_of(H):
    return hive_to_honeycomb(H).boundary_conditions()


class TestFlatspace:
    def test_adjoint_pair(self):
        h4, h5 = enumerate_lattice_hives(ADJ)
        sizes4 = sorted(len(r) for r in flatspace_decomposition(h4))
        sizes5 = sorted(len(r) for r in flatspace_decomposition(h5))
        assert sizes4 == [1, 1, 1, 6]
        assert sizes5 == [1, 1, 1, 2, 2, 2]

    def test_matches_degeneracy_regions(self):
        rng = random.Random(31)
        for _ in range(12):
            H = random_hive(rng, rng.randint(2, 4))
            parts = flatspace_decomposition(H)
            regions = degeneracy_graph(hive_to_honeycomb(H)).regions
            assert parts == frozenset(frozenset(r.members) for r in regions)


class TestBZ:
    def pattern_rows(self, H):
        h = hive_to_honeycomb(H)
        return bz_pattern(h), bz_rows(H.n), h

    def test_row_sums(self):
        rng = random.Random(37)
        for _ in range(20):
            H = random_hive(rng, rng.randint(2, 5))
            t = H.boundary_triple()
            n = H.n
            pat, (f0, f1, f2), _ = self.pattern_rows(H)
            for c in range(1, n):
                assert sum(pat[p] for p in f0[c - 1]) == t.nu[n - c - 1] - t.nu[n - c]
                assert sum(pat[p] for p in f1[c - 1]) == t.mu[n - c - 1] - t.mu[n - c]
                assert sum(pat[p] for p in f2[c - 1]) == t.lam[c - 1] - t.lam[c]

    def test_partial_sums_are_edge_lengths(self):
        rng = random.Random(41)
        for _ in range(15):
            H = random_hive(rng, rng.randint(2, 5))
            pat, fams, h = self.pattern_rows(H)
            lengths = {h.edge_length(e) for e in h.tinkertoy.edges
                       if not e.is_boundary}
            for fam in fams:
                for row in fam:
                    acc = Fraction(0)
                    for k, p in enumerate(row):
                        acc += pat[p]
                        assert acc >= 0
                        if k < len(row) - 1:
                            assert acc in lengths

    def test_rotation_covariance(self):
        # reading the same honeycomb with boundary roles rotated permutes
        # the pattern by the 120-degree index rotation
        rng = random.Random(43)
        for _ in range(10):
            H = random_hive(rng, rng.randint(2, 4))
            n = H.n
            pat = bz_pattern(hive_to_honeycomb(H))
            t = H.boundary_triple().rotated()
            hs = [g for g in enumerate_lattice_hives(t)
                  if bz_pattern(hive_to_honeycomb(g)) ==
                  {(j, n - i - j): v for (i, j), v in pat.items()}]
            assert hs

    def test_fully_degenerate_is_zero(self):
        t = BoundaryTriple((1, 1, 1), (2, 2, 2), (-3, -3, -3))
        (H,) = enumerate_lattice_hives(t)
        pat = bz_pattern(hive_to_honeycomb(H))
        assert all(v == 0 for v in pat.values())

    def test_adjoint_pair_distinct(self):
        h4, h5 = enumerate_lattice_hives(ADJ)
        assert bz_pattern(hive_to_honeycomb(h4)) != \
            bz_pattern(hive_to_honeycomb(h5))

    def test_keys(self):
        for n in (2, 3, 4):
            t = BoundaryTriple((n,) * n, (n,) * n, (-2 * n,) * n)
            (H,) = enumerate_lattice_hives(t)
            pat = bz_pattern(hive_to_honeycomb(H))
            corners = {(0, 0), (n, 0), (0, n)}
            assert set(pat) == set(HiveShape(n).indices()) - corners


small_weight = st.integers(min_value=-3, max_value=3)


@st.composite
def feasible_triples(draw):
    n = draw(st.integers(min_value=1, max_value=3))
    lam = tuple(sorted((draw(small_weight) for _ in range(n)), reverse=True))
    mu = tuple(sorted((draw(small_weight) for _ in range(n)), reverse=True))
    rest = -(sum(lam) + sum(mu))
    nus = dominant_vectors(n, -9, 9, rest)
    if not nus:
        return None
    return BoundaryTriple(lam, mu, nus[draw(st.integers(0, len(nus) - 1))])


@settings(max_examples=60, deadline=None)
@given(feasible_triples())
def test_property_enumeration(t):
    if t is None:
        return
    hs = enumerate_lattice_hives(t)
    assert len(hs) == count_lattice_hives(t)
    for h in hs:
        assert h.is_valid and h.is_integral
        assert all(rhombus_value(h, r) >= 0 for r in rhombi(h.n))
        assert h.value(0, 0) == 0


@settings(max_examples=40, deadline=None)
@given(feasible_triples())
def test_property_rotation(t):
    if t is None:
        return
    assert count_lattice_hives(t.rotated()) == count_lattice_hives(t)
