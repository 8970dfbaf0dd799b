import itertools
import json
from math import comb, factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conjalg.errors import AmbientMismatch, DegreeMismatch, FamilyMismatch, SizeMismatch
from conjalg.partial import (
    LocalBijection,
    PartialBijection,
    iota,
    lb_conjugate,
    lb_product,
    pb_count,
    pb_enumerate,
    pb_inverse,
    pb_product,
    theta,
)
from conjalg.perm import GroupElement, Permutation, parse_element

from .conftest import FAMILIES, FULL1, S1, local_bijections, perms


def brute_force_pbs(k, n):
    """Every set of pairs that is injective both ways, by filtering all subsets."""
    pairs = [(x, y) for x in range(1, k + 1) for y in range(1, n + 1)]
    out = set()
    for r in range(min(k, n) + 1):
        for subset in itertools.combinations(pairs, r):
            xs = {x for x, _ in subset}
            ys = {y for _, y in subset}
            if len(xs) == len(ys) == r:
                out.add(subset)
    return out


class TestEnumerate:
    def test_empty_source(self):
        assert pb_enumerate(0, 5) == [PartialBijection(0, 5)]

    def test_two_two(self):
        lams = pb_enumerate(2, 2)
        assert len(lams) == 7
        assert [lam.rank for lam in lams] == [0, 1, 1, 1, 1, 2, 2]

    def test_one_three(self):
        assert len(pb_enumerate(1, 3)) == 4 == 1 + 3

    @pytest.mark.parametrize("k,n", [(k, n) for k in range(6) for n in range(6)])
    def test_count_formula(self, k, n):
        lams = pb_enumerate(k, n)
        assert len(lams) == sum(comb(k, d) * comb(n, d) * factorial(d) for d in range(min(k, n) + 1))
        assert len(lams) == pb_count(k, n)
        assert len(set(lams)) == len(lams)

    @pytest.mark.parametrize("k,n", [(k, n) for k in range(4) for n in range(4)])
    def test_matches_brute_force(self, k, n):
        assert {lam.pairs for lam in pb_enumerate(k, n)} == brute_force_pbs(k, n)

    def test_order_is_rank_major_then_lexicographic(self):
        lams = pb_enumerate(3, 3)
        keys = [(lam.rank, lam.pairs) for lam in lams]
        assert keys == sorted(keys)


class TestProduct:
    def test_empty_left(self):
        mu = PartialBijection(2, 2, ((1, 2),))
        assert (PartialBijection(2, 3) * mu).rank == 0

    def test_identity_left(self):
        ident = PartialBijection(3, 3, ((1, 1), (2, 2), (3, 3)))
        for mu in pb_enumerate(2, 3):
            assert ident * mu == mu

    def test_hand_example(self):
        lam = PartialBijection(2, 2, ((1, 2),))
        mu = PartialBijection(2, 2, ((2, 1),))
        assert pb_product(lam, mu) == PartialBijection(2, 2, ((2, 2),))

    def test_size_mismatch(self):
        with pytest.raises(SizeMismatch):
            PartialBijection(2, 2) * PartialBijection(2, 3)

    def test_pointwise_definition(self):
        for lam in pb_enumerate(2, 3):
            for mu in pb_enumerate(3, 2):
                prod = lam * mu
                expected = {}
                for w in range(1, 4):
                    m = dict(mu.pairs)
                    if w in m and m[w] in dict(lam.pairs):
                        expected[w] = dict(lam.pairs)[m[w]]
                assert prod.as_dict() == expected

    def test_associative_and_inverse_exhaustive(self):
        sizes = range(4)
        for a, b, c, d in itertools.product(sizes, repeat=4):
            for nu in pb_enumerate(a, b):
                assert pb_inverse(pb_inverse(nu)) == nu
                for mu in pb_enumerate(b, c):
                    numu = mu * nu
                    assert numu.rank <= min(mu.rank, nu.rank)
                    if d > 2 and (a, b, c) != (3, 3, 3):
                        continue
                    for lam in pb_enumerate(c, d):
                        assert (lam * mu) * nu == lam * numu

    def test_invalid(self):
        with pytest.raises(ValueError):
            PartialBijection(2, 2, ((1, 1), (1, 2)))
        with pytest.raises(ValueError):
            PartialBijection(2, 2, ((3, 1),))


class TestTheta:
    def test_examples(self):
        assert theta(0, 4) == PartialBijection(0, 4)
        assert theta(2, 0) == PartialBijection(2, 2, ((1, 1), (2, 2)))
        assert theta(2, 3) == PartialBijection(2, 5, ((1, 4), (2, 5)))
        assert theta(3, 2).rank == 3


class TestLocalBijections:
    def test_empty_supports(self):
        u = LocalBijection.unit(FULL1, 3)
        assert (u * u) == u
        assert (u * u).omega == ()

    def test_disjoint_supports(self):
        a = LocalBijection((1, 2), parse_element(S1, "(1 2)@4"))
        b = LocalBijection((3, 4), parse_element(S1, "(3 4)"))
        c = a * b
        assert c.omega == (1, 2, 3, 4)
        assert c.element == parse_element(S1, "(1 2)(3 4)")
        assert c == b * a

    def test_overlapping_supports(self):
        a = LocalBijection((1, 2), parse_element(S1, "(1 2)@3"))
        b = LocalBijection((2, 3), parse_element(S1, "(2 3)"))
        c = lb_product(a, b)
        assert c.omega == (1, 2, 3)
        # x -> (1 2)((2 3)(x)): 1 -> 2, 2 -> 3, 3 -> 1
        assert c.element.rows[0].images == (1, 2, 0)

    def test_support_declared_not_minimal(self):
        a = LocalBijection((1, 2, 3), GroupElement.identity(S1, 3))
        assert iota(a).is_identity()
        with pytest.raises(ValueError):
            LocalBijection((1,), parse_element(S1, "(1 2)"))

    def test_mismatch(self):
        with pytest.raises(FamilyMismatch):
            LocalBijection.unit(S1, 2) * LocalBijection.unit(FULL1, 2)
        with pytest.raises(AmbientMismatch):
            LocalBijection.unit(S1, 2) * LocalBijection.unit(S1, 3)
        with pytest.raises(DegreeMismatch):
            LocalBijection.unit(S1, 2).conjugate(Permutation.identity(3))

    def test_conjugate_examples(self):
        a = LocalBijection((1,), GroupElement.identity(S1, 3))
        assert lb_conjugate(Permutation.identity(3), a) == a
        sigma = Permutation((2, 1, 0))  # (1 3)
        assert lb_conjugate(sigma, a).omega == (3,)
        b = LocalBijection((1, 2), parse_element(S1, "(1 2)@4"))
        fixing = Permutation((0, 1, 3, 2))
        assert b.conjugate(fixing) == b

    def test_iota_examples(self):
        assert iota(LocalBijection.unit(S1, 3)).is_identity()
        g = parse_element(S1, "(1 3 2)")
        assert iota(LocalBijection((1, 2, 3), g)) == g

    @pytest.mark.parametrize("fam", FAMILIES)
    @given(data=st.data(), N=st.integers(0, 4))
    def test_semigroup_laws(self, fam, data, N):
        a, b, c = (data.draw(local_bijections(fam, N)) for _ in range(3))
        assert (a * b) * c == a * (b * c)
        unit = LocalBijection.unit(fam, N)
        assert unit * a == a == a * unit
        assert iota(a * b) == iota(a) * iota(b)
        sigma = data.draw(perms(N))
        assert (a * b).conjugate(sigma) == a.conjugate(sigma) * b.conjugate(sigma)
        assert iota(a.conjugate(sigma)) == iota(a).conjugate(sigma)
        assert len(a.conjugate(sigma).omega) == len(a.omega)

    def test_json(self):
        a = LocalBijection((1, 2), parse_element(S1, "(1 2)@3"))
        assert json.loads(a.to_json()) == {"N": 3, "Omega": [1, 2], "body": "(1 2)"}
