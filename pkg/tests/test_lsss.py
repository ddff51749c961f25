import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from agshare import instances
from agshare.errors import PreconditionError, UnqualifiedSetError
from agshare.lsss import (AccessStructure, Scheme, ShareVector, cheat_parameters, is_Q2, is_Q3,
                          is_qualified, is_qualified_lemma1, minimal_access_structure,
                          multiplicativity, privacy_audit, reconstruct, share,
                          strong_multiplicativity, theorem1_check, threshold_check)
from agshare.code import LinearCode
from agshare.gf import field_new


@pytest.fixture(scope="module")
def ex1_access(ex1_scheme):
    return minimal_access_structure(ex1_scheme)


def complement(n, A):
    return tuple(i for i in range(1, n + 1) if i not in A)


def test_example1_scheme_shape(ex1_scheme):
    assert ex1_scheme.n == 8
    assert (ex1_scheme.code.N, ex1_scheme.k) == (9, 6)
    assert ex1_scheme.complexity == 8


def test_klein_scheme_shape():
    s = instances.klein_scheme()
    assert s.n == 21 and (s.code.N, s.k) == (22, 19)


def test_degenerate_schemes_rejected():
    F = field_new(5)
    with pytest.raises(PreconditionError):
        Scheme(LinearCode(F, [[1, 1]]))                 # n = 1
    with pytest.raises(PreconditionError):
        Scheme(LinearCode(F, [[0, 1, 1], [0, 1, 2]]))   # m_0 = 0
    with pytest.raises(PreconditionError):
        Scheme(LinearCode(F, [[1, 0, 1], [0, 0, 2]]))   # zero column


def test_share_is_codeword_and_reproducible(ex1_scheme):
    a = share(ex1_scheme, 4, random.Random(3))
    b = share(ex1_scheme, 4, random.Random(3))
    assert a == b
    assert ex1_scheme.code.contains(a.codeword)


class ZeroRng:
    def randrange(self, q):
        return 0


def test_zero_secret_zero_randomness(ex1_scheme):
    assert share(ex1_scheme, 0, ZeroRng()).shares == (0,) * 8


def test_shares_uniform_over_randomness(ex1_scheme):
    # each share coordinate is uniform over the q^(k-1) dealer choices
    from agshare.lsss import _restricted_distribution
    for i in range(1, 9):
        d = _restricted_distribution(ex1_scheme, (i,), 3, 10 ** 6)
        counts = [int((d[:, 0] == v).sum()) for v in range(7)]
        assert counts == [7 ** 4] * 7


def test_reconstruction_examples(ex1_scheme):
    sv = share(ex1_scheme, 5, random.Random(1))
    A = complement(8, (1, 3))
    assert reconstruct(ex1_scheme, A, sv) == 5
    assert reconstruct(ex1_scheme, range(1, 9), sv) == 5
    with pytest.raises(UnqualifiedSetError):
        reconstruct(ex1_scheme, (1,), sv)
    with pytest.raises(ValueError):
        reconstruct(ex1_scheme, A, {1: 0})


def test_qualified_examples(ex1_scheme):
    assert not is_qualified(ex1_scheme, ())
    assert all(is_qualified(ex1_scheme, A) for A in itertools.combinations(range(1, 9), 7))
    assert not is_qualified(ex1_scheme, complement(8, (1, 6)))


@pytest.mark.parametrize("which", ["ex1", "ex2", "shamir"])
def test_lemma1_agrees_with_rank_test(which):
    s = {"ex1": instances.example1_scheme, "ex2": instances.example2_scheme,
         "shamir": lambda: instances.shamir_scheme(7, 6, 2)}[which]()
    for r in range(s.n + 1):
        for A in itertools.combinations(range(1, s.n + 1), r):
            assert is_qualified(s, A) == is_qualified_lemma1(s, A)


def test_example1_access_structure(ex1_access, ex1_scheme):
    assert ex1_access.sizes() == {5: 5, 6: 10}
    other = minimal_access_structure(ex1_scheme, method="subsets")
    assert other == ex1_access
    assert threshold_check(ex1_access) is None


def test_example2_not_threshold():
    a = minimal_access_structure(instances.example2_scheme())
    assert threshold_check(a) is None


@pytest.mark.parametrize("q,n,m", [(7, 4, 2), (7, 6, 2), (11, 9, 4), (5, 4, 0)])
def test_genus0_is_threshold(q, n, m):
    a = minimal_access_structure(instances.shamir_scheme(q, n, m))
    t = n - m
    assert set(a.minimal) == set(itertools.combinations(range(1, n + 1), t))
    assert threshold_check(a) == t


def test_access_structure_antichain():
    with pytest.raises(ValueError):
        AccessStructure(3, ((1,), (1, 2)))


def test_monotone(ex1_access):
    table = ex1_access.qualified_table()
    for mask in range(256):
        if table[mask]:
            assert all(table[mask | (1 << i)] for i in range(8))


def test_cheat_example1(ex1_scheme, ex1_access):
    r = cheat_parameters(ex1_scheme, ex1_access)
    assert r.max_unqualified == 6 and r.d_cheat == 2
    f = cheat_parameters(instances.example1_scheme(variant="functional"))
    assert f.bounds == (5, 7)
    assert f.to_dict()["bounds_apply"]


@pytest.mark.parametrize("n,m", [(4, 1), (6, 3), (8, 5)])
def test_cheat_shamir_functional(n, m):
    r = cheat_parameters(instances.shamir_scheme(11, n, m, variant="functional"))
    assert r.d_min == r.d_cheat == n - m
    assert r.within_bounds


@pytest.mark.parametrize("t", [2, 3, 4])
def test_q2_q3_threshold(t):
    n = 2 * t - 1
    a = AccessStructure(n, tuple(itertools.combinations(range(1, n + 1), t)))
    assert is_Q2(a)
    assert not is_Q3(a)


def test_q2_degenerate_single_participant():
    assert is_Q2(AccessStructure(1, ((1,),)))
    assert not is_Q2(AccessStructure(1, ()))


def test_m6_scheme_q2_and_multiplicative(ex1_m6_scheme):
    a = minimal_access_structure(ex1_m6_scheme)
    assert is_Q2(a)
    assert multiplicativity(ex1_m6_scheme) is not None


def test_shamir_multiplicativity():
    s = instances.shamir_scheme(7, 4, 2)
    r = multiplicativity(s)
    assert r is not None and len(r) == 4
    assert strong_multiplicativity(instances.shamir_scheme(7, 6, 4)) is not None
    assert multiplicativity(instances.shamir_scheme(7, 4, 1)) is None


def check_witness(s, r, seed, pairs=100):
    F = s.field
    rnd = random.Random(seed)
    for _ in range(pairs):
        a, b = rnd.randrange(F.q), rnd.randrange(F.q)
        x, y = share(s, a, rnd), share(s, b, rnd)
        acc = 0
        for ri, u, v in zip(r, x.shares, y.shares):
            acc = F.add(acc, F.mul(ri, F.mul(u, v)))
        if acc != F.mul(a, b):
            return False
    return True


def test_witness_validity(ex1_m6_scheme):
    assert check_witness(ex1_m6_scheme, multiplicativity(ex1_m6_scheme), 0)
    s = instances.shamir_scheme(7, 6, 4)
    for A, r in strong_multiplicativity(s).items():
        full = [0] * s.n
        for i, c in zip(A, r):
            full[i - 1] = c
        assert check_witness(s, full, 1, pairs=20)


CORPUS = [("ex1", m) for m in range(3, 8)] + [("ex2", m) for m in range(3, 7)] + \
         [("g0", m) for m in range(0, 8)]


def corpus_scheme(kind, m):
    if kind == "ex1":
        return instances.example1_scheme(m=m)
    if kind == "ex2":
        E = instances.hermitian_curve()
        from agshare.lsss import scheme_from_ag
        return scheme_from_ag(E, instances.hermitian_points(E), m)
    return instances.shamir_scheme(11, 8, m)


@pytest.mark.parametrize("kind,m", CORPUS)
def test_sufficient_conditions_never_fail(kind, m):
    try:
        s = corpus_scheme(kind, m)
    except PreconditionError:
        pytest.skip("not constructible")
    g, n = s.provenance["genus"], s.n
    a = minimal_access_structure(s)
    if m >= n / 2 + 2 * g:
        assert multiplicativity(s) is not None
        assert is_Q2(a)
    if m >= 2 * n / 3 + 2 * g:
        assert strong_multiplicativity(s, a) is not None
        assert is_Q3(a)
    t1 = theorem1_check(s, a)
    assert t1["below_unqualified"] and t1["above_qualified"]


def test_privacy(ex1_scheme, ex1_access):
    assert privacy_audit(ex1_scheme, (), 0, 1).identical
    v = privacy_audit(ex1_scheme, (1, 2, 3, 4), 0, 1)
    assert v.identical and not v.qualified and v.consistent
    v = privacy_audit(ex1_scheme, ex1_access.minimal[0], 0, 1)
    assert not v.identical and v.qualified


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 6), st.integers(0, 10 ** 6), st.data())
def test_round_trip_minimal_sets(secret, seed, data):
    s = instances.example1_scheme()
    a = minimal_access_structure(s)
    A = data.draw(st.sampled_from(a.minimal))
    sv = share(s, secret, random.Random(seed))
    assert reconstruct(s, A, sv) == secret


def test_thousand_round_trips(ex1_scheme, ex1_access):
    rnd = random.Random(2024)
    for _ in range(1000):
        secret = rnd.randrange(7)
        sv = share(ex1_scheme, secret, rnd)
        A = rnd.choice(ex1_access.minimal)
        assert reconstruct(ex1_scheme, A, sv) == secret


def test_share_vector_restrict():
    sv = ShareVector(1, (4, 5, 6))
    assert sv.restrict((1, 3)) == {1: 4, 3: 6}
    assert sv.codeword == (1, 4, 5, 6)
