import itertools
import random
from fractions import Fraction

import pytest

from homsec.classifier import certify_ideal
from homsec.enumeration import EnumerationFilter, enumerate_structures
from homsec.errors import CapExceeded, DimensionMismatch, FieldTooSmall, InconsistentShares, NotQualified
from homsec.gf import PrimeField
from homsec.linear_scheme import (
    LinearScheme,
    VectorAssignment,
    build_threshold_vectors,
    deal,
    deal_with_vector,
    information_rate,
    is_vector_space_structure,
    maximal_unqualified,
    rate_from_sizes,
    reconstruct,
    threshold_scheme,
    verify_correctness,
    verify_privacy,
)
from homsec.reduction import reduce
from homsec.structure import build, complete, is_threshold, members, pset

F5 = PrimeField(5)


def test_threshold_vectors_examples():
    asg = build_threshold_vectors(2, 3, F5)
    assert asg.participants == ((1, 1), (1, 2), (1, 3))
    assert asg.dealer == (1, 0)
    asg = build_threshold_vectors(3, 4, F5)
    assert asg.participants == ((1, 1, 1), (1, 2, 4), (1, 3, 4), (1, 4, 1))
    with pytest.raises(FieldTooSmall):
        build_threshold_vectors(2, 3, PrimeField(3))


def test_vector_space_examples():
    k23 = complete(3, 2)
    asg = build_threshold_vectors(2, 3, F5)
    assert is_vector_space_structure(k23, asg, F5)
    missing = build(3, 2, [{1, 3}, {2, 3}])
    assert not is_vector_space_structure(missing, asg, F5)
    leaky = VectorAssignment(2, (1, 1), asg.participants)
    assert not is_vector_space_structure(k23, leaky, F5)


def test_dimension_mismatch():
    asg = build_threshold_vectors(3, 3, F5)
    with pytest.raises(DimensionMismatch):
        is_vector_space_structure(complete(3, 2), asg, F5)
    with pytest.raises(DimensionMismatch):
        VectorAssignment(2, (1, 0, 0), ((1, 1),))


def test_deal_and_reconstruct_example():
    scheme = threshold_scheme(3, 2, 5)
    table = deal_with_vector(scheme, (3, 2))
    assert table.shares == (0, 2, 4)
    assert table.secret == 3
    assert reconstruct(scheme, pset(1, 2), table.restrict(pset(1, 2))) == 3
    with pytest.raises(NotQualified):
        reconstruct(scheme, pset(1), table.restrict(pset(1)))
    zero = deal_with_vector(scheme, (0, 0))
    assert zero.shares == (0, 0, 0)
    assert reconstruct(scheme, pset(1, 2), zero.restrict(pset(1, 2))) == 0


def test_inconsistent_shares_detected():
    scheme = threshold_scheme(3, 2, 5)
    with pytest.raises(InconsistentShares):
        reconstruct(scheme, pset(1, 2, 3), {1: 0, 2: 2, 3: 0})


def test_deal_is_deterministic_and_round_trips():
    scheme = threshold_scheme(5, 3, 7)
    assert deal(scheme, 4, 99) == deal(scheme, 4, 99)
    rng = random.Random(5)
    for _ in range(50):
        seed = rng.randrange(1 << 30)
        for s in range(7):
            table = deal(scheme, s, seed)
            assert table.secret == s
            for q in scheme.structure.basis:
                assert reconstruct(scheme, q, table.restrict(q)) == s


def test_equivalent_participants_share_equally(gamma_dd):
    scheme = certify_ideal(gamma_dd, 5)
    for seed in range(20):
        table = deal(scheme, seed % 5, seed)
        assert table.share(4) == table.share(5)


def test_correctness_examples():
    rep = verify_correctness(threshold_scheme(3, 2, 5))
    assert rep.passed and rep.checked == 25 * 3
    # GF(2) has no room for two distinct nonzero points, so set the vectors by hand
    f2 = PrimeField(2)
    tiny = LinearScheme(f2, VectorAssignment(2, (1, 0), ((1, 1), (0, 1))), complete(2, 2))
    assert is_vector_space_structure(tiny.structure, tiny.assignment, f2, "full")
    rep = verify_correctness(tiny)
    assert rep.passed and rep.checked == 4
    assert verify_privacy(tiny).passed


def test_point_at_infinity_still_realizes_threshold():
    # (0,1) is independent of every (1,x) and of f(D), so this is not a tamper
    scheme = threshold_scheme(3, 2, 5)
    asg = scheme.assignment
    alt = VectorAssignment(2, asg.dealer, ((0, 1),) + asg.participants[1:])
    assert is_vector_space_structure(scheme.structure, alt, F5, "full")
    assert verify_correctness(LinearScheme(F5, alt, scheme.structure)).passed


def test_tampered_vector_fails():
    scheme = threshold_scheme(3, 2, 5)
    asg = scheme.assignment
    bad = VectorAssignment(2, asg.dealer, (asg.participants[1],) + asg.participants[1:])
    assert not is_vector_space_structure(scheme.structure, bad, F5)
    rep = verify_correctness(LinearScheme(F5, bad, scheme.structure))
    assert not rep.passed
    assert rep.counterexample


def test_privacy_examples(gamma_dd):
    rep = verify_privacy(threshold_scheme(3, 2, 5))
    assert rep.passed
    scheme = certify_ideal(gamma_dd, 5)
    rep = verify_privacy(scheme, all_subsets=True)
    assert rep.passed


def test_privacy_of_equivalent_pair(gamma_dd):
    # {4,5} alone: both hold the same share, which must not depend on the secret
    scheme = certify_ideal(gamma_dd, 5)
    f, asg = scheme.field, scheme.assignment
    views = {}
    for v in itertools.product(range(5), repeat=3):
        secret = f.dot(v, asg.dealer)
        view = (f.dot(v, asg.vector(4)), f.dot(v, asg.vector(5)))
        views.setdefault(secret, []).append(view)
    dists = [sorted(x) for x in views.values()]
    assert all(d == dists[0] for d in dists)


def test_privacy_leak_control():
    # participant 4 is handed the dealer vector itself, so alone it learns the secret
    s = complete(4, 2)
    vectors = build_threshold_vectors(2, 3, F5).participants + ((1, 0),)
    scheme = LinearScheme(F5, VectorAssignment(2, (1, 0), vectors), s)
    rep = verify_privacy(scheme)
    assert not rep.passed
    assert rep.distinguishing == [pset(4)]


def test_maximal_only_matches_all_subsets():
    for n, k, p in [(3, 2, 5), (4, 3, 5), (4, 2, 5)]:
        scheme = threshold_scheme(n, k, p)
        a = verify_privacy(scheme)
        b = verify_privacy(scheme, all_subsets=True)
        assert a.passed == b.passed
        assert b.checked >= a.checked


def test_state_cap():
    with pytest.raises(CapExceeded):
        verify_correctness(threshold_scheme(5, 3, 7), cap=100)


def test_information_rate():
    assert information_rate(threshold_scheme(3, 2, 5)) == 1
    assert rate_from_sizes(5, [25, 5]) == Fraction(1, 2)
    assert rate_from_sizes(8, [4]) == Fraction(3, 2)
    with pytest.raises(ValueError):
        rate_from_sizes(5, [])
    scheme = threshold_scheme(3, 2, 5)
    wide = LinearScheme(scheme.field, scheme.assignment, scheme.structure, (5, 25, 5))
    assert information_rate(wide) == Fraction(1, 2)


def test_shortcut_and_full_paths_agree():
    rng = random.Random(3)
    checked = 0
    for n in range(3, 6):
        for k in (2, 3):
            if k >= n:
                continue
            for s in enumerate_structures(EnumerationFilter(n, k)):
                red = reduce(s)
                if is_threshold(red.quotient):
                    scheme = certify_ideal(s, reduction=red)
                    asg, field_ = scheme.assignment, scheme.field
                    assert is_vector_space_structure(s, asg, field_, "full")
                else:
                    field_ = PrimeField(5)
                    asg = VectorAssignment(
                        k, (1,) + (0,) * (k - 1),
                        tuple(tuple(rng.randrange(5) for _ in range(k)) for _ in range(n)),
                    )
                fast = is_vector_space_structure(s, asg, field_, "shortcut")
                slow = is_vector_space_structure(s, asg, field_, "full")
                assert fast == slow
                checked += 1
    assert checked > 1000


def test_shortcut_agrees_on_random_assignments_for_one_structure():
    s = complete(4, 2)
    rng = random.Random(8)
    hits = 0
    for _ in range(400):
        asg = VectorAssignment(2, (1, 0), tuple((rng.randrange(5), rng.randrange(5)) for _ in range(4)))
        f = PrimeField(5)
        fast = is_vector_space_structure(s, asg, f, "shortcut")
        assert fast == is_vector_space_structure(s, asg, f, "full")
        hits += fast
    assert hits > 0


def test_dealing_distribution_is_uniform_over_solutions():
    scheme = threshold_scheme(3, 2, 5)
    seen = {}
    for seed in range(5000):
        table = deal(scheme, 1, seed)
        seen[table.shares] = seen.get(table.shares, 0) + 1
    assert len(seen) == 5
    assert all(800 < c < 1200 for c in seen.values())
    for shares in seen:
        assert reconstruct(scheme, pset(1, 2), {1: shares[0], 2: shares[1]}) == 1


def test_members_of_maximal_unqualified():
    assert [members(u) for u in maximal_unqualified(complete(3, 2))] == [(1,), (2,), (3,)]
