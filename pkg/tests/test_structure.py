import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from homsec.errors import (
    Duplicate,
    EmptyBasis,
    InvalidSize,
    OutOfRange,
    TooSmall,
    UncoveredParticipant,
    WrongCardinality,
)
from homsec.structure import (
    build,
    check_hypotheses,
    complete,
    count_w,
    full_mask,
    induced,
    is_qualified,
    is_threshold,
    members,
    omega,
    pset,
)

from .oracles import fs_basis, naive_omega, qualified


@st.composite
def structures(draw, max_n=6):
    n = draw(st.integers(3, max_n))
    k = draw(st.integers(2, min(3, n)))
    candidates = list(itertools.combinations(range(1, n + 1), k))
    chosen = draw(st.sets(st.sampled_from(candidates), min_size=1))
    covered = set().union(*chosen)
    # patch coverage deterministically so every draw is a valid structure
    for p in range(1, n + 1):
        if p not in covered:
            chosen.add(next(c for c in candidates if p in c))
    return build(n, k, sorted(chosen))


def test_build_accepts_five_participant_example(five):
    assert five.n == 5 and five.k == 3
    assert five.minsets() == [(1, 2, 3), (2, 3, 4), (3, 4, 5)]


def test_build_rejects_duplicates():
    with pytest.raises(Duplicate):
        build(3, 2, [{1, 2}, {1, 2}])


def test_build_reports_uncovered_participants():
    with pytest.raises(UncoveredParticipant) as info:
        build(5, 3, [{1, 2, 3}])
    assert tuple(info.value.uncovered) == (4, 5)


@pytest.mark.parametrize(
    "n, k, sets, error",
    [
        (4, 3, [{1, 2}], WrongCardinality),
        (3, 2, [{1, 4}], OutOfRange),
        (3, 2, [{0, 1}], OutOfRange),
        (3, 2, [], EmptyBasis),
    ],
)
def test_build_validation_errors(n, k, sets, error):
    with pytest.raises(error):
        build(n, k, sets)


def test_is_qualified_examples(five):
    assert is_qualified(five, pset(1, 2, 3, 5))
    assert not is_qualified(five, pset(1, 2, 4, 5))
    assert not is_qualified(five, 0)


def test_count_w_examples(five):
    assert count_w(five, pset(1, 2, 3, 4)) == 2
    assert count_w(five, pset(1, 2, 4, 5)) == 0
    assert count_w(complete(5, 3), pset(1, 2, 3, 4)) == 4


def test_omega_examples(five, k53, gamma_dd):
    assert omega(five, 4) == {0, 1, 2}
    assert omega(k53, 4) == {4}
    assert omega(gamma_dd, 4) == {2, 4}


def test_omega_rejects_bad_sizes(five):
    with pytest.raises(InvalidSize):
        omega(five, 2)
    with pytest.raises(InvalidSize):
        omega(five, 6)


def test_induced_examples(five):
    sub, relabel = induced(five, pset(1, 2, 3, 4))
    assert sub.n == 4 and sub.minsets() == [(1, 2, 3), (2, 3, 4)]
    assert relabel == {1: 1, 2: 2, 3: 3, 4: 4}
    same, _ = induced(five, full_mask(5))
    assert same == five
    with pytest.raises(UncoveredParticipant):
        induced(five, pset(1, 2, 4, 5))
    with pytest.raises(TooSmall):
        induced(five, pset(1, 2))


def test_induced_relabels_densely(gamma_dd):
    sub, relabel = induced(gamma_dd, pset(1, 2, 3, 5))
    assert relabel == {1: 1, 2: 2, 3: 3, 5: 4}
    assert is_threshold(sub)


def test_is_threshold_examples(five, k53):
    assert is_threshold(k53)
    assert not is_threshold(five)
    assert is_threshold(build(2, 2, [{1, 2}]))


def test_check_hypotheses_examples(five, k53, path4):
    report = check_hypotheses(k53)
    assert report.omega == {4} and report.satisfied
    report = check_hypotheses(five)
    assert report.omega == {0, 1, 2}
    assert not report.excludes_one and not report.satisfied
    report = check_hypotheses(path4)
    assert report.omega == {1, 2} and not report.satisfied
    with pytest.raises(TooSmall):
        check_hypotheses(build(3, 3, [{1, 2, 3}]))


def test_hypothesis_flags_are_a_conjunction(gamma_dd):
    report = check_hypotheses(gamma_dd)
    assert report.excludes_one and report.excludes_k and report.contains_k_plus_one
    assert report.satisfied and report.failures() == []


def test_members_and_pset_agree():
    assert members(pset(5, 1, 3)) == (1, 3, 5)
    assert pset() == 0


def _check_invariants(s):
    basis = fs_basis(s)
    n, k = s.n, s.k
    every = list(range(1 << n))
    for q in every:
        expected = qualified(basis, members(q))
        assert is_qualified(s, q) == expected
        assert (count_w(s, q) > 0) == expected
    assert omega(s, n) == {len(s.basis)}
    assert omega(s, k) <= {0, 1}
    assert is_threshold(s) == (omega(s, k) == {1})
    assert induced(s, full_mask(n))[0] == s
    if n > k:
        values = omega(s, k + 1)
        assert values == naive_omega(s, k + 1)
        for q in itertools.combinations(range(1, n + 1), k + 1):
            assert count_w(s, pset(*q)) in values
        assert values <= set(range(k + 2))


@settings(max_examples=150, deadline=None)
@given(structures(), st.data())
def test_monotone_qualification(s, data):
    q = data.draw(st.integers(0, (1 << s.n) - 1))
    extra = data.draw(st.integers(0, (1 << s.n) - 1))
    if is_qualified(s, q):
        assert is_qualified(s, q | extra)


@settings(max_examples=60, deadline=None)
@given(structures())
def test_statistics_invariants(s):
    _check_invariants(s)
