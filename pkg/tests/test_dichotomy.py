import itertools

import pytest

from contrapunctus.dichotomy import (
    Dichotomy,
    DichotomyError,
    check_embedding,
    complement,
    find_quasipolarities,
    induced_quasipolarity,
    require_polarity,
)
from contrapunctus.extension import U0
from contrapunctus.zmod import AffineMap, DualNumber, units

from .conftest import X6, X12


def brute_quasipolarities(S):
    comp = set(range(S.n)) - set(S.members)
    return sorted(
        AffineMap(u, v, S.n)
        for u in range(S.n)
        for v in units(S.n)
        if {(v * x + u) % S.n for x in S.members} == comp
    )


def test_u0_is_strong_with_polarity_translation():
    rep = find_quasipolarities(U0)
    assert rep.strong and rep.polarity == AffineMap(8, 1, 16)
    assert str(rep.polarity) == "e^8.1"


def test_x6_and_x12_polarities():
    assert require_polarity(X6) == AffineMap(1, 5, 6)
    assert require_polarity(X12) == AffineMap(2, 5, 12)


def test_non_strong():
    rep = find_quasipolarities(Dichotomy(6, (0, 1, 2)))
    assert not rep.strong and rep.polarity is None
    assert [str(p) for p in rep.quasipolarities] == ["e^3.1", "e^5.5"]
    with pytest.raises(DichotomyError):
        require_polarity(Dichotomy(6, (0, 1, 2)))


@pytest.mark.parametrize("n", [2, 4, 6, 8])
def test_scan_matches_brute_force_for_every_dichotomy(n):
    for members in itertools.combinations(range(n), n // 2):
        S = Dichotomy(n, members)
        assert list(find_quasipolarities(S).quasipolarities) == brute_quasipolarities(S)


@pytest.mark.parametrize("members", [(0, 1), (0, 1, 2, 3), (0, 0, 1), (0, 6, 1)])
def test_bad_dichotomies(members):
    with pytest.raises(DichotomyError):
        Dichotomy(6, members)


def test_odd_modulus_and_parse():
    with pytest.raises(DichotomyError):
        Dichotomy(5, (0, 1))
    assert Dichotomy.parse(16, "0,1,3,4,5,6,7,10") == U0
    with pytest.raises(DichotomyError):
        Dichotomy.parse(6, "0,x,2")
    assert complement(X6).members == (1, 4, 5)


@pytest.mark.parametrize("S", [X6, X12, U0])
def test_induced_quasipolarity_fixes_cantus_and_acts_on_interval(S):
    p = require_polarity(S)
    n = S.n
    for x in range(n):
        q = induced_quasipolarity(p, x)
        for b in range(n):
            assert q(DualNumber(x, b, n)) == DualNumber(x, p(b), n)


def strong_dichotomies(n):
    for members in itertools.combinations(range(n), n // 2):
        S = Dichotomy(n, members)
        rep = find_quasipolarities(S)
        if rep.strong:
            yield S, rep.polarity


@pytest.mark.parametrize("n", [6, 8, 10])
def test_induced_quasipolarity_swaps_fibers(n):
    seen = 0
    for S, p in strong_dichotomies(n):
        K, D = set(S.members), set(S.complement_members)
        for x in range(n):
            q = induced_quasipolarity(p, x)
            assert {q(DualNumber(x, k, n)).b for k in K} == D
            seen += 1
    assert seen


def test_induced_quasipolarity_on_tower_levels(tower):
    for S in tower.levels[:2]:
        p = require_polarity(S)
        for x in range(S.n):
            q = induced_quasipolarity(p, x)
            assert {q(DualNumber(x, k, S.n)) for k in S.members} == {
                DualNumber(x, d, S.n) for d in S.complement_members
            }


def test_embedding_checks():
    rep = check_embedding(2, X6, X12)
    assert rep.valid and rep.contained and rep.polarities_commute
    assert rep.translations_scale
    # contains 2*X6 but the polarities do not intertwine
    bad = check_embedding(2, X6, Dichotomy(12, (0, 1, 2, 3, 4, 6)))
    assert bad.contained and not bad.valid and bad.bad_points
    with pytest.raises(DichotomyError):
        check_embedding(2, X6, Dichotomy(12, (0, 1, 2, 3, 4, 5)))
