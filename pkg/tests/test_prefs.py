from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from friendgraph.model import FriendEdge, Gender, Status, UserRecord, validate_dataset
from friendgraph.prefs import (
    MixingMatrix,
    age_difference_histogram,
    gender_mixing,
    random_mixing_baseline,
    single_single_share,
    status_mixing,
)
from friendgraph.synth import generate_community, load_preset

from oracles import brute_mixing, monte_carlo_null, random_dataset

F, M = Gender.FEMALE, Gender.MALE
S = Status


def _ds(specs, pairs):
    users = [UserRecord(i + 1, "", a, g, s) for i, (a, g, s) in enumerate(specs)]
    return validate_dataset(users, [FriendEdge.of(a, b) for a, b in pairs])


def test_gender_mixing_example():
    specs = [(20, M, S.SINGLE), (20, F, S.SINGLE), (20, M, S.SINGLE), (20, F, S.SINGLE),
             (20, M, S.SINGLE), (20, F, S.SINGLE)]
    # (M,F), (M,M), (F,F), (M,F)
    ds = _ds(specs, [(1, 2), (3, 5), (4, 6), (5, 6)])
    assert gender_mixing(ds).pairs() == {"M-M": 1, "M-F": 2, "F-F": 1}


def test_no_edges_all_zero():
    ds = _ds([(20, M, S.SINGLE)], [])
    assert set(gender_mixing(ds).pairs().values()) == {0}
    assert set(status_mixing(ds).pairs().values()) == {0}
    assert age_difference_histogram(ds).bins == ()


def test_status_mixing_example():
    specs = [(20, M, S.SINGLE), (20, M, S.SINGLE), (20, M, S.MARRIED), (20, M, S.IAR)]
    m = status_mixing(_ds(specs, [(1, 2), (1, 3), (1, 4)]))
    assert m.cell("single", "single") == 1
    assert m.cell("single", "married") == m.cell("married", "single") == 1
    assert m.cell("single", "iar") == 1
    assert single_single_share(m) == pytest.approx(1 / 3)


def test_age_difference_examples():
    h = age_difference_histogram(_ds([(19, M, S.SINGLE), (21, F, S.SINGLE)], [(1, 2)]))
    assert h.bins == (0, 0, 1)
    h = age_difference_histogram(_ds([(30, M, S.SINGLE), (30, F, S.SINGLE)], [(1, 2)]))
    assert h.bins == (1,)


def test_stub_edges_excluded():
    users = [UserRecord(1, "", 20, M), UserRecord(2, "", 22, F)]
    ds = validate_dataset(users, [FriendEdge(1, 2), FriendEdge(1, 9)], "stub")
    for m in (gender_mixing(ds), status_mixing(ds)):
        assert m.total == 1 and m.excluded_edges == 1
    assert age_difference_histogram(ds).excluded_edges == 1


def test_baseline_closed_form():
    m = MixingMatrix(("M", "F"), ((10, 30), (30, 30)))
    base = random_mixing_baseline(m, {"M": 50, "F": 50})
    assert m.total == 70
    m100 = MixingMatrix(("M", "F"), ((25, 50), (50, 25)))
    b = random_mixing_baseline(m100, {"M": 1, "F": 1})
    assert b.expected_pairs() == {"M-M": 25, "M-F": 50, "F-F": 25}
    assert set(b.ratio_pairs().values()) == {1.0}
    assert base.expected_pairs()["M-F"] == Fraction(35)


def test_baseline_undefined_without_edges():
    b = random_mixing_baseline(MixingMatrix(("M", "F"), ((0, 0), (0, 0))))
    assert set(b.ratio_pairs().values()) == {None}


def test_baseline_against_monte_carlo():
    cfg = load_preset("losbanos2008", n_users=1500, seed=11)
    ds = generate_community(cfg)
    m = gender_mixing(ds)
    base = random_mixing_baseline(m)
    mc = monte_carlo_null(m, 200, 0)
    for key, ex in base.expected_pairs().items():
        u, v = key.split("-")
        est = mc.get(frozenset([u, v]), 0.0)
        assert est == pytest.approx(float(ex), rel=0.03)
    r = base.ratio_pairs()
    assert r["M-F"] > 1 and r["M-M"] < 1 and r["F-F"] < 1


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_matches_direct_scan(seed):
    ds = random_dataset(60, 150, seed)
    for attr, fn in (("gender", gender_mixing), ("status", status_mixing)):
        m = fn(ds)
        want = brute_mixing(ds, attr)
        got = {frozenset(k.split("-")): v for k, v in m.pairs().items() if v}
        assert got == want
        assert m.total + m.excluded_edges == ds.n_edges


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6), st.randoms())
def test_invariant_under_relabeling(seed, rnd):
    ds = random_dataset(40, 80, seed)
    ids = [u.account_id for u in ds.users]
    new = rnd.sample(range(1000, 5000), len(ids))
    remap = dict(zip(ids, new))
    users = [UserRecord(remap[u.account_id], u.name, u.age, u.gender, u.status) for u in ds.users]
    rnd.shuffle(users)
    ds2 = validate_dataset(users, [FriendEdge.of(remap[e.a], remap[e.b]) for e in ds.edges])
    assert gender_mixing(ds).cells == gender_mixing(ds2).cells
    assert status_mixing(ds).cells == status_mixing(ds2).cells
    assert age_difference_histogram(ds).bins == age_difference_histogram(ds2).bins
