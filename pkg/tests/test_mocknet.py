import json
import time

import pytest
import requests
from hypothesis import given, strategies as st

from friendgraph.mocknet import (
    COOKIE_NAME,
    AuthError,
    Checkpoint,
    CrawlError,
    CrawlSession,
    RateLimiter,
    crawl,
    max_in_window,
    paginate,
    serve_mock,
)
from friendgraph.model import FriendEdge, Gender, UserRecord, validate_dataset
from friendgraph.synth import GeneratorConfig, generate_community

TOKEN = "s3cret"


def _gen(n, seed=0):
    return generate_community(GeneratorConfig(n_users=n, seed=seed))


@pytest.mark.parametrize("total,size,pages,last", [
    (7172, 10, 718, 2), (10, 10, 1, 10), (0, 10, 0, 0), (25, 10, 3, 5), (1, 3, 1, 1),
])
def test_paginate(total, size, pages, last):
    idx = paginate(total, size)
    assert (idx.pages, idx.last_page_len) == (pages, last)


def test_paginate_rejects_zero_page_size():
    with pytest.raises(ValueError):
        paginate(10, 0)


@given(st.integers(0, 5000), st.integers(1, 50))
def test_pages_partition_listing(total, size):
    idx = paginate(total, size)
    spans = [idx.bounds(k) for k in range(idx.pages)]
    assert sum(b - a for a, b in spans) == total
    assert all(a2 == b1 for (_, b1), (a2, _) in zip(spans, spans[1:]))
    assert all(0 < b - a <= size for a, b in spans)


def _get(svc, path, token=TOKEN):
    cookies = {} if token is None else {COOKIE_NAME: token}
    return requests.get(svc.url + path, cookies=cookies, timeout=5)


def test_listing_pages_and_auth():
    ds = _gen(25)
    with serve_mock(ds, page_size=10, auth_token=TOKEN) as svc:
        sizes = [len(_get(svc, f"/search?page={k}").json()["results"]) for k in range(3)]
        assert sizes == [10, 10, 5]
        assert _get(svc, "/search?page=3").status_code == 404
        assert _get(svc, "/search?page=-1").status_code == 404
        assert _get(svc, "/search?page=0", "wrong").status_code == 401
        assert _get(svc, "/search?page=0", None).status_code == 401
        assert _get(svc, "/user/1/friends").status_code == 404
        assert _get(svc, "/elsewhere").status_code == 404


def test_profile_reports_each_edge_from_both_ends():
    ds = _gen(40, 3)
    with serve_mock(ds, auth_token=TOKEN) as svc:
        seen = set()
        for u in ds.users:
            body = _get(svc, f"/user/{u.account_id}/friends").json()
            seen |= {(u.account_id, f) for f in body["friends"]}
    want = {(e.a, e.b) for e in ds.edges} | {(e.b, e.a) for e in ds.edges}
    assert seen == want


def test_empty_site_crawls_to_empty_dataset():
    ds = validate_dataset([], [])
    with serve_mock(ds, auth_token=TOKEN) as svc:
        assert crawl(CrawlSession(svc.url, TOKEN, rate_limit=100)) == ds


def test_crawl_round_trip_and_request_bound():
    ds = _gen(120, 1)
    with serve_mock(ds, auth_token=TOKEN) as svc:
        s = CrawlSession(svc.url, TOKEN, rate_limit=500)
        got = crawl(s, "strict")
        assert got == ds
        assert s.requests_sent == len(svc.paths()) == 12 + 120


def test_retries_transient_failures():
    ds = _gen(30, 2)
    faults = {"/search?page=1": 2, f"/user/{ds.users[4].account_id}/friends": 1}
    with serve_mock(ds, auth_token=TOKEN, faults=faults) as svc:
        s = CrawlSession(svc.url, TOKEN, rate_limit=500, backoff=0.01)
        assert crawl(s) == ds
        retries = 3
        assert s.requests_sent == 3 + 30 + retries
        codes = [c for _, p, c in svc.request_log if p == "/search?page=1"]
        assert codes == [503, 503, 200]


def test_exhausted_retries_name_the_page():
    ds = _gen(30, 2)
    with serve_mock(ds, auth_token=TOKEN, faults={"/search?page=2": 10}) as svc:
        s = CrawlSession(svc.url, TOKEN, rate_limit=500, max_retries=2, backoff=0.01)
        with pytest.raises(CrawlError, match="page 2"):
            crawl(s)


def test_rejected_cookie_is_auth_error():
    ds = _gen(12)
    with serve_mock(ds, auth_token=TOKEN) as svc:
        with pytest.raises(AuthError):
            crawl(CrawlSession(svc.url, "nope", rate_limit=100))


def test_rate_limit_five_per_second():
    ds = _gen(8)
    with serve_mock(ds, page_size=4, auth_token=TOKEN) as svc:
        s = CrawlSession(svc.url, TOKEN, rate_limit=5)
        assert crawl(s) == ds
        assert len(s.limiter.log) == 10
        assert max_in_window(s.limiter.log, 1.0) <= 5
        server_times = [t for t, _, _ in svc.request_log]
        assert server_times[-1] - server_times[0] >= 0.95


def test_rate_limiter_window_bound():
    lim = RateLimiter(20)
    t0 = time.monotonic()
    for _ in range(50):
        lim.acquire()
    assert max_in_window(lim.log) <= 20
    assert time.monotonic() - t0 >= 2.0 - 0.05


def test_max_in_window():
    assert max_in_window([0.0, 0.5, 0.99, 1.0, 1.5]) == 3
    assert max_in_window([]) == 0


class Killed(Exception):
    pass


def test_kill_after_page_three_then_resume(tmp_path):
    ds = _gen(100, 5)
    ck = tmp_path / "ck.jsonl"
    with serve_mock(ds, auth_token=TOKEN) as svc:
        def kill(kind, key):
            if kind == "page" and key == 3:
                raise Killed

        with pytest.raises(Killed):
            crawl(CrawlSession(svc.url, TOKEN, rate_limit=1000, concurrency=1), checkpoint=ck,
                  on_progress=kill)
        first = set(svc.paths())
        assert {f"/search?page={k}" for k in range(4)} <= first
        n_before = len(svc.request_log)
        resumed = crawl(CrawlSession(svc.url, TOKEN, rate_limit=1000), checkpoint=ck)
        second = [p for _, p, _ in svc.request_log[n_before:]]
    assert not {f"/search?page={k}" for k in range(4)} & set(second)
    assert len(second) == 6 + 100
    assert resumed == ds


def test_checkpoint_ignores_torn_line(tmp_path):
    ck = tmp_path / "ck.jsonl"
    c = Checkpoint(ck)
    c.add_page(0, {"pages": 1, "results": []})
    c.add_profile(7, [8, 9])
    with open(ck, "a") as fh:
        fh.write('{"kind": "prof')
    again = Checkpoint(ck)
    assert again.pages == {0: {"pages": 1, "results": []}} and again.profiles == {7: [8, 9]}


def test_stub_policy_for_unlisted_friends():
    users = [UserRecord(1, "a", 20, Gender.MALE), UserRecord(2, "b", 22, Gender.FEMALE)]
    ds = validate_dataset(users, [FriendEdge(1, 2), FriendEdge(1, 3)], "stub")
    with serve_mock(ds, auth_token=TOKEN) as svc:
        got = crawl(CrawlSession(svc.url, TOKEN, rate_limit=100), "stub")
        assert got == ds
        with pytest.raises(Exception):
            crawl(CrawlSession(svc.url, TOKEN, rate_limit=100), "strict")


def test_concurrency_does_not_change_result():
    ds = _gen(60, 9)
    with serve_mock(ds, page_size=7, auth_token=TOKEN) as svc:
        a = crawl(CrawlSession(svc.url, TOKEN, rate_limit=1000, concurrency=1))
        b = crawl(CrawlSession(svc.url, TOKEN, rate_limit=1000, concurrency=8))
    assert a == b == ds


def test_page_payload_shape():
    ds = _gen(12)
    with serve_mock(ds, page_size=5, auth_token=TOKEN) as svc:
        body = _get(svc, "/search?page=2").json()
    assert (body["page"], body["pages"], body["total"], len(body["results"])) == (2, 3, 12, 2)
    row = body["results"][0]
    assert set(row) >= {"account_id", "name", "age", "gender", "status"}
    json.dumps(body)
