"""Polite crawler for the mock profile service.

Walks every search listing page by changing only the ``page`` parameter,
then fetches each listed user's friend list. Progress is appended to a
JSON-lines checkpoint so an interrupted crawl resumes where it stopped.
"""
from __future__ import annotations

import collections
import json
import logging
import threading
import time
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass, field
from pathlib import Path

import requests

from ..model import FriendEdge, Gender, Status, UserRecord, validate_dataset
from .server import COOKIE_NAME

log = logging.getLogger(__name__)


class CrawlError(RuntimeError):
    pass


class AuthError(CrawlError):
    pass


class RateLimiter:
    """Allows at most ``rate`` acquisitions in any window of ``window`` seconds."""

    def __init__(self, rate: float, window: float = 1.0):
        if rate <= 0:
            raise ValueError("rate_limit must be > 0")
        self.capacity = max(1, int(rate))
        # fractional rates below 1/s become one request per 1/rate seconds
        self.window = window if rate >= 1 else window / rate
        self._recent: collections.deque[float] = collections.deque()
        self._lock = threading.Lock()
        self.log: list[float] = []

    def acquire(self):
        while True:
            with self._lock:
                now = time.monotonic()
                while self._recent and now - self._recent[0] >= self.window:
                    self._recent.popleft()
                if len(self._recent) < self.capacity:
                    self._recent.append(now)
                    self.log.append(now)
                    return
                wait = self.window - (now - self._recent[0])
            time.sleep(max(wait, 1e-4))


def max_in_window(times, window: float = 1.0) -> int:
    """Largest number of timestamps falling in any half-open window of ``window`` seconds."""
    ts = sorted(times)
    best = lo = 0
    for hi, t in enumerate(ts):
        while t - ts[lo] >= window:
            lo += 1
        best = max(best, hi - lo + 1)
    return best


@dataclass
class CrawlSession:
    base_url: str
    cookie: str
    rate_limit: float = 10.0
    max_retries: int = 3
    concurrency: int = 4
    backoff: float = 0.25
    timeout: float = 10.0
    limiter: RateLimiter = field(init=False, repr=False)

    def __post_init__(self):
        if self.max_retries < 0:
            raise ValueError("max_retries must be >= 0")
        self.base_url = self.base_url.rstrip("/")
        self.limiter = RateLimiter(self.rate_limit)
        self._local = threading.local()
        self.requests_sent = 0
        self._count_lock = threading.Lock()

    def _http(self) -> requests.Session:
        s = getattr(self._local, "http", None)
        if s is None:
            s = requests.Session()
            s.cookies.set(COOKIE_NAME, self.cookie)
            self._local.http = s
        return s

    def get_json(self, path: str, what: str) -> dict:
        """GET with rate limiting and exponential backoff on transient failures."""
        last = None
        for attempt in range(self.max_retries + 1):
            if attempt:
                time.sleep(self.backoff * 2 ** (attempt - 1))
            self.limiter.acquire()
            with self._count_lock:
                self.requests_sent += 1
            try:
                r = self._http().get(self.base_url + path, timeout=self.timeout)
            except requests.RequestException as exc:
                last = exc
                log.debug("%s: attempt %d failed: %s", what, attempt + 1, exc)
                continue
            if r.status_code == 401:
                raise AuthError(f"session cookie rejected while fetching {what}")
            if r.status_code >= 500:
                last = f"HTTP {r.status_code}"
                continue
            if r.status_code != 200:
                raise CrawlError(f"{what}: HTTP {r.status_code}")
            return r.json()
        raise CrawlError(f"{what}: giving up after {self.max_retries + 1} attempts ({last})")


class Checkpoint:
    """Append-only record of completed listing pages and profiles."""

    def __init__(self, path=None):
        self.path = Path(path) if path else None
        self.pages: dict[int, dict] = {}
        self.profiles: dict[int, list[int]] = {}
        self._lock = threading.Lock()
        if self.path and self.path.exists():
            for line in self.path.read_text(encoding="utf-8").splitlines():
                try:
                    rec = json.loads(line)
                except json.JSONDecodeError:
                    continue  # torn final line from a killed run
                if rec.get("kind") == "page":
                    self.pages[rec["page"]] = rec["body"]
                elif rec.get("kind") == "profile":
                    self.profiles[rec["account_id"]] = rec["friends"]

    def _append(self, rec):
        if self.path is None:
            return
        with self._lock, open(self.path, "a", encoding="utf-8") as fh:
            fh.write(json.dumps(rec) + "\n")

    def add_page(self, k: int, body: dict):
        self.pages[k] = body
        self._append({"kind": "page", "page": k, "body": body})

    def add_profile(self, uid: int, friends: list[int]):
        self.profiles[uid] = friends
        self._append({"kind": "profile", "account_id": uid, "friends": friends})


def _record(row: dict) -> UserRecord:
    return UserRecord(
        int(row["account_id"]),
        row.get("name", ""),
        int(row["age"]),
        Gender.parse(row["gender"]),
        Status.parse(row["status"]),
    )


def _run(session, jobs, on_done):
    """Run ``jobs`` (key -> thunk) on the session's pool, calling ``on_done`` in order of completion."""
    pool = ThreadPoolExecutor(max_workers=max(1, session.concurrency))
    try:
        futs = {pool.submit(fn): key for key, fn in jobs.items()}
        for fut in as_completed(futs):
            on_done(futs[fut], fut.result())
    finally:
        pool.shutdown(wait=True, cancel_futures=True)


def crawl(session: CrawlSession, policy: str = "stub", checkpoint=None, on_progress=None):
    """Crawl the listing and every listed profile into a validated dataset.

    ``checkpoint`` is an optional path; completed fetches are appended to it
    and skipped on the next run. ``on_progress(kind, key)`` is called after
    each fetch is checkpointed, with kind ``"page"`` or ``"profile"``.
    """
    ck = Checkpoint(checkpoint)

    def done_page(k, body):
        ck.add_page(k, body)
        if on_progress:
            on_progress("page", k)

    if 0 not in ck.pages:
        done_page(0, session.get_json("/search?page=0", "page 0"))
    pages = int(ck.pages[0]["pages"])
    todo = {k: (lambda k=k: session.get_json(f"/search?page={k}", f"page {k}"))
            for k in range(1, pages) if k not in ck.pages}
    _run(session, todo, done_page)

    listed = [row for k in range(pages) for row in ck.pages[k]["results"]]
    users = [_record(row) for row in listed]

    def done_profile(uid, body):
        ck.add_profile(uid, [int(x) for x in body["friends"]])
        if on_progress:
            on_progress("profile", uid)

    todo = {u.account_id: (lambda uid=u.account_id: session.get_json(
                f"/user/{uid}/friends", f"profile {uid}"))
            for u in users if u.account_id not in ck.profiles}
    _run(session, todo, done_profile)

    edges = {FriendEdge.of(uid, f) for uid, fr in ck.profiles.items() for f in fr if f != uid}
    return validate_dataset(users, edges, policy)
