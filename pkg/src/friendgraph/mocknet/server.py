"""Mock profile service: a paginated search listing and per-user friend lists.

Endpoints (JSON bodies, ``session`` cookie required on both):

    GET /search?page=<k>        account summaries on listing page k
    GET /user/<id>/friends      friend ids of one account
"""
from __future__ import annotations

import json
import re
import threading
import time
from http.cookies import SimpleCookie
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from urllib.parse import parse_qs, urlsplit

from .pagination import paginate

COOKIE_NAME = "session"
_FRIENDS = re.compile(r"^/user/(\d+)/friends/?$")


def user_summary(u) -> dict:
    return {
        "account_id": u.account_id,
        "name": u.name,
        "age": u.age,
        "gender": u.gender.value,
        "status": u.status.value,
    }


class MockService:
    """Handle for a running mock service; use as a context manager or call ``close``."""

    def __init__(self, dataset, page_size=10, auth_token="secret", host="127.0.0.1",
                 port=0, faults=None):
        self.listed = [u for u in dataset.users if not u.stub]
        self.index = paginate(len(self.listed), page_size)
        friends: dict[int, list[int]] = {u.account_id: [] for u in dataset.users}
        for e in dataset.edges:
            friends[e.a].append(e.b)
            friends[e.b].append(e.a)
        self.friends = {k: sorted(v) for k, v in friends.items()}
        self.auth_token = auth_token
        # path -> number of 503 responses to send before serving normally
        self.faults = dict(faults or {})
        self.request_log: list[tuple[float, str, int]] = []
        self._lock = threading.Lock()
        self._httpd = ThreadingHTTPServer((host, port), self._handler_class())
        self._httpd.daemon_threads = True
        self._thread = threading.Thread(target=self._httpd.serve_forever, daemon=True)
        self._thread.start()

    @property
    def url(self) -> str:
        host, port = self._httpd.server_address[:2]
        return f"http://{host}:{port}"

    def close(self):
        self._httpd.shutdown()
        self._httpd.server_close()
        self._thread.join()

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()

    def paths(self) -> list[str]:
        with self._lock:
            return [p for _, p, _ in self.request_log]

    def _log(self, path, code):
        with self._lock:
            self.request_log.append((time.monotonic(), path, code))

    def _take_fault(self, path) -> bool:
        with self._lock:
            left = self.faults.get(path, 0)
            if left > 0:
                self.faults[path] = left - 1
                return True
            return False

    def respond(self, path: str, cookie_header: str | None) -> tuple[int, dict]:
        cookie = SimpleCookie()
        try:
            cookie.load(cookie_header or "")
        except Exception:
            pass
        morsel = cookie.get(COOKIE_NAME)
        if morsel is None or morsel.value != self.auth_token:
            return 401, {"error": "authentication required"}
        if self._take_fault(path):
            return 503, {"error": "temporarily unavailable"}
        parts = urlsplit(path)
        if parts.path.rstrip("/") == "/search":
            raw = parse_qs(parts.query).get("page", ["0"])[0]
            try:
                k = int(raw)
            except ValueError:
                return 400, {"error": f"bad page {raw!r}"}
            # an empty listing still answers page 0, with no results
            if not (0 <= k < max(self.index.pages, 1)):
                return 404, {"error": f"page {k} not found"}
            lo, hi = self.index.bounds(k) if self.index.pages else (0, 0)
            return 200, {
                "page": k,
                "pages": self.index.pages,
                "page_size": self.index.page_size,
                "total": self.index.total,
                "results": [user_summary(u) for u in self.listed[lo:hi]],
            }
        m = _FRIENDS.match(parts.path)
        if m:
            uid = int(m.group(1))
            if uid not in self.friends:
                return 404, {"error": f"user {uid} not found"}
            return 200, {"account_id": uid, "friends": self.friends[uid]}
        return 404, {"error": "no such endpoint"}

    def _handler_class(self):
        service = self

        class Handler(BaseHTTPRequestHandler):
            protocol_version = "HTTP/1.1"
            # one write per response; avoids Nagle/delayed-ACK stalls on keep-alive
            wbufsize = -1
            disable_nagle_algorithm = True

            def do_GET(self):
                code, body = service.respond(self.path, self.headers.get("Cookie"))
                service._log(self.path, code)
                data = json.dumps(body).encode()
                self.send_response(code)
                self.send_header("Content-Type", "application/json")
                self.send_header("Content-Length", str(len(data)))
                self.end_headers()
                self.wfile.write(data)

            def log_message(self, *args):
                pass

        return Handler


def serve_mock(dataset, page_size=10, auth_token="secret", host="127.0.0.1", port=0,
               faults=None) -> MockService:
    """Start the mock service in a background thread and return its handle."""
    return MockService(dataset, page_size, auth_token, host, port, faults)
