"""Mock paginated profile service and the crawler that harvests it."""
from .crawler import (
    AuthError,
    Checkpoint,
    CrawlError,
    CrawlSession,
    RateLimiter,
    crawl,
    max_in_window,
)
from .pagination import PageIndex, paginate
from .server import COOKIE_NAME, MockService, serve_mock

__all__ = [
    "COOKIE_NAME",
    "AuthError",
    "Checkpoint",
    "CrawlError",
    "CrawlSession",
    "MockService",
    "PageIndex",
    "RateLimiter",
    "crawl",
    "max_in_window",
    "paginate",
    "serve_mock",
]
