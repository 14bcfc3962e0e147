from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class PageIndex:
    page_size: int
    total: int
    pages: int

    def page_len(self, k: int) -> int:
        if not (0 <= k < self.pages):
            raise IndexError(f"page {k} out of range [0, {self.pages})")
        if k < self.pages - 1:
            return self.page_size
        return self.total - (self.pages - 1) * self.page_size

    def bounds(self, k: int) -> tuple[int, int]:
        start = k * self.page_size
        return start, start + self.page_len(k)

    @property
    def last_page_len(self) -> int:
        return self.page_len(self.pages - 1) if self.pages else 0


def paginate(total: int, page_size: int = 10) -> PageIndex:
    """Split ``total`` listings into pages of ``page_size``; the last page holds the rest."""
    if page_size < 1:
        raise ValueError("page_size must be >= 1")
    if total < 0:
        raise ValueError("total must be >= 0")
    return PageIndex(page_size, total, math.ceil(total / page_size))
