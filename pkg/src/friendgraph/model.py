"""Domain types for community members and friendships, and the table readers.

A community is stored as two comma-separated tables: a users table (one row
per account) and an edges table (one row per friendship, either direction).
"""
from __future__ import annotations

import csv
import enum
import hashlib
import io
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Sequence

AGE_MIN = 8
AGE_MAX = 120

USERS_HEADER = ("account_id", "name", "age", "gender", "relationship_status")
EDGES_HEADER = ("account_id", "friend_account_id")


class DatasetError(ValueError):
    """Raised for unreadable tables or datasets that fail validation."""


class Gender(enum.Enum):
    MALE = "M"
    FEMALE = "F"

    @classmethod
    def parse(cls, token: str) -> "Gender":
        t = token.strip().lower()
        if t in ("m", "male"):
            return cls.MALE
        if t in ("f", "female"):
            return cls.FEMALE
        raise ValueError(f"unknown gender token {token!r}")


class Status(enum.Enum):
    SINGLE = "single"
    MARRIED = "married"
    IAR = "iar"
    UNKNOWN = "unknown"

    @classmethod
    def parse(cls, token: str) -> "Status":
        t = token.strip().lower().replace(" ", "").replace("_", "")
        aliases = {"inarelationship": "iar", "unk": "unknown", "": "unknown"}
        t = aliases.get(t, t)
        try:
            return cls(t)
        except ValueError:
            raise ValueError(f"unknown relationship status {token!r}") from None


GENDERS: tuple[Gender, ...] = (Gender.MALE, Gender.FEMALE)
STATUSES: tuple[Status, ...] = (Status.SINGLE, Status.MARRIED, Status.IAR, Status.UNKNOWN)


@dataclass(frozen=True, order=True)
class UserRecord:
    """One row of the users table.

    Stub records stand for friends that were referenced but never crawled;
    they carry no age or gender.
    """

    account_id: int
    name: str = ""
    age: int | None = None
    gender: Gender | None = None
    status: Status = Status.UNKNOWN
    stub: bool = False

    def __post_init__(self):
        if self.account_id <= 0:
            raise DatasetError(f"account_id must be positive, got {self.account_id}")
        if self.stub:
            return
        if self.age is None or not (AGE_MIN <= self.age <= AGE_MAX):
            raise DatasetError(f"age {self.age!r} outside [{AGE_MIN}, {AGE_MAX}]")
        if self.gender is None:
            raise DatasetError(f"user {self.account_id} has no gender")

    @classmethod
    def placeholder(cls, account_id: int) -> "UserRecord":
        return cls(account_id, stub=True)


@dataclass(frozen=True, order=True)
class FriendEdge:
    """An undirected friendship stored in canonical form (a < b)."""

    a: int
    b: int

    def __post_init__(self):
        if self.a == self.b:
            raise DatasetError(f"self-friendship on account {self.a}")
        if self.a > self.b:
            raise DatasetError(f"edge ({self.a}, {self.b}) is not canonical")

    @classmethod
    def of(cls, u: int, v: int) -> "FriendEdge":
        return cls(u, v) if u < v else cls(v, u)

    def canonical(self) -> "FriendEdge":
        return FriendEdge.of(self.a, self.b)


@dataclass(frozen=True)
class Diagnostic:
    row: int
    message: str

    def __str__(self):
        return f"row {self.row}: {self.message}"


@dataclass(frozen=True)
class CommunityDataset:
    """Validated users/edges pair. Users are sorted by id, edges canonical and sorted."""

    users: tuple[UserRecord, ...]
    edges: tuple[FriendEdge, ...]
    _by_id: Mapping[int, UserRecord] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_by_id", {u.account_id: u for u in self.users})

    @property
    def n_users(self) -> int:
        return len(self.users)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @property
    def n_stubs(self) -> int:
        return sum(1 for u in self.users if u.stub)

    def user(self, account_id: int) -> UserRecord:
        return self._by_id[account_id]

    def __contains__(self, account_id: int) -> bool:
        return account_id in self._by_id

    def members(self) -> list[UserRecord]:
        """Crawled (non-stub) users."""
        return [u for u in self.users if not u.stub]

    @property
    def digest(self) -> str:
        h = hashlib.sha256()
        h.update(users_to_text(self.users).encode())
        h.update(b"\0")
        h.update(edges_to_text(self.edges).encode())
        return h.hexdigest()


def _rows(stream: Iterable[str], header: Sequence[str]):
    try:
        reader = csv.reader(stream)
        first = next(reader, None)
    except (OSError, UnicodeDecodeError, csv.Error) as exc:
        raise DatasetError(f"unreadable table: {exc}") from exc
    if first is None:
        raise DatasetError("empty table: missing header row")
    got = tuple(c.strip().lower() for c in first)
    if got != tuple(header):
        raise DatasetError(f"bad header {first!r}, expected {','.join(header)}")
    try:
        # header is row 1
        for rowno, row in enumerate(reader, start=2):
            if not row or all(not c.strip() for c in row):
                continue
            yield rowno, row
    except csv.Error as exc:
        raise DatasetError(f"unreadable table: {exc}") from exc


def parse_users(stream: Iterable[str]) -> tuple[list[UserRecord], list[Diagnostic]]:
    """Parse a users table.

    Malformed rows are reported as diagnostics rather than dropped silently.
    A row whose age and gender are both blank is read back as a stub record.
    Repeated account ids keep the first row.
    """
    users: list[UserRecord] = []
    diags: list[Diagnostic] = []
    seen: set[int] = set()
    for rowno, row in _rows(stream, USERS_HEADER):
        if len(row) != len(USERS_HEADER):
            diags.append(Diagnostic(rowno, f"expected {len(USERS_HEADER)} fields, got {len(row)}"))
            continue
        # names are kept verbatim; every other field is trimmed
        raw_id, raw_age, raw_gender, raw_status = (row[i].strip() for i in (0, 2, 3, 4))
        name = row[1]
        try:
            account_id = int(raw_id)
        except ValueError:
            diags.append(Diagnostic(rowno, "unparseable account_id"))
            continue
        if account_id <= 0:
            diags.append(Diagnostic(rowno, "account_id must be positive"))
            continue
        if account_id in seen:
            diags.append(Diagnostic(rowno, f"duplicate account_id {account_id}"))
            continue
        if not raw_age and not raw_gender:
            seen.add(account_id)
            users.append(UserRecord(account_id, name, stub=True))
            continue
        try:
            age = int(raw_age)
        except ValueError:
            diags.append(Diagnostic(rowno, "unparseable age"))
            continue
        if not (AGE_MIN <= age <= AGE_MAX):
            diags.append(Diagnostic(rowno, f"age {age} outside [{AGE_MIN}, {AGE_MAX}]"))
            continue
        try:
            gender = Gender.parse(raw_gender)
        except ValueError:
            diags.append(Diagnostic(rowno, f"unknown gender {raw_gender!r}"))
            continue
        try:
            status = Status.parse(raw_status)
        except ValueError:
            diags.append(Diagnostic(rowno, f"unknown relationship status {raw_status!r}"))
            continue
        seen.add(account_id)
        users.append(UserRecord(account_id, name, age, gender, status))
    return users, diags


def parse_edges(stream: Iterable[str]) -> tuple[list[FriendEdge], list[Diagnostic]]:
    """Parse an edges table into canonical, de-duplicated friendships."""
    edges: dict[FriendEdge, None] = {}
    diags: list[Diagnostic] = []
    for rowno, row in _rows(stream, EDGES_HEADER):
        if len(row) != 2:
            diags.append(Diagnostic(rowno, f"expected 2 fields, got {len(row)}"))
            continue
        try:
            u, v = int(row[0]), int(row[1])
        except ValueError:
            diags.append(Diagnostic(rowno, "unparseable account id"))
            continue
        if u <= 0 or v <= 0:
            diags.append(Diagnostic(rowno, "account ids must be positive"))
            continue
        if u == v:
            diags.append(Diagnostic(rowno, "self-loop"))
            continue
        edges.setdefault(FriendEdge.of(u, v), None)
    return list(edges), diags


def validate_dataset(
    users: Iterable[UserRecord],
    edges: Iterable[FriendEdge],
    policy: str = "strict",
) -> CommunityDataset:
    """Check referential integrity and assemble a dataset.

    With ``policy="strict"`` an edge endpoint missing from ``users`` is an
    error. With ``policy="stub"`` a placeholder record is created for it.
    """
    if policy not in ("strict", "stub"):
        raise ValueError(f"unknown policy {policy!r}")
    by_id: dict[int, UserRecord] = {}
    for u in users:
        if u.account_id in by_id:
            raise DatasetError(f"duplicate account_id {u.account_id}")
        by_id[u.account_id] = u
    canon = {e.canonical() for e in edges}
    missing = sorted({x for e in canon for x in (e.a, e.b)} - by_id.keys())
    if missing:
        if policy == "strict":
            raise DatasetError(f"edges reference unknown accounts: {missing}")
        for x in missing:
            by_id[x] = UserRecord.placeholder(x)
    return CommunityDataset(
        users=tuple(sorted(by_id.values(), key=lambda u: u.account_id)),
        edges=tuple(sorted(canon)),
    )


def users_to_text(users: Iterable[UserRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(USERS_HEADER)
    for u in users:
        if u.stub:
            w.writerow([u.account_id, u.name, "", "", u.status.value])
        else:
            w.writerow([u.account_id, u.name, u.age, u.gender.value, u.status.value])
    return buf.getvalue()


def edges_to_text(edges: Iterable[FriendEdge]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(EDGES_HEADER)
    for e in edges:
        w.writerow([e.a, e.b])
    return buf.getvalue()


def write_dataset(dataset: CommunityDataset, users_path, edges_path) -> None:
    Path(users_path).write_text(users_to_text(dataset.users), encoding="utf-8", newline="\n")
    Path(edges_path).write_text(edges_to_text(dataset.edges), encoding="utf-8", newline="\n")


def load_dataset(users_path, edges_path, policy: str = "strict"):
    """Read both tables from disk. Returns ``(dataset, diagnostics)``."""
    try:
        with open(users_path, encoding="utf-8", newline="") as fh:
            users, udiag = parse_users(fh)
        with open(edges_path, encoding="utf-8", newline="") as fh:
            edges, ediag = parse_edges(fh)
    except OSError as exc:
        raise DatasetError(f"cannot read table: {exc}") from exc
    return validate_dataset(users, edges, policy), udiag + ediag


def file_digest(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()
