"""Demography, friendship preferences and topology of a crawled online community."""
from .kernels import BACKEND
from .model import (
    CommunityDataset,
    DatasetError,
    FriendEdge,
    Gender,
    Status,
    UserRecord,
    load_dataset,
    parse_edges,
    parse_users,
    validate_dataset,
    write_dataset,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "CommunityDataset",
    "DatasetError",
    "FriendEdge",
    "Gender",
    "Status",
    "UserRecord",
    "load_dataset",
    "parse_edges",
    "parse_users",
    "validate_dataset",
    "write_dataset",
]
