"""Seeded generator of synthetic communities with tunable marginals and mixing.

Users get a gender, an age drawn from a normal mixture and a relationship
status drawn conditionally on age band. Friendships grow by preferential
attachment: each arriving user links to earlier users with probability
proportional to

    (degree + 1) ** degree_exponent
      * exp(-|age difference| / age_kernel_scale)
      * gender factor (gender_heterophily_weight when genders differ, else 1)
      * status_affinity[status_new][status_candidate]

The first ``attachment_degree`` users form a clique. With the default
``links`` setting every later user adds exactly ``attachment_degree`` links, so
``|E| = m * (n - m) + m * (m - 1) / 2``.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np
import yaml

from .model import Gender, Status, STATUSES, UserRecord, FriendEdge, CommunityDataset

PROB_TOL = 1e-9
_STATUS_KEYS = {s.value: s for s in STATUSES}


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class LinkCount:
    """How many links an arriving user makes.

    ``kind="fixed"`` always makes ``attachment_degree`` links. ``kind="zipf"``
    makes exactly ``attachment_degree`` links with probability ``p_min``,
    otherwise a count in ``[attachment_degree, max]`` with probability
    proportional to ``count ** -exponent``.
    """

    kind: str = "fixed"
    p_min: float = 0.0
    exponent: float = 2.0
    max: int = 1


@dataclass(frozen=True)
class EdgeModel:
    attachment_degree: int = 3
    age_kernel_scale: float = 10.0
    gender_heterophily_weight: float = 1.0
    status_affinity: tuple[tuple[float, ...], ...] = ((1.0,) * 4,) * 4
    degree_exponent: float = 1.0
    links: LinkCount = field(default_factory=LinkCount)


@dataclass(frozen=True)
class StatusBand:
    max_age: int
    probs: tuple[float, float, float, float]  # single, married, iar, unknown


@dataclass(frozen=True)
class GeneratorConfig:
    n_users: int
    seed: int = 0
    gender_split: float = 0.5
    age_mixture: tuple[tuple[float, float, float], ...] = ((1.0, 25.0, 5.0),)
    age_bounds: tuple[int, int] = (14, 80)
    status_given_age: tuple[StatusBand, ...] = (StatusBand(120, (0.25, 0.25, 0.25, 0.25)),)
    edge_model: EdgeModel = field(default_factory=EdgeModel)
    sampling: str = "iid"
    edges: bool = True
    first_id: int = 100001

    def __post_init__(self):
        self.validate()

    def validate(self):
        if self.n_users < 0:
            raise ConfigError("n_users must be non-negative")
        if not (0.0 <= self.gender_split <= 1.0):
            raise ConfigError("gender_split must be a probability")
        if not self.age_mixture:
            raise ConfigError("age_mixture is empty")
        if any(w < 0 or s <= 0 for w, _, s in self.age_mixture):
            raise ConfigError("age mixture weights must be >= 0 and spreads > 0")
        if abs(sum(w for w, _, _ in self.age_mixture) - 1.0) > PROB_TOL:
            raise ConfigError("age mixture weights must sum to 1")
        lo, hi = self.age_bounds
        if not (8 <= lo <= hi <= 120):
            raise ConfigError("age_bounds must lie within [8, 120]")
        bands = self.status_given_age
        if not bands or any(b.max_age < a.max_age for a, b in zip(bands, bands[1:])):
            raise ConfigError("status bands must be ordered by max_age")
        if bands[-1].max_age < hi:
            raise ConfigError("status bands do not cover the age range")
        for b in bands:
            if len(b.probs) != 4 or any(p < 0 for p in b.probs):
                raise ConfigError("status band needs four non-negative probabilities")
            if abs(sum(b.probs) - 1.0) > PROB_TOL:
                raise ConfigError(f"status probabilities for ages <= {b.max_age} must sum to 1")
        if self.sampling not in ("iid", "quota"):
            raise ConfigError("sampling must be 'iid' or 'quota'")
        em = self.edge_model
        if em.attachment_degree < 1:
            raise ConfigError("attachment_degree must be >= 1")
        if em.age_kernel_scale <= 0:
            raise ConfigError("age_kernel_scale must be positive")
        if em.gender_heterophily_weight < 0:
            raise ConfigError("gender_heterophily_weight must be >= 0")
        if len(em.status_affinity) != 4 or any(len(r) != 4 for r in em.status_affinity):
            raise ConfigError("status_affinity must be 4x4")
        if any(x < 0 for r in em.status_affinity for x in r):
            raise ConfigError("status_affinity entries must be >= 0")
        if em.degree_exponent < 0:
            raise ConfigError("degree_exponent must be >= 0")
        lk = em.links
        if lk.kind not in ("fixed", "zipf"):
            raise ConfigError("links.kind must be 'fixed' or 'zipf'")
        if lk.kind == "zipf":
            if not (0.0 <= lk.p_min <= 1.0):
                raise ConfigError("links.p_min must be a probability")
            if lk.max < em.attachment_degree:
                raise ConfigError("links.max must be >= attachment_degree")
        if self.edges and self.n_users and self.n_users < em.attachment_degree + 1:
            raise ConfigError(
                f"n_users={self.n_users} too small for attachment_degree={em.attachment_degree}"
            )


def _status_row(d) -> tuple[float, float, float, float]:
    unknown = set(d) - set(_STATUS_KEYS)
    if unknown:
        raise ConfigError(f"unknown status keys {sorted(unknown)}")
    return tuple(float(d.get(s.value, 0.0)) for s in STATUSES)


def config_from_dict(d: dict, **overrides) -> GeneratorConfig:
    if not isinstance(d, dict):
        raise ConfigError("config must be a mapping")
    try:
        return _from_dict(d, overrides)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"bad config: {exc!r}") from exc


def _from_dict(d: dict, overrides: dict) -> GeneratorConfig:
    d = {**d, **{k: v for k, v in overrides.items() if v is not None}}
    em = dict(d.get("edge_model") or {})
    if "status_affinity" in em:
        aff = em["status_affinity"]
        if isinstance(aff, dict):
            aff = [_status_row(aff[s.value]) for s in STATUSES]
        em["status_affinity"] = tuple(tuple(float(x) for x in row) for row in aff)
    if "links" in em:
        em["links"] = LinkCount(**em["links"])
    bands = tuple(
        StatusBand(int(b["max_age"]), _status_row(b["probs"])) for b in d.get("status_given_age", [])
    )
    kwargs = {
        k: d[k]
        for k in ("n_users", "seed", "gender_split", "sampling", "edges", "first_id")
        if k in d
    }
    if "age_mixture" in d:
        kwargs["age_mixture"] = tuple(tuple(float(x) for x in c) for c in d["age_mixture"])
    if "age_bounds" in d:
        kwargs["age_bounds"] = tuple(int(x) for x in d["age_bounds"])
    if bands:
        kwargs["status_given_age"] = bands
    return GeneratorConfig(edge_model=EdgeModel(**em), **kwargs)


def load_config(path, **overrides) -> GeneratorConfig:
    with open(path, encoding="utf-8") as fh:
        return config_from_dict(yaml.safe_load(fh), **overrides)


def preset_names() -> list[str]:
    return sorted(p.name[:-5] for p in resources.files(__package__).joinpath("presets").iterdir()
                  if p.name.endswith(".yaml"))


def load_preset(name: str, **overrides) -> GeneratorConfig:
    res = resources.files(__package__).joinpath("presets", f"{name}.yaml")
    if not res.is_file():
        raise ConfigError(f"unknown preset {name!r}; available: {preset_names()}")
    return config_from_dict(yaml.safe_load(res.read_text(encoding="utf-8")), **overrides)


def _quota(n: int, probs) -> np.ndarray:
    """Largest-remainder allocation of ``n`` items to categories."""
    p = np.asarray(probs, dtype=float)
    raw = n * p
    counts = np.floor(raw).astype(np.int64)
    short = n - int(counts.sum())
    if short:
        frac = raw - counts
        # ties go to the lower category index
        counts[np.lexsort((np.arange(len(p)), -frac))[:short]] += 1
    return counts


def _sample_ages(cfg: GeneratorConfig, rng) -> np.ndarray:
    w = np.array([c[0] for c in cfg.age_mixture])
    comp = rng.choice(len(w), size=cfg.n_users, p=w / w.sum())
    mean = np.array([c[1] for c in cfg.age_mixture])[comp]
    spread = np.array([c[2] for c in cfg.age_mixture])[comp]
    ages = np.rint(rng.normal(mean, spread))
    lo, hi = cfg.age_bounds
    return np.clip(ages, lo, hi).astype(np.int64)


def _sample_attributes(cfg: GeneratorConfig, rng):
    n = cfg.n_users
    if cfg.sampling == "quota":
        n_female = int(_quota(n, [1 - cfg.gender_split, cfg.gender_split])[1])
        female = np.zeros(n, dtype=bool)
        female[:n_female] = True
        rng.shuffle(female)
    else:
        female = rng.random(n) < cfg.gender_split
    ages = _sample_ages(cfg, rng)
    band_edges = np.array([b.max_age for b in cfg.status_given_age])
    band = np.searchsorted(band_edges, ages, side="left")
    status = np.zeros(n, dtype=np.int64)
    for bi, b in enumerate(cfg.status_given_age):
        members = np.flatnonzero(band == bi)
        if not len(members):
            continue
        if cfg.sampling == "quota":
            labels = np.repeat(np.arange(4), _quota(len(members), b.probs))
            rng.shuffle(labels)
        else:
            labels = rng.choice(4, size=len(members), p=np.asarray(b.probs) / sum(b.probs))
        status[members] = labels
    return female, ages, status


def _link_counts(cfg: GeneratorConfig, rng) -> np.ndarray:
    em = cfg.edge_model
    m = em.attachment_degree
    n = cfg.n_users
    counts = np.full(n, m, dtype=np.int64)
    if em.links.kind == "zipf" and n > m:
        support = np.arange(m, em.links.max + 1, dtype=float)
        p = support ** -em.links.exponent
        drawn = rng.choice(support.astype(np.int64), size=n - m, p=p / p.sum())
        stay = rng.random(n - m) < em.links.p_min
        counts[m:] = np.where(stay, m, drawn)
    # user t can link to at most the t users before it
    return np.minimum(counts, np.arange(n))


def _attach(cfg: GeneratorConfig, female, ages, status, rng) -> np.ndarray:
    em = cfg.edge_model
    n, m = cfg.n_users, em.attachment_degree
    aff = np.asarray(em.status_affinity, dtype=float)
    links = _link_counts(cfg, rng)
    deg = np.zeros(n, dtype=float)
    out = []
    for i in range(m):
        for j in range(i + 1, m):
            out.append((i, j))
            deg[i] += 1
            deg[j] += 1
    agef = ages.astype(float)
    inv_scale = 1.0 / em.age_kernel_scale
    het = em.gender_heterophily_weight
    for t in range(m, n):
        c = int(links[t])
        w = (deg[:t] + 1.0) if em.degree_exponent == 1.0 else (deg[:t] + 1.0) ** em.degree_exponent
        w = w * np.exp(-np.abs(agef[:t] - agef[t]) * inv_scale)
        if het != 1.0:
            w = w * np.where(female[:t] != female[t], het, 1.0)
        w = w * aff[status[t]][status[:t]]
        # weighted sampling without replacement: top-c of log(u)/w keys
        u = rng.random(t)
        positive = w > 0
        if int(positive.sum()) < c:
            raise ConfigError(f"user {t} has fewer than {c} candidates with positive weight")
        keys = np.full(t, -np.inf)
        keys[positive] = np.log(u[positive]) / w[positive]
        chosen = np.argpartition(-keys, c - 1)[:c] if c < t else np.arange(t)
        for j in chosen.tolist():
            out.append((j, t))
        deg[chosen] += 1
        deg[t] += c
    return np.asarray(out, dtype=np.int64).reshape(-1, 2)


def generate_community(cfg: GeneratorConfig) -> CommunityDataset:
    """Generate a dataset; identical configs (seed included) give identical output."""
    cfg.validate()
    rng = np.random.default_rng(cfg.seed)
    female, ages, status = _sample_attributes(cfg, rng)
    ids = np.arange(cfg.first_id, cfg.first_id + cfg.n_users, dtype=np.int64)
    users = tuple(
        UserRecord(
            int(ids[i]),
            f"user{ids[i]}",
            int(ages[i]),
            Gender.FEMALE if female[i] else Gender.MALE,
            STATUSES[int(status[i])],
        )
        for i in range(cfg.n_users)
    )
    edges: tuple[FriendEdge, ...] = ()
    if cfg.edges and cfg.n_users:
        pairs = _attach(cfg, female, ages, status, rng)
        edges = tuple(sorted(FriendEdge.of(int(ids[a]), int(ids[b])) for a, b in pairs.tolist()))
    return CommunityDataset(users, edges)


def expected_edge_count(cfg: GeneratorConfig) -> int | None:
    """Closed-form edge count for fixed link counts, else None."""
    m = cfg.edge_model.attachment_degree
    if cfg.edge_model.links.kind != "fixed" or not cfg.edges:
        return None
    return m * (cfg.n_users - m) + math.comb(m, 2)


def _plain(x):
    if isinstance(x, dict):
        return {k: _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    return x


def write_config(cfg: GeneratorConfig, path) -> None:
    d = _plain(asdict(cfg))
    d["status_given_age"] = [
        {"max_age": b["max_age"], "probs": dict(zip(_STATUS_KEYS, b["probs"]))}
        for b in d["status_given_age"]
    ]
    Path(path).write_text(yaml.safe_dump(d, sort_keys=False), encoding="utf-8")
