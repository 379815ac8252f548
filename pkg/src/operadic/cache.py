"""Run configuration and the on-disk homology cache.

Entries are canonical JSON files named by the hash of the job description;
writes go to a temp file in the same directory and are renamed into place.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from dataclasses import asdict, dataclass, fields
from pathlib import Path

CACHE_ENV = "OPERADIC_CACHE_DIR"


class ConfigError(ValueError):
    pass


class CacheCorrupted(RuntimeError):
    pass


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % q for q in range(2, int(p ** 0.5) + 1))


@dataclass(frozen=True)
class RunConfig:
    field: str = "rationals"
    max_arity: int = 5
    cache_dir: str | None = None
    format: str = "table"
    workers: int = 1
    seed: int = 0

    def __post_init__(self):
        if self.field != "rationals" and not (self.field.isdigit() and _is_prime(int(self.field))):
            raise ConfigError(f"field must be 'rationals' or a prime, got {self.field!r}")
        if self.max_arity < 2:
            raise ConfigError("max arity must be at least 2")
        if self.format not in ("json", "table"):
            raise ConfigError("format must be 'json' or 'table'")
        if self.workers < 1:
            raise ConfigError("workers must be positive")

    @property
    def prime(self) -> int | None:
        return None if self.field == "rationals" else int(self.field)

    def resolved_cache_dir(self) -> str | None:
        return os.environ.get(CACHE_ENV) or self.cache_dir

    @classmethod
    def from_file(cls, path: str, **overrides) -> "RunConfig":
        try:
            data = json.loads(Path(path).read_text())
        except (OSError, ValueError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown config keys {sorted(unknown)}")
        data.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**data)

    def to_json(self) -> str:
        return canonical_json(asdict(self))


class HomologyCache:
    """job -> {degree: dim}; a job is (square name, params, arity)."""

    def __init__(self, directory: str):
        self.dir = Path(directory)
        self.dir.mkdir(parents=True, exist_ok=True)

    def _path(self, job) -> Path:
        digest = hashlib.sha256(canonical_json(list(job)).encode()).hexdigest()[:24]
        return self.dir / f"{digest}.json"

    def get_homology(self, job) -> dict[int, int] | None:
        path = self._path(job)
        if not path.exists():
            return None
        try:
            data = json.loads(path.read_text())
            if data["job"] != json.loads(canonical_json(list(job))):
                raise ValueError("job mismatch")
            return {int(d): int(c) for d, c in data["homology"].items()}
        except (ValueError, KeyError, TypeError, AttributeError) as exc:
            raise CacheCorrupted(f"unreadable cache entry {path.name}: {exc}") from exc

    def put_homology(self, job, homology: dict[int, int]) -> None:
        payload = canonical_json({"job": list(job), "homology": {str(d): c for d, c in homology.items()}})
        fd, tmp = tempfile.mkstemp(dir=self.dir, suffix=".tmp")
        with os.fdopen(fd, "w") as fh:
            fh.write(payload)
        os.replace(tmp, self._path(job))

    def entries(self) -> list[Path]:
        return sorted(self.dir.glob("*.json"))
