"""Time-aware exploratory search over a news archive.

The heavy lifting happens in the compiled ``_core`` module; this wrapper turns
its JSON payloads into Python objects.
"""

from __future__ import annotations

import json
from typing import Any, Iterable, Optional

from . import _core
from ._core import (
    INDEX_FILE,
    MODELS,
    DataError,
    Error,
    IngestSummary,
    InvalidArgument,
    SchemaError,
    Session,
    VersionError,
    build_index,
    normalize_export,
)

__version__ = "0.1.0"

__all__ = [
    "INDEX_FILE",
    "MODELS",
    "DataError",
    "Engine",
    "Error",
    "IngestSummary",
    "InvalidArgument",
    "SchemaError",
    "Server",
    "Session",
    "VersionError",
    "build_index",
    "generate",
    "normalize_export",
]


class Engine:
    """Read-only query engine over one index. Methods mirror the REST endpoints."""

    def __init__(self, core: _core.Engine):
        self._core = core

    @classmethod
    def open(cls, location) -> "Engine":
        """Load ``<dir>/index.bin`` or an index file."""
        return cls(_core.Engine.open(location))

    @classmethod
    def from_corpus(cls, path) -> "Engine":
        return cls(_core.Engine.from_corpus(path))

    @classmethod
    def from_jsonl(cls, text: str) -> "Engine":
        return cls(_core.Engine.from_jsonl(text))

    def __len__(self) -> int:
        return len(self._core)

    def search(self, q: str, model: str = "TEXTUAL", **fields: Any) -> dict:
        """Same fields as the POST /api/search body (k, prev, constraints, alpha, gamma, burst_k)."""
        body = {"q": q, "model": model, **fields}
        return json.loads(self._core.search_json(json.dumps(body)))

    def timeline(self, q: str, **params: Any) -> dict:
        return json.loads(self._core.timeline_json(q=q, **params))

    def entities(self, q: str, **params: Any) -> list:
        return json.loads(self._core.entities_json(q=q, **params))

    def document(self, doc_id: str) -> Optional[dict]:
        text = self._core.document_json(doc_id)
        return None if text is None else json.loads(text)

    def health(self) -> dict:
        return json.loads(self._core.health_json())

    def replay(self, export: str) -> dict:
        """Re-run an exported session; raises SchemaError(message, path) on a bad document."""
        return json.loads(self._core.replay_json(export))


class Server:
    """REST API on a background thread. Use as a context manager."""

    def __init__(self, engine: Engine, host: str = "127.0.0.1", port: int = 0):
        self._server = _core.Server(engine._core)
        self.host = host
        self.port = self._server.start(host, port)

    @property
    def url(self) -> str:
        return f"http://{self.host}:{self.port}"

    def stop(self) -> None:
        self._server.stop()

    def __enter__(self) -> "Server":
        return self

    def __exit__(self, *exc) -> None:
        self.stop()


def generate(
    seed: int = 1,
    docs: int = 1000,
    span: str = "1987-01..2007-06",
    entities: int = 50,
    bursts: Iterable[tuple] = (),
    topic_share: float = 0.1,
) -> str:
    """Synthetic corpus as JSONL. Each burst is ``(interval, intensity, [terms])``."""
    return _core.generate(seed, docs, span, entities, [(i, float(x), list(t)) for i, x, t in bursts], topic_share)
