"""File-backed result cache for quotient components."""

import json
import os
import tempfile
from pathlib import Path
from typing import Optional

from filelock import FileLock

from .constants import CACHE_FILE_PATTERN, DEFAULT_CACHE_DIR, ENV_CACHE_DIR
from .models import ComponentRecord
from .observability import log_error, log_event


class ResultCache:
    """Simple on-disk key/value store of ComponentRecord documents.

    Keys are ``(type, rank, algebra, p, q)``; each key maps to one JSON file
    ``<root>/<type><rank>/<algebra>_<p>_<q>.json``.
    """

    def __init__(self, root: Optional[str] = None, enabled: bool = True):
        """
        Initialize the cache.

        Args:
            root: Cache directory (defaults to $CDSW_CACHE_DIR or ./cache)
            enabled: When False every read misses and writes are dropped
        """
        self.root = Path(root or os.getenv(ENV_CACHE_DIR, DEFAULT_CACHE_DIR))
        self.enabled = enabled

    def path_for(self, type_letter: str, rank: int, algebra: str, p: int, q: int) -> Path:
        """Path of the file holding one component."""
        name = CACHE_FILE_PATTERN.format(algebra=algebra, p=p, q=q)
        return self.root / f"{type_letter}{rank}" / name

    def _lock_for(self, path: Path) -> FileLock:
        return FileLock(str(path) + ".lock")

    def get(
        self,
        type_letter: str,
        rank: int,
        algebra: str,
        p: int,
        q: int,
        content_hash: str,
    ) -> Optional[ComponentRecord]:
        """
        Load a component record.

        Args:
            type_letter: Cartan type letter
            rank: Rank
            algebra: Quotient algebra name
            p: First degree
            q: Second degree
            content_hash: Hash of the current structure-constant table

        Returns:
            The record, or None on miss (absent, unreadable or stale)
        """
        if not self.enabled:
            return None

        path = self.path_for(type_letter, rank, algebra, p, q)
        if not path.exists():
            log_event("cache_miss", {"path": str(path)}, level="DEBUG")
            return None

        path.parent.mkdir(parents=True, exist_ok=True)
        with self._lock_for(path):
            try:
                record = ComponentRecord.from_json(json.loads(path.read_text()))
            except (OSError, ValueError) as e:
                log_error("cache_unreadable", e, {"path": str(path)})
                return None

        if record.content_hash != content_hash:
            log_event(
                "cache_invalidated",
                {"path": str(path), "stored": record.content_hash, "current": content_hash},
                level="WARNING",
            )
            return None

        log_event("cache_hit", {"path": str(path)}, level="DEBUG")
        return record

    def put(self, record: ComponentRecord) -> None:
        """
        Save a component record atomically.

        Args:
            record: The record to store (overwrites any existing file)
        """
        if not self.enabled:
            return

        path = self.path_for(record.type, record.rank, record.algebra, record.p, record.q)
        path.parent.mkdir(parents=True, exist_ok=True)

        with self._lock_for(path):
            fd, tmp_name = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
            try:
                with os.fdopen(fd, "w") as handle:
                    json.dump(record.to_json(), handle, indent=1, sort_keys=True)
                os.replace(tmp_name, path)
            except BaseException:
                if os.path.exists(tmp_name):
                    os.unlink(tmp_name)
                raise

        log_event("cache_written", {"path": str(path)}, level="DEBUG")

    def delete(self, type_letter: str, rank: int, algebra: str, p: int, q: int) -> None:
        """Remove one component file, if present."""
        path = self.path_for(type_letter, rank, algebra, p, q)
        if not path.exists():
            return
        with self._lock_for(path):
            path.unlink(missing_ok=True)
