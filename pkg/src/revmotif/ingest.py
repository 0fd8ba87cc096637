"""Revision-log acquisition: live wiki API, JSON Lines fixtures, metadata."""

from __future__ import annotations

import enum
import json
import logging
import os
import re
import threading
import time
from dataclasses import dataclass, field, replace
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Iterable
from urllib.parse import urlsplit

import requests

from .errors import (
    ApiParseError,
    ArticleNotFoundError,
    DataError,
    FixtureParseError,
    InsufficientDataError,
    TransportError,
)

log = logging.getLogger(__name__)

DEFAULT_ENDPOINT = "https://en.wikipedia.org/w/api.php"
ENDPOINT_ENV = "REVMOTIF_API_ENDPOINT"
DEFAULT_BATCH_LIMIT = 500
DEFAULT_DELAY = 0.2
MAX_ATTEMPTS = 5
USER_AGENT = "revmotif/0.1 (revision-network motif analysis)"

SECONDS_PER_DAY = 86400.0
DAYS_PER_MONTH = 30.0


class Label(str, enum.Enum):
    CONTROVERSIAL = "controversial"
    NON_CONTROVERSIAL = "non_controversial"


def parse_timestamp(value: str) -> datetime:
    """Parse an ISO-8601 instant into an aware UTC datetime (seconds precision)."""
    if not isinstance(value, str) or not value:
        raise ValueError(f"not a timestamp: {value!r}")
    text = value.strip()
    if text.endswith(("Z", "z")):
        text = text[:-1] + "+00:00"
    dt = datetime.fromisoformat(text)
    if dt.tzinfo is None:
        dt = dt.replace(tzinfo=timezone.utc)
    return dt.astimezone(timezone.utc).replace(microsecond=0)


def format_timestamp(dt: datetime) -> str:
    return dt.astimezone(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


@dataclass(frozen=True)
class RevisionEvent:
    editor: str
    timestamp: datetime

    def __post_init__(self):
        if not isinstance(self.editor, str) or not self.editor:
            raise DataError("revision editor must be a non-empty string")
        if not isinstance(self.timestamp, datetime) or self.timestamp.tzinfo is None:
            raise DataError("revision timestamp must be an aware datetime")


@dataclass(frozen=True)
class RevisionLog:
    """Chronological (oldest first) revision history of one article."""

    article_id: str
    title: str
    label: Label
    events: tuple[RevisionEvent, ...]
    fetched_at: datetime

    def __post_init__(self):
        object.__setattr__(self, "label", Label(self.label))
        object.__setattr__(self, "events", tuple(self.events))
        for prev, cur in zip(self.events, self.events[1:]):
            if cur.timestamp < prev.timestamp:
                raise DataError(
                    f"article {self.article_id}: events are not in chronological order"
                )

    @property
    def editors(self) -> list[str]:
        return [e.editor for e in self.events]


@dataclass(frozen=True)
class ArticleMetadata:
    editor_count: int
    age_days: float
    edit_rate: float
    age_zero: bool = False


def compute_metadata(log: RevisionLog, as_of: datetime | None = None) -> ArticleMetadata:
    """Editor count, age in days and mean revisions per 30-day window.

    ``as_of`` defaults to the log's ``fetched_at``. When the age is zero the
    edit rate is the raw revision count and ``age_zero`` is set.
    """
    if not log.events:
        raise InsufficientDataError(f"article {log.article_id}: insufficient data (no events)")
    if as_of is None:
        as_of = log.fetched_at
    age = max((as_of - log.events[0].timestamp).total_seconds(), 0.0) / SECONDS_PER_DAY
    total = len(log.events)
    if age > 0:
        return ArticleMetadata(len(set(log.editors)), age, total / (age / DAYS_PER_MONTH))
    return ArticleMetadata(len(set(log.editors)), 0.0, float(total), age_zero=True)


def filter_editors(log: RevisionLog, pattern: str | re.Pattern | None) -> RevisionLog:
    """Drop events whose editor matches ``pattern`` (e.g. bot accounts)."""
    if pattern is None:
        return log
    rx = re.compile(pattern) if isinstance(pattern, str) else pattern
    kept = tuple(e for e in log.events if not rx.search(e.editor))
    return replace(log, events=kept)


# -- JSON Lines fixtures ------------------------------------------------------


def log_to_dict(log: RevisionLog) -> dict[str, Any]:
    return {
        "article_id": log.article_id,
        "title": log.title,
        "label": log.label.value,
        "fetched_at": format_timestamp(log.fetched_at),
        "revisions": [
            {"user": e.editor, "timestamp": format_timestamp(e.timestamp)} for e in log.events
        ],
    }


def log_from_dict(obj: Any) -> RevisionLog:
    if not isinstance(obj, dict):
        raise ValueError("expected a JSON object")
    for key in ("article_id", "title", "label", "fetched_at", "revisions"):
        if key not in obj:
            raise ValueError(f"missing key {key!r}")
    if not isinstance(obj["revisions"], list):
        raise ValueError("'revisions' must be a list")
    try:
        label = Label(obj["label"])
    except ValueError:
        raise ValueError(f"unknown label {obj['label']!r}") from None
    events = []
    for i, rev in enumerate(obj["revisions"]):
        if not isinstance(rev, dict) or "user" not in rev or "timestamp" not in rev:
            raise ValueError(f"revision {i} needs 'user' and 'timestamp'")
        events.append(RevisionEvent(str(rev["user"]), parse_timestamp(rev["timestamp"])))
    return RevisionLog(
        article_id=str(obj["article_id"]),
        title=str(obj["title"]),
        label=label,
        events=tuple(events),
        fetched_at=parse_timestamp(obj["fetched_at"]),
    )


def dump_fixtures(logs: Iterable[RevisionLog], path: str | os.PathLike) -> int:
    n = 0
    with open(path, "w", encoding="utf-8") as fh:
        for lg in logs:
            fh.write(json.dumps(log_to_dict(lg), ensure_ascii=False, sort_keys=True))
            fh.write("\n")
            n += 1
    return n


def load_fixtures(path: str | os.PathLike) -> list[RevisionLog]:
    """Read one revision log per line. Blank lines are skipped."""
    logs: list[RevisionLog] = []
    seen: set[str] = set()
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                lg = log_from_dict(json.loads(line))
            except (ValueError, DataError) as exc:
                raise FixtureParseError(lineno, str(exc)) from exc
            if lg.article_id in seen:
                raise FixtureParseError(lineno, f"duplicate article_id {lg.article_id!r}")
            seen.add(lg.article_id)
            logs.append(lg)
    return logs


# -- live API -------------------------------------------------------------------


class HostThrottle:
    """Enforces a minimum delay between requests to the same host."""

    def __init__(self, delay: float = DEFAULT_DELAY):
        self.delay = delay
        self._lock = threading.Lock()
        self._last: dict[str, float] = {}

    def wait(self, url: str) -> None:
        host = urlsplit(url).netloc
        with self._lock:
            now = time.monotonic()
            ready = self._last.get(host, -float("inf")) + self.delay
            if ready > now:
                time.sleep(ready - now)
                now = ready
            self._last[host] = now


def default_endpoint() -> str:
    return os.environ.get(ENDPOINT_ENV) or DEFAULT_ENDPOINT


def _get_json(session, url, params, throttle, max_attempts, backoff):
    for attempt in range(max_attempts):
        if throttle is not None:
            throttle.wait(url)
        try:
            resp = session.get(url, params=params, timeout=30)
            resp.raise_for_status()
        except requests.RequestException as exc:
            status = getattr(getattr(exc, "response", None), "status_code", None)
            if status is not None and 400 <= status < 500 and status != 429:
                raise TransportError(f"HTTP {status} from {url}") from exc
            if attempt + 1 == max_attempts:
                raise TransportError(
                    f"giving up on {url} after {max_attempts} attempts: {exc}"
                ) from exc
            wait = backoff * 2**attempt
            log.warning("request failed (%s), retrying in %.2fs", exc, wait)
            time.sleep(wait)
            continue
        try:
            return resp.json()
        except ValueError as exc:
            raise ApiParseError("<body>", "response is not JSON") from exc
    raise AssertionError("unreachable")


def _page_from(data: Any, title: str) -> dict:
    if not isinstance(data, dict):
        raise ApiParseError("<body>", "expected a JSON object")
    if "error" in data:
        err = data["error"]
        info = err.get("info", err) if isinstance(err, dict) else err
        raise ApiParseError("error", str(info))
    query = data.get("query")
    if not isinstance(query, dict):
        raise ApiParseError("query")
    pages = query.get("pages")
    if isinstance(pages, dict):
        pages = list(pages.values())
    if not isinstance(pages, list) or len(pages) != 1 or not isinstance(pages[0], dict):
        raise ApiParseError("query.pages")
    page = pages[0]
    if "missing" in page or "invalid" in page:
        raise ArticleNotFoundError(title)
    return page


def fetch_revisions(
    title: str,
    endpoint: str | None = None,
    batch_limit: int = DEFAULT_BATCH_LIMIT,
    *,
    label: Label | str = Label.NON_CONTROVERSIAL,
    session: requests.Session | None = None,
    throttle: HostThrottle | None = None,
    max_attempts: int = MAX_ATTEMPTS,
    backoff: float = 0.5,
) -> RevisionLog:
    """Download the complete revision history of ``title``.

    Follows ``rvcontinue`` tokens until the API stops returning one. Revisions
    whose user name has been suppressed carry no editor and are skipped.
    The result is sorted oldest-first whatever order the API used.
    """
    if not title or not title.strip():
        raise DataError("title must be non-empty")
    if batch_limit < 1:
        raise DataError("batch_limit must be positive")
    endpoint = endpoint or default_endpoint()
    own_session = session is None
    if own_session:
        session = requests.Session()
        session.headers["User-Agent"] = USER_AGENT

    base = {
        "action": "query",
        "prop": "revisions",
        "titles": title,
        "rvprop": "user|timestamp",
        "rvlimit": str(batch_limit),
        "format": "json",
    }
    cont: dict[str, str] = {}
    raw: list[tuple[datetime, int, str]] = []
    page_id = None
    hidden = 0
    try:
        while True:
            data = _get_json(session, endpoint, {**base, **cont}, throttle, max_attempts, backoff)
            page = _page_from(data, title)
            if "pageid" not in page:
                raise ApiParseError("query.pages[].pageid")
            page_id = str(page["pageid"])
            revs = page.get("revisions", [])
            if not isinstance(revs, list):
                raise ApiParseError("query.pages[].revisions")
            for i, rev in enumerate(revs):
                if not isinstance(rev, dict):
                    raise ApiParseError(f"revisions[{i}]")
                if "user" not in rev:
                    if "userhidden" in rev:
                        hidden += 1
                        continue
                    raise ApiParseError(f"revisions[{i}].user")
                try:
                    ts = parse_timestamp(rev["timestamp"])
                except (KeyError, ValueError, TypeError):
                    raise ApiParseError(f"revisions[{i}].timestamp") from None
                # secondary key keeps API order stable for equal timestamps
                raw.append((ts, len(raw), str(rev["user"])))
            nxt = data.get("continue")
            if not nxt:
                break
            if not isinstance(nxt, dict) or "rvcontinue" not in nxt:
                raise ApiParseError("continue.rvcontinue")
            cont = {k: str(v) for k, v in nxt.items()}
    finally:
        if own_session:
            session.close()

    if hidden:
        log.info("%s: skipped %d revisions with hidden user", title, hidden)
    # API default order is newest first; sort chronologically but keep
    # same-second revisions in their true (reversed API) order.
    newest_first = all(a[0] >= b[0] for a, b in zip(raw, raw[1:]))
    if newest_first:
        raw.reverse()
        ordered = raw
    else:
        ordered = sorted(raw, key=lambda r: (r[0], r[1]))
    events = tuple(RevisionEvent(user, ts) for ts, _, user in ordered)
    return RevisionLog(
        article_id=page_id,
        title=title,
        label=Label(label),
        events=events,
        fetched_at=datetime.now(timezone.utc).replace(microsecond=0),
    )


@dataclass
class FetchCheckpoint:
    """Titles already fetched, persisted as one title per line."""

    path: Path
    done: set[str] = field(default_factory=set)

    @classmethod
    def open(cls, path: str | os.PathLike) -> FetchCheckpoint:
        path = Path(path)
        done = set()
        if path.exists():
            done = {ln.rstrip("\n") for ln in path.read_text(encoding="utf-8").splitlines() if ln}
        return cls(path, done)

    def mark(self, title: str) -> None:
        self.done.add(title)
        with open(self.path, "a", encoding="utf-8") as fh:
            fh.write(title + "\n")
