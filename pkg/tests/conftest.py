from __future__ import annotations

import json
import threading
from datetime import datetime, timedelta, timezone
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from urllib.parse import parse_qs, urlsplit

import numpy as np
import pytest

from revmotif.graph import RevisionNetwork
from revmotif.ingest import Label, RevisionEvent, RevisionLog

T0 = datetime(2019, 1, 1, tzinfo=timezone.utc)
EXAMPLE_NEWEST_FIRST = ["A", "B", "D", "A", "C", "A"]
EXAMPLE_EDGES = {("A", "B"), ("B", "D"), ("D", "A"), ("A", "C"), ("C", "A")}


def make_log(editors, article_id="a1", label=Label.CONTROVERSIAL, start=T0, step_hours=1,
             fetched_at=None):
    events = tuple(
        RevisionEvent(e, start + timedelta(hours=step_hours * i)) for i, e in enumerate(editors)
    )
    return RevisionLog(article_id, f"Title {article_id}", label, events,
                       fetched_at or start + timedelta(days=365))


def random_digraph(rng: np.random.Generator, n: int, p: float) -> RevisionNetwork:
    adj = rng.random((n, n)) < p
    np.fill_diagonal(adj, False)
    s, d = np.nonzero(adj)
    return RevisionNetwork.unlabeled(n, s, d)


@pytest.fixture
def example_log():
    return make_log(list(reversed(EXAMPLE_NEWEST_FIRST)), article_id="example")


class MockWiki:
    """Serves revision histories the way the MediaWiki query API does.

    ``pages`` maps title -> list of (user, timestamp) newest first. Honours
    ``rvlimit`` and hands out an ``rvcontinue`` offset token.
    """

    def __init__(self):
        self.pages: dict[str, list[tuple[str, str]]] = {}
        self.fail_next = 0
        self.raw: dict[str, object] = {}
        self.requests: list[dict[str, str]] = []
        handler = self._handler()
        self.server = ThreadingHTTPServer(("127.0.0.1", 0), handler)
        self.thread = threading.Thread(target=self.server.serve_forever, args=(0.02,), daemon=True)

    @property
    def url(self):
        host, port = self.server.server_address
        return f"http://{host}:{port}/w/api.php"

    def _handler(self):
        wiki = self

        class Handler(BaseHTTPRequestHandler):
            def log_message(self, *args):
                pass

            def do_GET(self):
                q = {k: v[0] for k, v in parse_qs(urlsplit(self.path).query).items()}
                wiki.requests.append(q)
                if wiki.fail_next:
                    wiki.fail_next -= 1
                    self.send_response(503)
                    self.end_headers()
                    return
                body = wiki.respond(q)
                data = json.dumps(body).encode()
                self.send_response(200)
                self.send_header("Content-Type", "application/json")
                self.send_header("Content-Length", str(len(data)))
                self.end_headers()
                self.wfile.write(data)

        return Handler

    def respond(self, q):
        title = q.get("titles", "")
        if title in self.raw:
            return self.raw[title]
        if title not in self.pages:
            return {"batchcomplete": "", "query": {"pages": {"-1": {"ns": 0, "title": title, "missing": ""}}}}
        revs = self.pages[title]
        limit = int(q.get("rvlimit", "500"))
        offset = int(q.get("rvcontinue", "0"))
        chunk = revs[offset:offset + limit]
        pageid = 1000 + sorted(self.pages).index(title)
        body = {"query": {"pages": {str(pageid): {
            "pageid": pageid, "ns": 0, "title": title,
            "revisions": [{"user": u, "timestamp": ts} for u, ts in chunk],
        }}}}
        if offset + limit < len(revs):
            body["continue"] = {"rvcontinue": str(offset + limit), "continue": "||"}
        return body

    def __enter__(self):
        self.thread.start()
        return self

    def __exit__(self, *exc):
        self.server.shutdown()
        self.server.server_close()


@pytest.fixture
def mock_wiki():
    with MockWiki() as wiki:
        yield wiki


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)
