from __future__ import annotations

import json
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

import pytest

from equisumm.corpus_io import Corpus
from equisumm.lexicon import load_lexicon

# The four example tweets used throughout, with their gold categories.
EXAMPLE_TWEETS = [
    ("1", "In the age of #MeToo and biased laws, men are suffering...", "M"),
    ("2", "Has any woman from biological science background cried victim...?", "F"),
    ("3", "Pain knows no gender. When it hurts, it hurts equally...", "B"),
    ("4", "With the rise of #MeToo, workplace dynamics are changing...", "N"),
]


@pytest.fixture(scope="session")
def lex():
    return load_lexicon()


@pytest.fixture
def example_corpus():
    return Corpus.from_texts([t for _, t, _ in EXAMPLE_TWEETS], ids=[i for i, _, _ in EXAMPLE_TWEETS])


class StubEmbedService:
    """Local ``/embed`` server; ``mode`` selects ok, ragged, or error behavior."""

    def __init__(self, dim: int = 4, mode: str = "ok") -> None:
        self.dim = dim
        self.mode = mode
        self.requests: list[list[str]] = []
        stub = self

        class Handler(BaseHTTPRequestHandler):
            def log_message(self, *args):
                pass

            def do_POST(self):
                body = json.loads(self.rfile.read(int(self.headers["Content-Length"])))
                stub.requests.append(body["texts"])
                if stub.mode == "error":
                    self.send_response(500)
                    self.end_headers()
                    return
                vectors = [stub.vector(t) for t in body["texts"]]
                if stub.mode == "ragged" and vectors:
                    vectors[-1] = vectors[-1][:-1]
                payload = json.dumps({"dim": stub.dim, "vectors": vectors}).encode()
                self.send_response(200)
                self.send_header("Content-Type", "application/json")
                self.send_header("Content-Length", str(len(payload)))
                self.end_headers()
                self.wfile.write(payload)

        self.server = ThreadingHTTPServer(("127.0.0.1", 0), Handler)
        self.url = f"http://127.0.0.1:{self.server.server_port}"
        self._thread = threading.Thread(target=self.server.serve_forever, daemon=True)
        self._thread.start()

    def vector(self, text: str) -> list[float]:
        # deterministic, order-revealing: first component is the text's number
        n = float(text.split()[-1]) if text.split()[-1].isdigit() else float(len(text))
        return [n + 1.0] + [1.0] * (self.dim - 1)

    def close(self) -> None:
        self.server.shutdown()
        self.server.server_close()


@pytest.fixture
def embed_service():
    services = []

    def start(**kw):
        svc = StubEmbedService(**kw)
        services.append(svc)
        return svc

    yield start
    for svc in services:
        svc.close()


# Acceptance results collected by test_acceptance and printed at the end of the run.
ACCEPTANCE_RESULTS: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_RESULTS):
        ok, line = ACCEPTANCE_RESULTS[number]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {number:2d}. {line}")
