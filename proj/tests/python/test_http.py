import json
import os
import pathlib
import re
import subprocess
import urllib.error
import urllib.request

import pytest

import expedition


def fetch(url, body=None, method=None):
    data = None if body is None else json.dumps(body).encode()
    req = urllib.request.Request(url, data=data, method=method, headers={"Content-Type": "application/json"})
    try:
        with urllib.request.urlopen(req, timeout=10) as res:
            return res.status, dict(res.headers), res.read().decode()
    except urllib.error.HTTPError as err:
        return err.code, dict(err.headers), err.read().decode()


@pytest.fixture(scope="module")
def server(engine):
    with expedition.Server(engine) as srv:
        yield srv.url


def test_endpoints_validate(server, schema):
    status, _, body = fetch(server + "/api/search", {"q": "police new york", "model": "TEXTUAL"})
    assert status == 200
    schema("search_response", json.loads(body))
    for path, name in [
        ("/api/timeline?q=world+trade+center&model=TEMPORAL_DIV", "timeline"),
        ("/api/entities?q=police+new+york", "entities"),
        ("/api/document/d1", "document"),
        ("/api/health", "health"),
    ]:
        status, _, body = fetch(server + path)
        assert status == 200, path
        schema(name, json.loads(body))


def test_errors(server, schema):
    for url, body, code in [
        ("/api/search", {"q": ""}, 400),
        ("/api/entities?q=police&model=BOGUS", None, 400),
        ("/api/document/unknown", None, 404),
    ]:
        status, _, text = fetch(server + url, body)
        assert status == code
        schema("error", json.loads(text))


def test_cors(server):
    status, headers, _ = fetch(server + "/api/search", method="OPTIONS")
    assert status == 204
    assert headers.get("Access-Control-Allow-Origin") == "*"
    _, headers, _ = fetch(server + "/api/health")
    assert headers.get("Access-Control-Allow-Origin") == "*"


def test_request_schema_examples(schema):
    schema("search_request", {"q": "world trade center", "model": "TEMPORAL_DIV", "k": 2})
    schema("search_request", {"q": "police", "prev": ["d4"], "constraints": {"time": "1993-01..1995-12"}})


CLI = os.environ.get("EXPEDITION_CLI")


@pytest.mark.skipif(not CLI, reason="command line tool not built")
def test_cli_serve_health(tmp_path, tiny6_path, schema):
    subprocess.run([CLI, "ingest", str(tiny6_path), "--out", str(tmp_path / "idx")], check=True, capture_output=True)
    proc = subprocess.Popen([CLI, "serve", str(tmp_path / "idx"), "--port", "0"], stdout=subprocess.PIPE, text=True)
    try:
        line = proc.stdout.readline()
        url = re.search(r"http://\S+", line).group(0)
        status, _, body = fetch(url + "/api/health")
        assert status == 200
        assert schema("health", json.loads(body))["doc_count"] == 6
    finally:
        proc.terminate()
        proc.wait(timeout=10)


@pytest.mark.skipif(not CLI, reason="command line tool not built")
def test_cli_json_outputs_validate(tmp_path, tiny6_path, data_dir, schema):
    idx = tmp_path / "idx"
    subprocess.run([CLI, "ingest", str(tiny6_path), "--out", str(idx)], check=True, capture_output=True)

    def run(*args):
        return json.loads(subprocess.run([CLI, *args], check=True, capture_output=True, text=True).stdout)

    schema("search_response", run("query", str(idx), "police", "--json"))
    schema("timeline", run("timeline", str(idx), "world", "trade", "center", "--json"))
    schema("replay_report", run("replay", str(data_dir / "session_trace.json"), str(idx), "--json"))
