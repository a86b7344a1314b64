"""Freeze the CLI/HTTP parity goldens from the live handlers."""
import sys
from pathlib import Path

sys.path.insert(0, "src")
sys.path.insert(0, "tests")

from fastapi.testclient import TestClient

from argmine.cli import dumps
from argmine.service import create_app
from parity_cases import build_cases
from test_parity import http_payload

out = Path("tests/goldens")
out.mkdir(parents=True, exist_ok=True)

with TestClient(create_app([])) as client:
    for name, case in sorted(build_cases().items()):
        payload = http_payload(client, case)
        path = out / f"{name}.json"
        path.write_text(dumps(payload) + "\n")
        print(path)
