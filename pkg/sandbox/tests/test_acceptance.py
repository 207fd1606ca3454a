"""Secondary acceptance: protocol fixtures and oracle regeneration."""

import json
import subprocess
import sys
import tempfile
import time
from pathlib import Path

import pytest

from molsandbox import refchem
from molsandbox.fixtures import generate

HERE = Path(__file__).resolve().parent
REPO_ROOT = HERE.parents[1]
FIXTURES = json.loads((HERE / "fixtures" / "function_fixtures.json").read_text())


class ShimProcess:
    def __init__(self):
        self.process = subprocess.Popen(
            [sys.executable, "-m", "molsandbox.shim"],
            stdin=subprocess.PIPE, stdout=subprocess.PIPE, text=True, bufsize=1)
        self.handshake = json.loads(self.process.stdout.readline())

    def ask(self, request):
        self.process.stdin.write(json.dumps(request) + "\n")
        self.process.stdin.flush()
        return json.loads(self.process.stdout.readline())

    def close(self):
        self.process.stdin.close()
        self.process.terminate()
        self.process.wait(timeout=5)


def test_sandbox_protocol_fixtures():
    """Every committed generated-function fixture over the real protocol."""
    start = time.monotonic()
    shim = ShimProcess()
    try:
        assert shim.handshake["protocol"] == 1
        ok_cases = [f for f in FIXTURES if "expected" in f]
        error_cases = [f for f in FIXTURES if "expect_error" in f]
        assert len(ok_cases) == 20
        assert {f["expect_error"] for f in error_cases} == \
            {"CompileError", "RuntimeError", "Timeout"}

        for fixture in ok_cases:
            molecule = refchem.wire_graph(refchem.molecule(fixture["smiles"]))
            response = shim.ask({"source": fixture["source"],
                                 "molecule": molecule,
                                 "timeout": fixture.get("timeout", 5.0)})
            assert response["status"] == "ok", (fixture["name"], response)
            assert response["value"] == fixture["expected"], fixture["name"]

        for fixture in error_cases:
            molecule = refchem.wire_graph(refchem.molecule(fixture["smiles"]))
            began = time.monotonic()
            response = shim.ask({"source": fixture["source"],
                                 "molecule": molecule,
                                 "timeout": fixture.get("timeout", 5.0)})
            took = time.monotonic() - began
            assert response["status"] == "error", fixture["name"]
            assert response["error_class"] == fixture["expect_error"], \
                (fixture["name"], response)
            if fixture["expect_error"] == "Timeout":
                assert abs(took - fixture["timeout"]) <= 0.5
    finally:
        shim.close()
    elapsed = time.monotonic() - start
    assert elapsed < 20.0, f"protocol fixtures took {elapsed:.1f}s"
    print(f"[ACCEPTANCE] sandbox protocol fixtures: PASS ({elapsed:.1f}s)")


def test_oracle_regeneration_is_byte_identical():
    """Regenerating from the committed SMILES list reproduces the golden CSV."""
    committed = REPO_ROOT / "data" / "fixtures" / "descriptor_golden.csv"
    source = REPO_ROOT / "data" / "fixtures" / "fixture_molecules.csv"
    if not committed.exists():
        pytest.skip("golden fixtures not committed")
    header = committed.open().readline().strip()
    assert header == f"# generated-by: {refchem.TOOLKIT_NAME} {refchem.TOOLKIT_VERSION}", \
        "committed fixtures were generated by a different pinned backend"
    with tempfile.TemporaryDirectory() as tmp:
        out = Path(tmp) / "regenerated.csv"
        count = generate(str(source), str(out), prefer="refchem")
        assert count >= 200
        assert out.read_bytes() == committed.read_bytes()
    print("[ACCEPTANCE] oracle regeneration byte-identical: PASS")
