import json
import subprocess
import sys

import pytest

from molsandbox import refchem
from molsandbox.shim import execute_request


def request_for(smiles, source, timeout=5.0):
    return {"source": source,
            "molecule": refchem.wire_graph(refchem.molecule(smiles)),
            "timeout": timeout}


def test_ok_result():
    response = execute_request(request_for(
        "CCO", "def f(atoms):\n    return len(atoms)\n"))
    assert response == {"status": "ok", "value": 3}


def test_kwargs_are_filtered_by_signature():
    response = execute_request(request_for(
        "CCO", "def f(atoms, adjacency):\n"
               "    return len(atoms) + len(adjacency)\n"))
    assert response["value"] == 6


def test_unknown_argument_is_compile_error():
    response = execute_request(request_for(
        "C", "def f(rdkit_mol):\n    return 1\n"))
    assert response["status"] == "error"
    assert response["error_class"] == "CompileError"


def test_syntax_error():
    response = execute_request(request_for("C", "def f(atoms:\n    pass\n"))
    assert response["error_class"] == "CompileError"


def test_runtime_error():
    response = execute_request(request_for(
        "C", "def f(atoms):\n    return atoms[99]\n"))
    assert response["error_class"] == "RuntimeError"


def test_non_scalar_result():
    response = execute_request(request_for(
        "C", "def f(atoms):\n    return [1, 2]\n"))
    assert response["error_class"] == "NonScalarResult"


def test_no_function_defined():
    response = execute_request({"source": "x = 1\n", "molecule": {}, "timeout": 1})
    assert response["error_class"] == "CompileError"


def test_restricted_namespace_blocks_imports():
    response = execute_request(request_for(
        "C", "def f(atoms):\n    import os\n    return 1\n"))
    assert response["status"] == "error"


def test_determinism():
    request = request_for("c1ccccc1", "def f(adjacency):\n"
                                      "    return sum(sum(row) for row in adjacency)\n")
    first = execute_request(request)
    second = execute_request(request)
    assert first == second


def test_subprocess_protocol_round_trip():
    process = subprocess.Popen(
        [sys.executable, "-m", "molsandbox.shim"],
        stdin=subprocess.PIPE, stdout=subprocess.PIPE, text=True, bufsize=1)
    try:
        handshake = json.loads(process.stdout.readline())
        assert handshake["shim"] == "molsandbox"
        assert handshake["protocol"] == 1
        request = request_for("CC", "def f(atoms):\n    return len(atoms)\n")
        process.stdin.write(json.dumps(request) + "\n")
        process.stdin.flush()
        response = json.loads(process.stdout.readline())
        assert response == {"status": "ok", "value": 2}
        # malformed line still gets a response
        process.stdin.write("this is not json\n")
        process.stdin.flush()
        response = json.loads(process.stdout.readline())
        assert response["error_class"] == "ProtocolError"
    finally:
        process.stdin.close()
        process.terminate()
        process.wait(timeout=5)
