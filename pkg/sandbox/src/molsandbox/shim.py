"""Sandbox shim: executes generated labeling functions over a line protocol.

Protocol (newline-delimited JSON over stdin/stdout, UTF-8):

  handshake (shim -> caller, first line):
      {"shim": "molsandbox", "version": "0.1.0", "protocol": 1}
  request (caller -> shim, one per line):
      {"source": "...python...", "molecule": {...}, "timeout": seconds}
  response (shim -> caller, one per request):
      {"status": "ok", "value": <number|string|null>}
      {"status": "error", "error_class": "...", "error_message": "..."}

The molecule payload mirrors the caller's graph serialization: a list of
atom records, a bond list, rings, and the raw SMILES.  The generated
function sees only documented arguments (atoms, adjacency, node_features,
edge_features, smiles) and arithmetic built-ins.  One request is in
flight at a time; the shim is restarted by the caller if it dies.
"""

from __future__ import annotations

import json
import math
import signal
import sys

PROTOCOL_VERSION = 1
SHIM_VERSION = "0.1.0"

SAFE_BUILTINS = {
    "abs": abs, "all": all, "any": any, "bool": bool, "dict": dict,
    "enumerate": enumerate, "filter": filter, "float": float, "int": int,
    "len": len, "list": list, "map": map, "max": max, "min": min,
    "range": range, "round": round, "set": set, "sorted": sorted,
    "str": str, "sum": sum, "tuple": tuple, "zip": zip, "reversed": reversed,
    "ValueError": ValueError, "ZeroDivisionError": ZeroDivisionError,
    "IndexError": IndexError, "KeyError": KeyError, "TypeError": TypeError,
}


class _Timeout(Exception):
    pass


def _molecule_arguments(molecule: dict) -> dict:
    """Build the documented argument set from the serialized graph."""
    atoms = [a["symbol"] for a in molecule.get("atoms", [])]
    n = len(atoms)
    adjacency = [[0] * n for _ in range(n)]
    edge_features = []
    for bond in molecule.get("bonds", []):
        a, b, order = bond["a"], bond["b"], bond.get("order", 1)
        aromatic = bool(bond.get("aromatic", False))
        adjacency[a][b] = order
        adjacency[b][a] = order
        edge_features.append(
            {"a": a, "b": b, "order": order, "aromatic": aromatic})
    node_features = {
        "symbol": atoms,
        "atomic_number": [a.get("atomic_number", 0) for a in molecule.get("atoms", [])],
        "formal_charge": [a.get("formal_charge", 0) for a in molecule.get("atoms", [])],
        "aromatic": [bool(a.get("aromatic", False)) for a in molecule.get("atoms", [])],
        "implicit_h": [a.get("implicit_h", 0) for a in molecule.get("atoms", [])],
        "in_ring": [any(i in ring for ring in molecule.get("rings", []))
                    for i in range(n)],
    }
    return {
        "atoms": atoms,
        "adjacency": adjacency,
        "node_features": node_features,
        "edge_features": edge_features,
        "smiles": molecule.get("smiles", ""),
    }


def execute_request(request: dict) -> dict:
    source = request.get("source", "")
    if not source.strip():
        return {"status": "error", "error_class": "CompileError",
                "error_message": "empty function source"}
    molecule = request.get("molecule", {})
    timeout = float(request.get("timeout", 5.0))

    namespace = {"__builtins__": SAFE_BUILTINS, "math": math}
    try:
        code = compile(source, "<generated>", "exec")
        exec(code, namespace)  # noqa: S102 - deliberate, documented trust model
    except SyntaxError as exc:
        return {"status": "error", "error_class": "CompileError",
                "error_message": str(exc)}
    except Exception as exc:
        return {"status": "error", "error_class": "CompileError",
                "error_message": f"{type(exc).__name__}: {exc}"}

    functions = [v for v in namespace.values()
                 if v.__class__.__name__ == "function"]
    if not functions:
        return {"status": "error", "error_class": "CompileError",
                "error_message": "source defines no function"}
    func = functions[-1]

    available = _molecule_arguments(molecule)
    wanted = func.__code__.co_varnames[:func.__code__.co_argcount]
    unknown = [name for name in wanted if name not in available]
    if unknown:
        return {"status": "error", "error_class": "CompileError",
                "error_message": f"unknown argument(s): {', '.join(unknown)}"}
    kwargs = {name: available[name] for name in wanted}

    def _alarm(signum, frame):
        raise _Timeout()

    previous = signal.signal(signal.SIGALRM, _alarm)
    signal.setitimer(signal.ITIMER_REAL, timeout)
    try:
        value = func(**kwargs)
    except _Timeout:
        return {"status": "error", "error_class": "Timeout",
                "error_message": f"exceeded {timeout} s"}
    except Exception as exc:
        return {"status": "error", "error_class": "RuntimeError",
                "error_message": f"{type(exc).__name__}: {exc}"}
    finally:
        signal.setitimer(signal.ITIMER_REAL, 0)
        signal.signal(signal.SIGALRM, previous)

    if isinstance(value, bool):
        value = int(value)
    if isinstance(value, (int, float)):
        if isinstance(value, float) and not math.isfinite(value):
            return {"status": "error", "error_class": "NonScalarResult",
                    "error_message": "non-finite result"}
        return {"status": "ok", "value": value}
    if isinstance(value, str):
        return {"status": "ok", "value": value}
    return {"status": "error", "error_class": "NonScalarResult",
            "error_message": f"result of type {type(value).__name__}"}


def serve(stdin=None, stdout=None) -> None:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    handshake = {"shim": "molsandbox", "version": SHIM_VERSION,
                 "protocol": PROTOCOL_VERSION}
    stdout.write(json.dumps(handshake, sort_keys=True) + "\n")
    stdout.flush()
    for line in stdin:
        line = line.strip()
        if not line:
            continue
        try:
            request = json.loads(line)
        except json.JSONDecodeError as exc:
            response = {"status": "error", "error_class": "ProtocolError",
                        "error_message": str(exc)}
        else:
            response = execute_request(request)
        stdout.write(json.dumps(response, sort_keys=True) + "\n")
        stdout.flush()


def main() -> int:
    serve()
    return 0


if __name__ == "__main__":
    sys.exit(main())
