"""Client side of the sandbox wire protocol (ndjson over a child process)."""

from __future__ import annotations

import json
import logging
import subprocess

from ..chem.smiles import MoleculeGraph
from ..errors import SandboxError

log = logging.getLogger(__name__)

DEFAULT_COMMAND = ("molsandbox-shim",)


def graph_to_json(mol: MoleculeGraph) -> dict:
    return {
        "atoms": [
            {"symbol": a.symbol, "atomic_number": a.atomic_number,
             "formal_charge": a.formal_charge, "aromatic": a.aromatic,
             "implicit_h": a.implicit_h, "chirality": a.chirality,
             "isotope": a.isotope}
            for a in mol.atoms
        ],
        "bonds": [
            {"a": b.a, "b": b.b, "order": b.order, "aromatic": b.aromatic}
            for b in mol.bonds
        ],
        "rings": [list(r) for r in mol.rings],
        "n_fragments": mol.n_fragments,
        "smiles": mol.smiles,
    }


class SandboxRunner:
    """Spawns the shim and multiplexes one request at a time over stdio.

    A dead shim is restarted once per request; persistent failure raises
    SandboxError, which the concept engine converts to Missing cells.
    """

    def __init__(self, command=DEFAULT_COMMAND, timeout: float = 5.0):
        self.command = tuple(command)
        self.timeout = timeout
        self._process: subprocess.Popen | None = None

    # -- lifecycle ---------------------------------------------------------
    def start(self) -> dict:
        self._process = subprocess.Popen(
            self.command, stdin=subprocess.PIPE, stdout=subprocess.PIPE,
            text=True, bufsize=1)
        handshake_line = self._process.stdout.readline()
        if not handshake_line:
            raise SandboxError("shim produced no handshake")
        handshake = json.loads(handshake_line)
        log.debug("sandbox handshake: %s", handshake)
        return handshake

    def close(self) -> None:
        if self._process is not None:
            try:
                self._process.stdin.close()
                self._process.terminate()
                self._process.wait(timeout=2)
            except Exception:
                self._process.kill()
            self._process = None

    def __enter__(self):
        self.start()
        return self

    def __exit__(self, *exc_info):
        self.close()

    # -- requests ------------------------------------------------------------
    def _roundtrip(self, payload: str) -> dict:
        process = self._process
        if process is None or process.poll() is not None:
            self.start()
            process = self._process
        try:
            process.stdin.write(payload + "\n")
            process.stdin.flush()
            line = process.stdout.readline()
        except (BrokenPipeError, OSError) as exc:
            raise SandboxError(f"shim transport failure: {exc}") from exc
        if not line:
            raise SandboxError("shim died without responding")
        return json.loads(line)

    def execute(self, source: str, mol: MoleculeGraph):
        """Run one generated function; returns the scalar result.

        Raises SandboxError carrying the shim's error class on failure.
        """
        request = json.dumps(
            {"source": source, "molecule": graph_to_json(mol),
             "timeout": self.timeout},
            sort_keys=True)
        try:
            response = self._roundtrip(request)
        except SandboxError:
            # one restart attempt, then give up
            self.close()
            self.start()
            response = self._roundtrip(request)
        if response.get("status") == "ok":
            return response.get("value")
        raise SandboxError(
            f"{response.get('error_class', 'UnknownError')}: "
            f"{response.get('error_message', '')}")
