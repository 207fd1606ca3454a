"""Record/replay transcript cache (append-only JSON lines)."""

from __future__ import annotations

import hashlib
import json
import threading
from dataclasses import asdict, dataclass
from datetime import datetime, timezone
from pathlib import Path


def prompt_hash(template_id: str, prompt: str, model_id: str,
                temperature: float) -> str:
    """Stable content hash; identical inputs always collide."""
    payload = json.dumps(
        {"template": template_id, "prompt": prompt, "model": model_id,
         "temperature": temperature},
        sort_keys=True, ensure_ascii=False)
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


@dataclass(frozen=True)
class Transcript:
    prompt_hash: str
    request: str
    response: str
    model_id: str
    created_at: str

    @classmethod
    def create(cls, hash_, request, response, model_id):
        stamp = datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")
        return cls(hash_, request, response, model_id, stamp)


class TranscriptCache:
    """One Transcript per line; lookups never mutate, writes are serialized."""

    def __init__(self, path):
        self.path = Path(path)
        self._lock = threading.Lock()
        self._entries: dict[str, Transcript] = {}
        if self.path.exists():
            for line in self.path.read_text(encoding="utf-8").splitlines():
                line = line.strip()
                if not line:
                    continue
                data = json.loads(line)
                entry = Transcript(**data)
                self._entries.setdefault(entry.prompt_hash, entry)

    def __len__(self):
        return len(self._entries)

    def get(self, hash_: str) -> Transcript | None:
        return self._entries.get(hash_)

    def append(self, transcript: Transcript) -> None:
        with self._lock:
            if transcript.prompt_hash in self._entries:
                return
            self._entries[transcript.prompt_hash] = transcript
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with self.path.open("a", encoding="utf-8") as handle:
                handle.write(json.dumps(asdict(transcript), sort_keys=True,
                                        ensure_ascii=False) + "\n")
