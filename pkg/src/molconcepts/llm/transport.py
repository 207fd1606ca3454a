"""Transports: replay from cache, record to cache, or live-only.

Providers are chat-completion clients selected by configuration; the
bundled one speaks the common ``/chat/completions`` HTTP shape with the
API key taken from an environment variable, never from config files.
"""

from __future__ import annotations

import logging
import os
import time

from ..errors import CacheMiss, TransportError
from .transcripts import Transcript, TranscriptCache, prompt_hash

log = logging.getLogger(__name__)

RETRY_ATTEMPTS = 3
RETRY_BASE_SECONDS = 1.0


class HttpChatProvider:
    """Minimal OpenAI-style chat-completion client."""

    def __init__(self, base_url: str = "https://api.openai.com/v1",
                 api_key_env: str = "OPENAI_API_KEY"):
        self.base_url = base_url.rstrip("/")
        self.api_key_env = api_key_env

    def complete(self, prompt: str, model_id: str, temperature: float) -> str:
        import requests

        api_key = os.environ.get(self.api_key_env)
        if not api_key:
            raise TransportError(
                f"environment variable {self.api_key_env} is not set")
        try:
            response = requests.post(
                f"{self.base_url}/chat/completions",
                headers={"Authorization": f"Bearer {api_key}"},
                json={"model": model_id, "temperature": temperature,
                      "messages": [{"role": "user", "content": prompt}]},
                timeout=120,
            )
            response.raise_for_status()
            return response.json()["choices"][0]["message"]["content"]
        except Exception as exc:
            raise TransportError(str(exc)) from exc


class Transport:
    """Resolves prompts to responses according to the configured mode."""

    def __init__(self, mode: str, model_id: str, temperature: float = 0.0,
                 cache: TranscriptCache | None = None, provider=None,
                 sleeper=time.sleep):
        if mode not in ("live", "replay", "record"):
            raise ValueError(f"unknown transport mode {mode!r}")
        if mode == "replay" and cache is None:
            raise ValueError("replay transport needs a transcript cache")
        if mode in ("live", "record") and provider is None:
            provider = HttpChatProvider()
        self.mode = mode
        self.model_id = model_id
        self.temperature = temperature
        self.cache = cache
        self.provider = provider
        self._sleep = sleeper

    def complete(self, template_id: str, prompt: str) -> str:
        hash_ = prompt_hash(template_id, prompt, self.model_id, self.temperature)
        if self.cache is not None:
            cached = self.cache.get(hash_)
            if cached is not None:
                return cached.response
        if self.mode == "replay":
            raise CacheMiss(
                f"no transcript for template {template_id!r} (hash {hash_[:12]}...)")
        response = self._call_live(prompt)
        if self.mode == "record" and self.cache is not None:
            self.cache.append(Transcript.create(hash_, prompt, response,
                                                self.model_id))
        return response

    def _call_live(self, prompt: str) -> str:
        last_error = None
        for attempt in range(RETRY_ATTEMPTS):
            try:
                return self.provider.complete(prompt, self.model_id,
                                              self.temperature)
            except TransportError as exc:
                last_error = exc
                if attempt + 1 < RETRY_ATTEMPTS:
                    delay = RETRY_BASE_SECONDS * (2 ** attempt)
                    log.warning("transport error (%s), retrying in %.1fs",
                                exc, delay)
                    self._sleep(delay)
        raise TransportError(
            f"live call failed after {RETRY_ATTEMPTS} attempts: {last_error}")
