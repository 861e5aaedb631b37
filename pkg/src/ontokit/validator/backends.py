"""Session backends: scripted replies for tests and fixtures, and a generic
HTTP adapter described by a manifest file.

The HTTP adapter keeps the protocol vendor-neutral: the manifest names the
endpoint, the auth header, and dotted paths into the request/response JSON;
the credential itself comes only from an environment variable.
"""

from __future__ import annotations

import json
import os
from pathlib import Path
from typing import Callable, Optional, Sequence

import requests

from ..errors import AdapterManifestError, BackendError


class ScriptedBackend:
    """Replays a fixed list of responses; raises when the script runs dry."""

    def __init__(self, responses: Sequence[str], name: str = "scripted"):
        self._responses = list(responses)
        self._cursor = 0
        self.name = name
        self.prompts: list[str] = []

    def send(self, prompt: str) -> str:
        self.prompts.append(prompt)
        if self._cursor >= len(self._responses):
            raise BackendError(f"scripted backend {self.name} ran out of responses")
        reply = self._responses[self._cursor]
        self._cursor += 1
        return reply


class HTTPBackend:
    """Request/response text exchange against an HTTP JSON endpoint.

    Manifest fields: endpoint, auth_header (name only), credential_env,
    request_field (dotted path the prompt is written to), response_field
    (dotted path the reply text is read from), plus optional static
    request_body and timeout_s.
    """

    def __init__(self, manifest: dict,
                 transport: Optional[Callable] = None):
        for field in ("endpoint", "request_field", "response_field"):
            if field not in manifest:
                raise AdapterManifestError(f"adapter manifest missing {field!r}")
        self.manifest = manifest
        self.name = manifest.get("name", "http")
        self._transport = transport or self._post
        credential_env = manifest.get("credential_env")
        self._credential = os.environ.get(credential_env) if credential_env else None
        if credential_env and self._credential is None:
            raise AdapterManifestError(
                f"credential environment variable {credential_env} is not set")

    def send(self, prompt: str) -> str:
        body = json.loads(json.dumps(self.manifest.get("request_body", {})))
        _set_path(body, self.manifest["request_field"], prompt)
        headers = {"Content-Type": "application/json"}
        if self._credential:
            headers[self.manifest.get("auth_header", "Authorization")] = self._credential
        try:
            payload = self._transport(self.manifest["endpoint"], body, headers,
                                      float(self.manifest.get("timeout_s", 60)))
        except BackendError:
            raise
        except Exception as exc:
            raise BackendError(f"backend request failed: {exc}") from exc
        reply = _get_path(payload, self.manifest["response_field"])
        if not isinstance(reply, str):
            raise BackendError(
                f"response field {self.manifest['response_field']} is not text")
        return reply

    @staticmethod
    def _post(endpoint, body, headers, timeout):
        response = requests.post(endpoint, json=body, headers=headers, timeout=timeout)
        if response.status_code >= 400:
            raise BackendError(f"backend returned HTTP {response.status_code}")
        return response.json()


def load_adapter_manifest(path) -> dict:
    with open(Path(path), "r", encoding="utf-8") as handle:
        manifest = json.load(handle)
    if not isinstance(manifest, dict):
        raise AdapterManifestError("adapter manifest must be a JSON object")
    return manifest


def backend_from_manifest(manifest: dict):
    kind = manifest.get("backend", "http")
    if kind == "http":
        return HTTPBackend(manifest)
    if kind == "scripted":
        script_path = manifest.get("script")
        if not script_path:
            raise AdapterManifestError("scripted adapter manifest needs a 'script' path")
        with open(script_path, "r", encoding="utf-8") as handle:
            responses = json.load(handle)
        return ScriptedBackend(responses, name=manifest.get("name", "scripted"))
    raise AdapterManifestError(f"unknown backend kind: {kind}")


def _set_path(doc: dict, dotted: str, value):
    keys = dotted.split(".")
    node = doc
    for key in keys[:-1]:
        node = node.setdefault(key, {})
        if not isinstance(node, dict):
            raise AdapterManifestError(f"request path {dotted} collides with a non-object")
    node[keys[-1]] = value


def _get_path(doc, dotted: str):
    node = doc
    for key in dotted.split("."):
        if isinstance(node, list):
            try:
                node = node[int(key)]
                continue
            except (ValueError, IndexError) as exc:
                raise BackendError(f"response path {dotted} not found") from exc
        if not isinstance(node, dict) or key not in node:
            raise BackendError(f"response path {dotted} not found")
        node = node[key]
    return node
