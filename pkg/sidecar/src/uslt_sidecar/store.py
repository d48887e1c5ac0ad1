"""Record/replay fixture store.

Files use the layout the toolkit's directory provider consumes:
``<dir>/fill/<sha1>.json`` and ``<dir>/loss/<sha1>.json``, each holding
``{"request": ..., "response": ...}`` with the wire schemas, named by the
SHA-1 of the canonical request JSON.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path


def _key(payload: dict) -> str:
    blob = json.dumps(payload, sort_keys=True, ensure_ascii=False).encode("utf-8")
    return hashlib.sha1(blob).hexdigest()


class FixtureStore:
    def __init__(self, directory: str | Path, writable: bool):
        self.directory = Path(directory)
        self.writable = writable
        if writable:
            (self.directory / "fill").mkdir(parents=True, exist_ok=True)
            (self.directory / "loss").mkdir(parents=True, exist_ok=True)
        self._fill: dict[tuple[str, str], dict] = {}
        self._loss: dict[tuple[str, int], dict] = {}
        for path in sorted(self.directory.glob("fill/*.json")):
            entry = json.loads(path.read_text(encoding="utf-8"))
            req = entry["request"]
            self._fill[(req["original"], req["masked"])] = entry
        for path in sorted(self.directory.glob("loss/*.json")):
            entry = json.loads(path.read_text(encoding="utf-8"))
            req = entry["request"]
            self._loss[(req["sentence"], int(req["position"]))] = entry

    def record_fill(self, request: dict, response: dict) -> None:
        entry = {"request": request, "response": response}
        path = self.directory / "fill" / f"{_key(request)}.json"
        path.write_text(json.dumps(entry, ensure_ascii=False, indent=1), encoding="utf-8")
        self._fill[(request["original"], request["masked"])] = entry

    def record_loss(self, request: dict, response: dict) -> None:
        entry = {"request": request, "response": response}
        path = self.directory / "loss" / f"{_key(request)}.json"
        path.write_text(json.dumps(entry, ensure_ascii=False, indent=1), encoding="utf-8")
        self._loss[(request["sentence"], int(request["position"]))] = entry

    def lookup_fill(self, original: str, masked: str, top_n: int) -> dict | None:
        entry = self._fill.get((original, masked))
        if entry is None:
            return None
        recorded_n = int(entry["request"]["top_n"])
        if top_n >= recorded_n:
            return entry["response"]
        return {"slots": [slot[:top_n] for slot in entry["response"]["slots"]]}

    def lookup_loss(self, sentence: str, position: int) -> dict | None:
        entry = self._loss.get((sentence, position))
        return None if entry is None else entry["response"]
