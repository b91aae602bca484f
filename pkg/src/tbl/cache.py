"""Content-addressed JSON cache with atomic writes."""
import hashlib
import json
import os
import tempfile
from typing import Any, Optional


class ResultCache:
    def __init__(self, root: Optional[str], version: str):
        self.root = root
        self.version = version

    def _material(self, word: str, command: str, options: dict) -> dict:
        return {"word": word, "command": command, "options": options, "version": self.version}

    def key(self, word: str, command: str, options: dict) -> str:
        blob = json.dumps(self._material(word, command, options), sort_keys=True)
        return hashlib.sha256(blob.encode()).hexdigest()

    def _path(self, key: str) -> str:
        return os.path.join(self.root, key[:2], key + ".json")

    def get(self, word: str, command: str, options: dict) -> Optional[Any]:
        if not self.root:
            return None
        path = self._path(self.key(word, command, options))
        try:
            with open(path) as fh:
                blob = json.load(fh)
        except (OSError, ValueError):
            return None
        if blob.get("material") != self._material(word, command, options):
            return None
        return blob.get("results")

    def put(self, word: str, command: str, options: dict, results: Any) -> None:
        if not self.root:
            return
        path = self._path(self.key(word, command, options))
        os.makedirs(os.path.dirname(path), exist_ok=True)
        blob = {"material": self._material(word, command, options), "results": results}
        fd, tmp = tempfile.mkstemp(dir=os.path.dirname(path), suffix=".tmp")
        try:
            with os.fdopen(fd, "w") as fh:
                json.dump(blob, fh, sort_keys=True)
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
