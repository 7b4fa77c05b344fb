"""Content-addressed on-disk cache for memoized relation tables.

Entries are keyed by (namespace, parameters, format version); the payload
is canonical JSON guarded by a checksum.  A corrupt or version-mismatched
entry is discarded and recomputed; I/O failures degrade to in-memory
computation.  Parallel runs sharing a cache directory converge on
identical tables because the fill order of every table is deterministic.
"""

import hashlib
import json
import os

from .report import canonical_json

FORMAT_VERSION = "1"


class CacheStore:
    def __init__(self, root, version=FORMAT_VERSION):
        self.root = root
        self.version = version

    def _path(self, namespace, params):
        key = canonical_json({"namespace": namespace, "params": params, "version": self.version})
        digest = hashlib.sha256(key.encode()).hexdigest()[:32]
        return os.path.join(self.root, f"{namespace}-{digest}.json")

    def store(self, namespace, params, payload):
        """Returns (ok, note)."""
        doc = {
            "format_version": self.version,
            "namespace": namespace,
            "params": params,
            "payload": payload,
            "checksum": hashlib.sha256(canonical_json(payload).encode()).hexdigest(),
        }
        try:
            os.makedirs(self.root, exist_ok=True)
            path = self._path(namespace, params)
            tmp = path + ".tmp"
            with open(tmp, "w") as fh:
                json.dump(doc, fh, sort_keys=True)
            os.replace(tmp, path)
            return True, None
        except OSError as exc:
            return False, f"cache write failed, continuing in memory: {exc}"

    def load(self, namespace, params):
        """Returns (payload_or_None, note_or_None)."""
        path = self._path(namespace, params)
        if not os.path.exists(path):
            return None, None
        try:
            with open(path) as fh:
                doc = json.load(fh)
        except (OSError, ValueError) as exc:
            self._discard(path)
            return None, f"cache entry unreadable, discarded and recomputed: {exc}"
        if doc.get("format_version") != self.version:
            self._discard(path)
            return None, "cache entry from another format version, discarded"
        payload = doc.get("payload")
        checksum = hashlib.sha256(canonical_json(payload).encode()).hexdigest()
        if checksum != doc.get("checksum"):
            self._discard(path)
            return None, "cache entry failed its checksum, discarded and recomputed"
        return payload, None

    def _discard(self, path):
        try:
            os.remove(path)
        except OSError:
            pass
