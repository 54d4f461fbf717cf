"""Registry of structured-output schemas the gateway validates against."""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

import jsonschema

from ..errors import InvalidRequest


def default_schema_dir() -> Path:
    return Path(resources.files("quizstudio") / "schemas")  # type: ignore[arg-type]


class SchemaRegistry:
    """Loads JSON-schema files from a directory, keyed by filename stem."""

    def __init__(self, directory: Path | None = None):
        self._schemas: dict[str, dict] = {}
        self.load_dir(directory or default_schema_dir())

    def load_dir(self, directory: Path) -> None:
        for path in sorted(Path(directory).glob("*.json")):
            self._schemas[path.stem] = json.loads(path.read_text())

    def register(self, schema_id: str, schema: dict) -> None:
        self._schemas[schema_id] = schema

    def ids(self) -> list[str]:
        return sorted(self._schemas)

    def get(self, schema_id: str) -> dict:
        try:
            return self._schemas[schema_id]
        except KeyError:
            raise InvalidRequest(f"unregistered schema: {schema_id}") from None

    def validate(self, schema_id: str, payload) -> None:
        """Raises jsonschema.ValidationError when the payload does not conform."""
        jsonschema.validate(payload, self.get(schema_id))
