"""Directory-tree JSON document store with atomic write-rename.

Documents are serialized canonically (sorted keys, fixed indentation) so two
identical sessions produce byte-identical trees.
"""

from __future__ import annotations

import json
import os
import tempfile
import threading
from collections import defaultdict
from pathlib import Path

from .errors import UnknownProject, UnknownRun, UnknownVersion


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


class DocumentStore:
    def __init__(self, root: str | Path):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self._locks: dict[str, threading.RLock] = defaultdict(threading.RLock)
        self._locks_guard = threading.Lock()

    def lock(self, project_id: str) -> threading.RLock:
        with self._locks_guard:
            return self._locks[project_id]

    # -- low-level ----------------------------------------------------------

    def write_text(self, relpath: str, text: str) -> None:
        path = self.root / relpath
        path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-")
        try:
            with os.fdopen(fd, "w") as fh:
                fh.write(text)
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise

    def write_json(self, relpath: str, obj) -> None:
        self.write_text(relpath, canonical_json(obj))

    def read_text(self, relpath: str) -> str:
        return (self.root / relpath).read_text()

    def read_json(self, relpath: str):
        return json.loads(self.read_text(relpath))

    def exists(self, relpath: str) -> bool:
        return (self.root / relpath).exists()

    # -- project layout -----------------------------------------------------

    def project_path(self, project_id: str) -> str:
        return f"projects/{project_id}/project.json"

    def create_project(self, project_id: str, title: str, model_id: str) -> dict:
        doc = {
            "id": project_id,
            "title": title,
            "model_id": model_id,
            "feature_history": [],
            "cohort": [],
            "version_ids": [],
            "run_ids": [],
        }
        with self.lock(project_id):
            self.write_json(self.project_path(project_id), doc)
        return doc

    def load_project(self, project_id: str) -> dict:
        path = self.project_path(project_id)
        if not self.exists(path):
            raise UnknownProject(f"no such project: {project_id}")
        return self.read_json(path)

    def save_project(self, doc: dict) -> None:
        self.write_json(self.project_path(doc["id"]), doc)

    def list_projects(self) -> list[str]:
        pdir = self.root / "projects"
        if not pdir.exists():
            return []
        return sorted(p.name for p in pdir.iterdir() if (p / "project.json").exists())

    # -- versions -----------------------------------------------------------

    def version_dir(self, project_id: str, version_id: str) -> str:
        return f"projects/{project_id}/versions/{version_id}"

    def save_version(self, project_id: str, version: dict) -> None:
        vdir = self.version_dir(project_id, version["id"])
        self.write_json(f"{vdir}/version.json", version)
        self.write_text(f"{vdir}/chart.js", version["chart_script"])
        self.write_text(f"{vdir}/data.csv", version["chart_csv"])

    def save_chart_svg(self, project_id: str, version_id: str, svg: str) -> None:
        self.write_text(f"{self.version_dir(project_id, version_id)}/chart.svg", svg)

    def load_version(self, project_id: str, version_id: str) -> dict:
        path = f"{self.version_dir(project_id, version_id)}/version.json"
        if not self.exists(path):
            raise UnknownVersion(f"no such version: {version_id}")
        return self.read_json(path)

    # -- runs ---------------------------------------------------------------

    def save_run(self, project_id: str, run: dict) -> None:
        self.write_json(f"projects/{project_id}/runs/{run['id']}/run.json", run)

    def load_run(self, project_id: str, run_id: str) -> dict:
        path = f"projects/{project_id}/runs/{run_id}/run.json"
        if not self.exists(path):
            raise UnknownRun(f"no such run: {run_id}")
        return self.read_json(path)

    # -- reliability log ----------------------------------------------------

    def reliability_path(self, project_id: str) -> str:
        return f"projects/{project_id}/reliability.json"

    def append_attempt(self, project_id: str, attempt: dict) -> None:
        path = self.reliability_path(project_id)
        attempts = self.read_json(path) if self.exists(path) else []
        attempts.append(attempt)
        self.write_json(path, attempts)

    def load_attempts(self, project_id: str) -> list[dict]:
        path = self.reliability_path(project_id)
        return self.read_json(path) if self.exists(path) else []
