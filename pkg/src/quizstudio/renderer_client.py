"""Thin client for the headless chart-renderer service."""

from __future__ import annotations

import requests

from .errors import QuizStudioError


class RenderError(QuizStudioError):
    code = "render_error"


class RendererClient:
    def __init__(self, base_url: str, timeout_s: float = 30.0):
        self.base_url = base_url.rstrip("/")
        self.timeout_s = timeout_s

    def healthy(self) -> bool:
        try:
            resp = requests.get(f"{self.base_url}/healthz", timeout=self.timeout_s)
            return resp.status_code == 200
        except requests.RequestException:
            return False

    def render(
        self, chart_script: str, csv: str, width: int = 800, height: int = 600
    ) -> dict:
        try:
            resp = requests.post(
                f"{self.base_url}/render",
                json={
                    "chart_script": chart_script,
                    "csv": csv,
                    "viewport": {"width": width, "height": height},
                },
                timeout=self.timeout_s,
            )
        except requests.RequestException as exc:
            raise RenderError(str(exc)) from exc
        if resp.status_code != 200:
            raise RenderError(f"renderer returned {resp.status_code}: {resp.text[:200]}")
        return resp.json()

    def render_svg(self, chart_script: str, csv: str) -> str:
        return self.render(chart_script, csv)["svg"]
