"""Pinned scenario files shipped with the package."""

from __future__ import annotations

from importlib.resources import files
from pathlib import Path


def shipped_scenarios() -> list[str]:
    """Names of the shipped scenario files (without extension)."""
    return sorted(p.name[:-5] for p in files(__name__).iterdir()
                  if p.name.endswith(".toml"))


def scenario_path(name: str) -> Path | None:
    """Filesystem path of a shipped scenario, or None if unknown."""
    filename = name if name.endswith(".toml") else name + ".toml"
    candidate = files(__name__) / filename
    if candidate.is_file():
        return Path(str(candidate))
    return None
