"""Checked-in JSON schemas for the CLI reports and the claim registry."""

import json
from importlib import resources


def load_schema(name: str) -> dict:
    """The schema ``<name>.schema.json`` shipped with the package."""
    text = resources.files(__name__).joinpath(f"{name}.schema.json").read_text(encoding="utf-8")
    return json.loads(text)
