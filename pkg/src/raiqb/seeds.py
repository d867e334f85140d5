"""Access to the packaged seed data (bank, requirement sets, extensions).

The JSON files under ``raiqb/data`` are generated by
``scripts/build_seed_data.py`` and committed; they are ordinary documents in
the interchange formats, not a special path into the engine.
"""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from .compliance import RequirementSet, parse_requirement_set
from .ingest import SourceExtension, parse_bank, parse_extension
from .model import QuestionBank

REQUIREMENT_SET_FILES = {
    "eu-high-risk": "requirements_eu_high_risk.json",
    "agent-rai-plugins": "requirements_agent_plugins.json",
    "foundation-model": "requirements_foundation_model.json",
}

EXTENSION_FILES = {
    "EU-Act": "extension_eu_act.json",
    "ISO": "extension_iso.json",
}


def data_dir() -> Path:
    return Path(str(resources.files("raiqb") / "data"))


def seed_bank_path() -> Path:
    return data_dir() / "bank.json"


def load_seed_bank() -> QuestionBank:
    return parse_bank(seed_bank_path().read_text(encoding="utf-8"))


def load_requirement_set(set_id: str) -> RequirementSet:
    filename = REQUIREMENT_SET_FILES[set_id]
    return parse_requirement_set((data_dir() / filename).read_text(encoding="utf-8"))


def load_all_requirement_sets() -> dict[str, RequirementSet]:
    return {set_id: load_requirement_set(set_id) for set_id in REQUIREMENT_SET_FILES}


def load_extension(code: str) -> SourceExtension:
    filename = EXTENSION_FILES[code]
    return parse_extension((data_dir() / filename).read_text(encoding="utf-8"))
