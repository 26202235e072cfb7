"""Worked-example scripts shipped with the package, each with a golden JSON report."""

import json
from pathlib import Path

from ..config import Config, use_config
from ..dsl import parse
from ..errors import PreconditionError
from ..runner import run, to_document

DIRECTORY = Path(__file__).resolve().parent
SEED = 0


def names():
    return sorted(p.stem for p in DIRECTORY.glob("*.ams"))


def resolve(name):
    if name not in names():
        raise PreconditionError(f"no corpus entry named {name!r}")
    return name


def script_path(name):
    return DIRECTORY / f"{resolve(name)}.ams"


def golden_path(name):
    return DIRECTORY / f"{resolve(name)}.json"


def render(doc):
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def replay(name, seed=SEED):
    """The report document of one entry, computed with default budgets and a fixed seed."""
    text = script_path(name).read_text(encoding="utf-8")
    with use_config(Config(seed=seed)):
        reports, error = run(parse(text))
    return to_document(reports, error)


def check(name):
    path = golden_path(name)
    if not path.exists():
        return False
    return path.read_text(encoding="utf-8") == render(replay(name))


def update(name):
    golden_path(name).write_text(render(replay(name)), encoding="utf-8")
