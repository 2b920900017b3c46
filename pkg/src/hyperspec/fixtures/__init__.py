"""Bundled example hypergraphs and the reference values quoted for them."""

import json
from importlib import resources

from ..core import Hypergraph, parse_hypergraph


def names() -> list[str]:
    return sorted(p.name for p in resources.files(__name__).iterdir() if p.name.endswith(".hg"))


def text(name: str) -> str:
    return resources.files(__name__).joinpath(name).read_text(encoding="utf-8")


def load(name: str, *, multi: bool = False) -> Hypergraph:
    if not name.endswith(".hg"):
        name += ".hg"
    return parse_hypergraph(text(name), multi=multi)


def manifest() -> dict:
    return json.loads(text("manifest.json"))
