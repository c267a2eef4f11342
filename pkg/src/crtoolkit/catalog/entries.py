import logging
import os
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Any, Optional

from yaml import safe_load

from crtoolkit.catalog.consts import (
    FIXTURE_EXTENSIONS,
    FIXTURES,
    METADATA,
    SCHEMA_VERSION,
    SOURCES,
    VOCABULARY,
)
from crtoolkit.catalog.families import FAMILIES, Built, build
from crtoolkit.cralgebra.cralgebras import CRAlgebra
from crtoolkit.endo.endomorphisms import Endo
from crtoolkit.errors import InvalidInput
from crtoolkit.tube.fields import TubeDatum


logger = logging.getLogger("crtoolkit.catalog")


@dataclass
class Expectation:
    invariant: str
    value: Any
    source: str

    def __post_init__(self):
        if self.invariant not in VOCABULARY:
            raise InvalidInput(f"Unknown invariant :: {self.invariant}")
        if not isinstance(self.source, str) or not self.source.startswith(SOURCES):
            raise InvalidInput(
                f"Provenance must start with PAPER or DERIVED :: {self.invariant}"
            )

    @property
    def metadata(self) -> bool:
        return self.invariant in METADATA

    @staticmethod
    def fromDict(invariant: str, data: Any, pointer: str = "") -> "Expectation":
        if not isinstance(data, dict) or "value" not in data:
            raise InvalidInput("Expected {value, source}", pointer)
        return Expectation(invariant, data["value"], data.get("source"))

    def toDict(self) -> dict:
        return {"value": self.value, "source": self.source}


@dataclass
class CatalogEntry:
    """Named example: a family member plus its expected invariants"""

    name: str
    family: str
    params: dict = field(default_factory=dict)
    overrides: dict = field(default_factory=dict)
    description: Optional[str] = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise InvalidInput(f"Unknown catalog family :: {self.family}")

    def __str__(self) -> str:
        return f"CatalogEntry('{self.name}', '{self.family}')"

    def __repr__(self) -> str:
        return self.__str__()

    @cached_property
    def built(self) -> Built:
        return build(self.family, self.params)

    @property
    def payload(self):
        return self.built.payload

    @property
    def endo(self) -> Optional[Endo]:
        return self.built.endo

    @property
    def extras(self) -> dict:
        return self.built.extras

    @property
    def kind(self) -> str:
        payload = self.payload
        if isinstance(payload, TubeDatum):
            return "tube"
        if isinstance(payload, CRAlgebra):
            return "cralgebra"
        return "endo"

    @property
    def expected(self) -> dict:
        """Family defaults overridden by the fixture"""
        merged = {
            name: Expectation.fromDict(name, data, f"/expected/{name}")
            for name, data in self.built.expected.items()
        }
        merged.update(self.overrides)
        return dict(sorted(merged.items()))

    @staticmethod
    def fromDict(data: Any, pointer: str = "") -> "CatalogEntry":
        if not isinstance(data, dict):
            raise InvalidInput("Expected a catalog entry object", pointer)
        if data.get("schema") != SCHEMA_VERSION:
            raise InvalidInput(
                f"Unsupported fixture schema :: {data.get('schema')}", f"{pointer}/schema"
            )
        for key in ("name", "family"):
            if not isinstance(data.get(key), str):
                raise InvalidInput(f"Expected a string `{key}`", f"{pointer}/{key}")
        params = data.get("params") or {}
        if not isinstance(params, dict):
            raise InvalidInput("Expected a `params` object", f"{pointer}/params")
        raw = data.get("expected") or {}
        if not isinstance(raw, dict):
            raise InvalidInput("Expected an `expected` object", f"{pointer}/expected")
        overrides = {
            name: Expectation.fromDict(name, value, f"{pointer}/expected/{name}")
            for name, value in raw.items()
        }
        return CatalogEntry(
            name=data["name"],
            family=data["family"],
            params=params,
            overrides=overrides,
            description=data.get("description"),
        )

    @staticmethod
    def load(path: str) -> "CatalogEntry":
        with open(path, "r", encoding="utf-8") as handle:
            data = safe_load(handle)
        return CatalogEntry.fromDict(data)

    def toDict(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "name": self.name,
            "family": self.family,
            "params": self.params,
            "kind": self.kind,
            "payload": self.payload.toDict(),
            "expected": {name: e.toDict() for name, e in self.expected.items()},
        }


class Catalog(list[CatalogEntry]):
    @staticmethod
    def loadFixtures(path: str = FIXTURES) -> "Catalog":
        if not os.path.exists(path):
            raise InvalidInput(f"Fixture folder does not exist :: {path}")

        catalog = Catalog()
        for file in sorted(os.listdir(path)):
            if file.endswith(FIXTURE_EXTENSIONS):
                catalog.append(CatalogEntry.load(os.path.join(path, file)))
        catalog.sort(key=lambda e: e.name)
        logger.debug(f"Loaded {len(catalog)} catalog fixtures")
        return catalog

    def names(self) -> list:
        return [e.name for e in self]

    def find(self, name: str) -> Optional[CatalogEntry]:
        for e in self:
            if e.name == name:
                return e
        return None


@lru_cache(maxsize=None)
def catalog() -> Catalog:
    return Catalog.loadFixtures()


def _member_name(family: str, params: dict) -> str:
    values = []
    for key in params:
        value = params[key]
        if isinstance(value, dict):
            value = f"{value.get('re', 0)}+{value.get('im', 0)}i"
        values.append(str(value))
    return "-".join([family] + values)


def entry(name: str, params: Optional[dict] = None) -> CatalogEntry:
    """Fixture by name, or a family member when parameters are given"""
    if params is None:
        found = catalog().find(name)
        if found is not None:
            return found
        if name not in FAMILIES:
            raise InvalidInput(f"Unknown catalog entry :: {name}")
        params = {}
    elif name not in FAMILIES:
        raise InvalidInput(f"Unknown catalog family :: {name}")

    member = CatalogEntry(_member_name(name, params), name, dict(params))
    # fail early on out-of-family parameters
    member.built
    return member
