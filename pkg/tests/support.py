"""Shared test helpers: cached systems/algebras and CLI/schema utilities."""

from __future__ import annotations

import io
import json
import sys
from contextlib import redirect_stderr, redirect_stdout
from functools import lru_cache
from pathlib import Path

import jsonschema
from referencing import Registry, Resource

from hx import CoxeterSystem, HeckeAlgebra, KLBasis, WeightFunction, build_system
from hx.cli import main as cli_main

SCHEMA_DIR = Path(__file__).resolve().parents[1] / "src" / "hx" / "schemas"


@lru_cache(maxsize=None)
def system(label: str) -> CoxeterSystem:
    return build_system(label)


@lru_cache(maxsize=None)
def algebra(label: str, weights: tuple[int, ...] | None = None) -> HeckeAlgebra:
    sys_ = system(label)
    w = WeightFunction(sys_, weights) if weights else None
    return HeckeAlgebra(sys_, w)


@lru_cache(maxsize=None)
def kl(label: str, weights: tuple[int, ...] | None = None) -> KLBasis:
    return KLBasis(algebra(label, weights))


def run_cli(*argv: str) -> tuple[int, str, str]:
    """Run the CLI in-process; returns (exit_code, stdout, stderr)."""
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = cli_main(list(argv))
    return code, out.getvalue(), err.getvalue()


def run_cli_json(*argv: str) -> dict:
    code, out, err = run_cli(*argv, "--json")
    assert code == 0, f"cli failed ({code}): {err}"
    return json.loads(out)


@lru_cache(maxsize=None)
def _registry() -> Registry:
    defs = json.loads((SCHEMA_DIR / "defs.json").read_text())
    return Registry().with_resource("hx/defs.json", Resource.from_contents(defs))


def validate_schema(doc: dict, schema_name: str) -> None:
    schema = json.loads((SCHEMA_DIR / schema_name).read_text())
    jsonschema.Draft202012Validator(schema, registry=_registry()).validate(doc)
