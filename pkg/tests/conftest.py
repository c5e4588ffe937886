from pathlib import Path

import pytest

from mlguard.apispec import load_bundled_specs, merge_specs
from mlguard.checker import check_source

FIXTURES = Path(__file__).parent / "fixtures"
GOLDEN = Path(__file__).parent / "golden"
TITANIC = FIXTURES / "titanic.mlp"


@pytest.fixture(scope="session")
def specs():
    return load_bundled_specs()


@pytest.fixture(scope="session")
def spec(specs):
    return merge_specs(specs)


@pytest.fixture(scope="session")
def golden_source():
    return TITANIC.read_text(encoding="utf-8")


def edit(source: str, old: str, new: str) -> str:
    assert old in source, old
    return source.replace(old, new, 1)


def codes(source: str, spec, **kw) -> list[str]:
    return check_source(source, spec, "t.mlp", **kw).codes
