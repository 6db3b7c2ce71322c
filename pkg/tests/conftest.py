from __future__ import annotations

import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from quivkit.algebra import build_algebra
from quivkit.parser import parse_file

ALGEBRA_DIR = os.path.join(os.path.dirname(__file__), "..", "algebras")

_cache = {}


def algebra_path(name: str) -> str:
    return os.path.join(ALGEBRA_DIR, f"{name}.qv")


def load(name: str):
    if name not in _cache:
        _cache[name] = build_algebra(parse_file(algebra_path(name)))
    return _cache[name]


@pytest.fixture(scope="session")
def lambda0():
    return load("lambda0")


@pytest.fixture(scope="session")
def lambda1():
    return load("lambda1")


@pytest.fixture(scope="session")
def lambda2():
    return load("lambda2")


@pytest.fixture(scope="session")
def lambda3():
    return load("lambda3")


@pytest.fixture(scope="session")
def lambda3p():
    return load("lambda3p")


@pytest.fixture(scope="session")
def lambda3pp():
    return load("lambda3pp")


@pytest.fixture(scope="session")
def a2():
    return load("a2")


@pytest.fixture(scope="session")
def nakayama_c4():
    return load("nakayama_c4")


@pytest.fixture(scope="session")
def semisimple3():
    return load("semisimple3")


@pytest.fixture(scope="session")
def fig2_m3():
    return load("fig2_m3")


@pytest.fixture(scope="session")
def fig2_m3_tilted():
    return load("fig2_m3_tilted")
