"""Shared fixtures: the three bundled example algebras, their named module
files, and session-scoped root contexts (enumeration is the slow part)."""

import pathlib

import pytest

from tauseq.algebra import parse_algebra
from tauseq.modules import parse_modules
from tauseq.reduction import root_context

FIXDIR = pathlib.Path(__file__).resolve().parent.parent / "fixtures"


def load_example(stem):
    qp, alg = parse_algebra((FIXDIR / f"{stem}.alg").read_text())
    mods = parse_modules((FIXDIR / f"{stem}.mods").read_text(), qp, alg)
    return qp, alg, mods


@pytest.fixture(scope="session")
def ex1():
    return load_example("ex1")


@pytest.fixture(scope="session")
def ex2():
    return load_example("ex2")


@pytest.fixture(scope="session")
def ex3():
    return load_example("ex3")


def _root_with_names(alg, mods):
    from tauseq.tautilt import Registry

    reg = Registry(alg)
    for name, m in mods.items():
        reg.ensure(m, name=name)
    return root_context(alg, registry=reg)


@pytest.fixture(scope="session")
def root1(ex1):
    _, alg, mods = ex1
    return _root_with_names(alg, mods)


@pytest.fixture(scope="session")
def root2(ex2):
    _, alg, mods = ex2
    return _root_with_names(alg, mods)


@pytest.fixture(scope="session")
def root3(ex3):
    _, alg, mods = ex3
    return _root_with_names(alg, mods)


def item_of(root, mods, name):
    """Registry item for a named fixture module (or NAME[1] for shifts)."""
    from tauseq.reduction import _find_proj_vertex

    if name.endswith("[1]"):
        m = mods[name[:-3]]
        return ("p", _find_proj_vertex(root.gamma, m))
    idx = root.registry.find(mods[name])
    assert idx is not None, name
    return ("m", idx)
