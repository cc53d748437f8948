"""Named fixtures and access to the shipped specification documents."""
from __future__ import annotations

from functools import lru_cache
from importlib import resources

from .cc import build_cc
from .finset import make_finset, make_universe
from .functoriality import identity_ucf, make_inc
from .limits import make_str_variants

FIXTURE_PACKAGE = "csystems.specs"


def fs(K=2):
    return make_finset(K)


@lru_cache(maxsize=None)
def fs2_u3(K=2, sizes=(0, 1, 2)):
    C = make_finset(K)
    return C, make_universe(C, sizes)


@lru_cache(maxsize=None)
def cc_fs2_u3(N=3):
    C, u = fs2_u3()
    return build_cc(C, u, N)


def inc(twist=False, fault=None):
    return make_inc(twist=twist, fault=fault)


def identity_fs2():
    C, u = fs2_u3()
    return identity_ucf(C, u)


def f_category(bound=3):
    """(F, str_1, str_sigma)."""
    return make_str_variants(bound)


def fixture_names(subdir=None):
    root = resources.files(FIXTURE_PACKAGE)
    if subdir:
        root = root / subdir
    prefix = f"{subdir}/" if subdir else ""
    return sorted(prefix + p.name for p in root.iterdir() if p.name.endswith(".spec"))


def fixture_text(name):
    path = resources.files(FIXTURE_PACKAGE)
    for part in name.split("/"):
        path = path / part
    return path.read_text(encoding="utf-8")
