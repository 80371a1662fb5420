"""Shared pipelines: each fixture action is refined, quotiented, presented,
and enumerated once per session."""

from collections import namedtuple

import pytest

import stabpres as sp
from stabpres.fixtures import f1_flip, f2_s3, f3_octahedral

Pipeline = namedtuple("Pipeline", "action quotient presentation table")


def _pipeline(builder, max_cosets=10**5):
    A = sp.refine_action(builder())
    Q = sp.build_quotient(A)
    P = sp.build_presentation(A, Q)
    T = sp.todd_coxeter(P, max_cosets=max_cosets)
    return Pipeline(A, Q, P, T)


@pytest.fixture(scope="session")
def f1():
    return _pipeline(f1_flip)


@pytest.fixture(scope="session")
def f2():
    return _pipeline(f2_s3)


@pytest.fixture(scope="session")
def f3():
    return _pipeline(f3_octahedral)


@pytest.fixture(scope="session")
def fixture_dir(tmp_path_factory):
    from stabpres.fixtures import write_fixtures

    directory = tmp_path_factory.mktemp("fixtures")
    write_fixtures(directory)
    return directory
