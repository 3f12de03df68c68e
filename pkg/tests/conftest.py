"""Shared fixtures: the worked surfaces every layer is exercised against."""

import pytest

from mannheim import catalog


@pytest.fixture(scope="session")
def helicoid():
    return catalog.helicoid()


@pytest.fixture(scope="session")
def tangent_dev():
    return catalog.tangent_developable()


@pytest.fixture(scope="session")
def cone_m():
    return catalog.cone_m1_minus()


@pytest.fixture(scope="session")
def cone_p():
    return catalog.cone_m1_plus()


@pytest.fixture(scope="session")
def m2p():
    return catalog.m2_plus_analytic()


@pytest.fixture(scope="session")
def law_m1m():
    return catalog.curvature_law_base_m1_minus()


@pytest.fixture(scope="session")
def law_m1p():
    return catalog.curvature_law_base_m1_plus()
