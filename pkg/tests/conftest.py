"""Shared fixtures: the bundled catalog, loaded and verified once."""

import time

import pytest

from lieverify.catalog import load_catalog, verify_catalog
from lieverify.cli import default_catalog_path


@pytest.fixture(scope="session")
def entries():
    return load_catalog(default_catalog_path())


@pytest.fixture(scope="session")
def by_id(entries):
    return {e.id: e for e in entries}


@pytest.fixture(scope="session")
def passing_entries(entries):
    return [e for e in entries if e.expected == "pass"]


@pytest.fixture(scope="session")
def catalog_reports(entries):
    """Full single-threaded verification run at the default seed, timed."""
    t0 = time.perf_counter()
    reports = verify_catalog(entries, seed=42, points=32, jobs=1)
    elapsed = time.perf_counter() - t0
    return reports, elapsed
