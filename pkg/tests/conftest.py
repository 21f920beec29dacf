from __future__ import annotations

import pytest

from engelgraph.verify import group


@pytest.fixture(scope="session")
def grp():
    """Session-cached group factory keyed by expression text."""
    return group
