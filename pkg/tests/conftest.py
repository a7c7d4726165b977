from __future__ import annotations

import pytest

from diffgenus import groups as gr


@pytest.fixture(scope="session")
def q8():
    return gr.build_group("Q8")


@pytest.fixture(scope="session")
def d8():
    return gr.build_group("D8")


@pytest.fixture(scope="session")
def z12():
    return gr.build_group("Z12")


@pytest.fixture(scope="session")
def s3():
    """Symmetric group on 3 points as an ingested-style table (identity 0)."""
    perms = [(0, 1, 2), (1, 0, 2), (2, 1, 0), (0, 2, 1), (1, 2, 0), (2, 0, 1)]

    def compose(p, q):
        return tuple(p[q[i]] for i in range(3))

    index = {p: i for i, p in enumerate(perms)}
    mult = [[index[compose(p, q)] for q in perms] for p in perms]
    return gr.GroupTable(mult, source="S3")
