from __future__ import annotations

from pathlib import Path

import pytest
from hypothesis import HealthCheck, assume, settings
from hypothesis import strategies as st

from pushtrack.curve import LEFT, RIGHT, make_diagram

FIXTURES = Path(__file__).parent / "fixtures"

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture
def fixtures() -> Path:
    return FIXTURES


@st.composite
def signed_codes(draw, max_crossings: int = 6):
    """A valid signed Gauss code: a random pairing of 2n slots into crossings."""
    n = draw(st.integers(1, max_crossings))
    order = draw(st.permutations(range(2 * n)))
    slots = [None] * (2 * n)
    for c in range(n):
        a, b = sorted(order[2 * c : 2 * c + 2])
        slots[a], slots[b] = (c, 1), (c, 2)
    ids: dict[int, int] = {}
    word = []
    for c, p in slots:
        if p == 1:
            ids[c] = len(ids) + 1
        word.append((ids[c], p))
    signs = draw(st.lists(st.sampled_from([RIGHT, LEFT]), min_size=n, max_size=n))
    return word, signs


@st.composite
def diagrams(draw, max_crossings: int = 6):
    word, signs = draw(signed_codes(max_crossings))
    bare = make_diagram(word, signs)
    chosen = draw(st.lists(st.booleans(), min_size=len(bare.faces), max_size=len(bare.faces)))
    punctures = {f.label: 1 for f, on in zip(bare.faces, chosen) if on}
    return make_diagram(word, signs, punctures=punctures)


@st.composite
def analyzable(draw, max_crossings: int = 6):
    """Filling diagrams on surfaces with 3g+n > 3."""
    d = draw(diagrams(max_crossings))
    assume(d.surface.satisfies_kra)
    return d
