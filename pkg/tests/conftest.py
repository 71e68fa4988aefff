import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from momangle import complexes as cx
from momangle import parse_complex

SUB5_EXPR = "subst(bd(simplex(1,2,3)); bd(simplex(1,2,3)), pt, pt)"


@pytest.fixture(scope="session")
def sub5():
    """bd(bd(1,2,3), 4, 5): the 5-vertex substitution complex."""
    return parse_complex(SUB5_EXPR)


@pytest.fixture(scope="session")
def filled6():
    """bd(bd(1,2,3), 4, 5, 6) with the triangle (1,2,3) filled in."""
    base = parse_complex("subst(bd(simplex(1,2,3,4)); bd(simplex(1,2,3)), pt, pt, pt)")
    return cx.SimplicialComplex.from_facets(6, list(base.facets) + [(1, 2, 3)])


@pytest.fixture(scope="session")
def eight_vertex():
    """bd(bd(1,2,3), bd(4,5,6), 7, 8)."""
    return parse_complex(
        "subst(bd(simplex(1,2,3,4)); bd(simplex(1,2,3)), bd(simplex(1,2,3)), pt, pt)")


@pytest.fixture(scope="session")
def rp2():
    """Six-vertex triangulation of the real projective plane."""
    return cx.SimplicialComplex.from_facets(
        6, [(1, 2, 3), (1, 2, 4), (1, 3, 5), (1, 4, 6), (1, 5, 6),
            (2, 3, 6), (2, 4, 5), (2, 5, 6), (3, 4, 5), (3, 4, 6)])


@pytest.fixture(scope="session")
def two_points():
    return cx.SimplicialComplex.from_facets(2, [])


@pytest.fixture(scope="session")
def four_cycle():
    return cx.SimplicialComplex.from_facets(4, [(1, 2), (2, 3), (3, 4), (1, 4)])
