import json
import random

import pytest

from momangle.complexes import (ParseError, SimplicialComplex, SizeLimitError,
                                boundary, expression_vertex_count, is_shifted,
                                is_subcomplex, join, parse_complex, point,
                                reduced_homology, simplex, simplex_boundary,
                                substitute, substitution_missing_faces)
from oracles import (brute_is_shifted, brute_missing_faces,
                     brute_substitute_faces, random_complex)


def test_from_facets_triangle_boundary():
    K = SimplicialComplex.from_facets(3, [(1, 2), (1, 3), (2, 3)])
    assert len(K.faces) == 7       # empty face, 3 vertices, 3 edges
    assert K == simplex_boundary(3)
    assert (1, 2, 3) not in K


def test_from_facets_figure_one(sub5):
    built = SimplicialComplex.from_facets(
        5, [(1, 2, 4), (1, 3, 4), (2, 3, 4), (1, 2, 5), (1, 3, 5), (2, 3, 5), (4, 5)])
    assert built == sub5


def test_from_facets_singletons_always_present():
    K = SimplicialComplex.from_facets(2, [])
    assert sorted(K.faces) == [(), (1,), (2,)]


def test_from_facets_label_out_of_range():
    with pytest.raises(ValueError):
        SimplicialComplex.from_facets(2, [(1, 3)])


def test_downward_closure_enforced():
    with pytest.raises(ValueError):
        SimplicialComplex(3, [(), (1,), (2,), (3,), (1, 2, 3)])


def test_missing_faces_examples(sub5, eight_vertex):
    assert simplex_boundary(3).missing_faces() == ((1, 2, 3),)
    assert sub5.missing_faces() == ((1, 2, 3), (1, 4, 5), (2, 4, 5), (3, 4, 5))
    expected = ((1, 2, 3), (4, 5, 6),
                (1, 4, 7, 8), (1, 5, 7, 8), (1, 6, 7, 8),
                (2, 4, 7, 8), (2, 5, 7, 8), (2, 6, 7, 8),
                (3, 4, 7, 8), (3, 5, 7, 8), (3, 6, 7, 8))
    assert eight_vertex.missing_faces() == expected


def test_missing_faces_against_bruteforce():
    rng = random.Random(2)
    for _ in range(25):
        K = random_complex(rng.randint(2, 6), rng)
        assert list(K.missing_faces()) == brute_missing_faces(K)


def test_full_subcomplex(sub5):
    sub = sub5.full_subcomplex((1, 2))
    assert sub.m == 2 and (1, 2) in sub
    assert sub.labels == (1, 2)
    edge45 = sub5.full_subcomplex((4, 5))
    assert (1, 2) in edge45        # re-indexed onto 1..2
    assert edge45.labels == (4, 5)
    tri = sub5.full_subcomplex((1, 2, 3))
    assert tri == simplex_boundary(3)


def test_full_subcomplex_identity_and_idempotence(sub5):
    assert sub5.full_subcomplex(range(1, 6)) == sub5
    sub = sub5.full_subcomplex((1, 2, 4))
    again = sub.full_subcomplex((1, 2, 3))
    assert again == sub


def test_join_examples():
    assert join(point(), point()) == simplex(2)
    got = join(simplex_boundary(3), simplex_boundary(3))
    expected_facets = set()
    for e1 in [(1, 2), (1, 3), (2, 3)]:
        for e2 in [(4, 5), (4, 6), (5, 6)]:
            expected_facets.add(e1 + e2)
    assert set(got.facets) == expected_facets
    cone = join(simplex_boundary(2), simplex(1))
    assert set(cone.facets) == {(1, 3), (2, 3)}


def test_join_missing_faces_are_disjoint_union():
    rng = random.Random(4)
    for _ in range(10):
        K1 = random_complex(rng.randint(2, 4), rng)
        K2 = random_complex(rng.randint(2, 4), rng)
        J = join(K1, K2)
        expected = sorted(
            list(K1.missing_faces())
            + [tuple(v + K1.m for v in f) for f in K2.missing_faces()],
            key=lambda f: (len(f), f))
        assert list(J.missing_faces()) == expected


def test_substitute_points_identity():
    rng = random.Random(9)
    for _ in range(10):
        K = random_complex(rng.randint(2, 5), rng)
        sub = substitute(K, [point()] * K.m)
        assert sub.complex == K


def test_substitute_figure_one(sub5):
    sub = substitute(simplex_boundary(3),
                     [simplex_boundary(3), point(), point()])
    assert sub.complex == sub5
    assert sub.offsets == (0, 3, 4)


def test_substitute_into_full_edge_is_join():
    sub = substitute(simplex(2), [simplex_boundary(2), simplex_boundary(2)])
    assert sub.complex == join(simplex_boundary(2), simplex_boundary(2))
    assert set(sub.complex.facets) == {(1, 3), (1, 4), (2, 3), (2, 4)}


def test_substitute_matches_defining_formula():
    rng = random.Random(13)
    for _ in range(30):
        slot = random_complex(rng.randint(1, 4), rng)
        parts = [random_complex(rng.randint(1, 4), rng) for _ in range(slot.m)]
        sub = substitute(slot, parts)
        assert set(sub.complex.faces) == brute_substitute_faces(slot, parts)


def test_substitution_missing_faces_formula(sub5):
    got = substitution_missing_faces(simplex_boundary(3),
                                     [simplex_boundary(3), point(), point()])
    assert got == [(1, 2, 3), (1, 4, 5), (2, 4, 5), (3, 4, 5)]
    assert got == list(sub5.missing_faces())


def test_substitution_missing_faces_random():
    rng = random.Random(17)
    for _ in range(30):
        slot = random_complex(rng.randint(1, 4), rng)
        parts = [random_complex(rng.randint(1, 4), rng) for _ in range(slot.m)]
        sub = substitute(slot, parts)
        assert substitution_missing_faces(slot, parts) == list(sub.complex.missing_faces())


def test_is_subcomplex(sub5):
    assert is_subcomplex(simplex_boundary(3), sub5)
    edge = SimplicialComplex.from_facets(2, [(1, 2)])
    assert is_subcomplex(edge, sub5, {1: 4, 2: 5})
    assert not is_subcomplex(simplex(3), sub5, {1: 1, 2: 2, 3: 3})
    assert is_subcomplex(sub5, sub5)


def test_is_shifted_examples(sub5):
    assert is_shifted(simplex(4))
    res = is_shifted(simplex_boundary(3))
    assert res.shifted and len(res.witnesses) == 6
    got = is_shifted(sub5)
    wits = brute_is_shifted(sub5)
    assert got.shifted == bool(wits)
    assert list(got.witnesses) == wits


def test_is_shifted_with_given_order():
    K = SimplicialComplex.from_facets(3, [(2, 3), (3,)])
    assert is_shifted(K, order=(1, 2, 3))
    with pytest.raises(ValueError):
        is_shifted(K, order=(1, 2))


def test_is_shifted_size_gate():
    with pytest.raises(SizeLimitError):
        is_shifted(simplex(8))


def test_boundary_of_simplex():
    assert boundary(simplex(4)) == simplex_boundary(4)
    assert sorted(boundary(point()).faces) == [()]


def test_reduced_homology_sphere():
    hom = reduced_homology(simplex_boundary(4))
    assert {d: h.rank for d, h in hom.items()} == {2: 1}


def test_parser_examples(sub5):
    assert parse_complex("pt") == point()
    assert parse_complex("simplex(1,2,3)") == simplex(3)
    assert parse_complex("bd(simplex(1,2,3))") == simplex_boundary(3)
    assert parse_complex(" join( pt , pt ) ") == simplex(2)
    got = parse_complex("subst(bd(simplex(1,2,3)); bd(simplex(1,2,3)), pt, pt)")
    assert got == sub5


def test_parser_errors():
    for text in ["", "simplex(", "simplex(1,1)", "bd(pt", "pt extra",
                 "subst(pt)", "mystery(1)"]:
        with pytest.raises(ParseError):
            parse_complex(text)


def test_expression_vertex_count():
    assert expression_vertex_count("join(simplex(1,2),bd(simplex(1,2,3)))") == 5
    with pytest.raises(SizeLimitError):
        parse_complex("simplex(" + ",".join(map(str, range(1, 26))) + ")",
                      max_vertices=10)


def test_json_roundtrip(sub5):
    data = json.loads(json.dumps(sub5.to_json_dict()))
    assert SimplicialComplex.from_json_dict(data) == sub5
