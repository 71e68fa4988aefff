"""Simplicial complexes on labelled vertex sets and the substitution construction.

A complex lives on the vertex set {1..m}; faces are strictly increasing
tuples of labels, with the empty face always present.  Constructors close
downwards and (for `from_facets`) add every singleton, matching the standing
convention that a complex contains the empty set and all vertices.  Sphere
subcomplexes produced elsewhere may omit singletons (ghost vertices), which
`SimplicialComplex` tolerates as long as downward closure holds.

Faces double as bitmasks internally (m <= 64) to keep the 2^m subset loops
tolerable.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations

from .exactalg import ChainComplex, IntMatrix

MAX_VERTICES = 24


class SizeLimitError(ValueError):
    """Input exceeds the documented desk-scale bound."""


def face(vertices):
    """Canonical face: strictly increasing tuple of positive labels."""
    t = tuple(sorted(set(int(v) for v in vertices)))
    if len(t) != len(tuple(vertices)):
        raise ValueError(f"duplicate vertex in face {tuple(vertices)}")
    if t and t[0] < 1:
        raise ValueError(f"vertex labels must be positive: {t}")
    return t


def _mask(f):
    m = 0
    for v in f:
        m |= 1 << (v - 1)
    return m


def _unmask(mask):
    out = []
    v = 1
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


class SimplicialComplex:
    """Immutable downward-closed face family on {1..m}.

    `labels`, when set, records the original labels of the vertices 1..m
    (used by `full_subcomplex`, whose output is re-indexed).
    """

    __slots__ = ("m", "faces", "facets", "labels", "_masks", "_mf", "_hash")

    def __init__(self, m, faces, labels=None):
        if m > 64:
            raise SizeLimitError(f"m={m} exceeds the bitset bound of 64")
        fs = set()
        for f in faces:
            f = face(f)
            if f and f[-1] > m:
                raise ValueError(f"label {f[-1]} out of range 1..{m}")
            fs.add(f)
        fs.add(())
        self.m = m
        self.faces = frozenset(fs)
        self._masks = frozenset(_mask(f) for f in fs)
        for f in fs:
            for v in f:
                sub = tuple(x for x in f if x != v)
                if sub not in fs:
                    raise ValueError(f"not downward closed: {sub} missing under {f}")
        maximal = [f for f in fs
                   if not any(f != g and set(f) <= set(g) for g in fs)]
        self.facets = tuple(sorted(maximal, key=lambda f: (len(f), f)))
        self.labels = tuple(labels) if labels is not None else None
        self._mf = None
        self._hash = hash((self.m, self.faces))

    @classmethod
    def from_facets(cls, m, facets):
        """Downward closure of the facets plus all singletons and the empty face."""
        fs = {(), *((i,) for i in range(1, m + 1))}
        for f in facets:
            f = face(f)
            if f and f[-1] > m:
                raise ValueError(f"label {f[-1]} out of range 1..{m}")
            for k in range(len(f) + 1):
                fs.update(combinations(f, k))
        return cls(m, fs)

    # -- basics --------------------------------------------------------------

    def __contains__(self, f):
        return _mask(face(f)) in self._masks

    def has_mask(self, mask):
        return mask in self._masks

    def __eq__(self, other):
        return (isinstance(other, SimplicialComplex)
                and self.m == other.m and self.faces == other.faces)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"SimplicialComplex(m={self.m}, facets={list(self.facets)})"

    def dimension(self):
        return max((len(f) for f in self.faces), default=0) - 1

    def vertices(self):
        return tuple(v for v in range(1, self.m + 1) if (v,) in self.faces)

    def has_all_singletons(self):
        return all((v,) in self.faces for v in range(1, self.m + 1))

    def faces_by_dim(self):
        out = {}
        for f in self.faces:
            out.setdefault(len(f) - 1, []).append(f)
        for d in out:
            out[d].sort()
        return out

    def faces_within(self, subset):
        """Faces contained in `subset`, keeping original labels."""
        sub = set(subset)
        return sorted((f for f in self.faces if set(f) <= sub),
                      key=lambda f: (len(f), f))

    # -- missing faces ---------------------------------------------------------

    def missing_faces(self):
        """Minimal non-faces, sorted by (cardinality, lexicographic)."""
        if self._mf is not None:
            return self._mf
        if self.m > MAX_VERTICES:
            raise SizeLimitError(
                f"missing-face enumeration refuses m={self.m} > {MAX_VERTICES}")
        top = max((len(f) for f in self.faces), default=0) + 1
        found = []
        vs = range(1, self.m + 1)
        for k in range(1, min(top, self.m) + 1):
            for cand in combinations(vs, k):
                if cand in self:
                    continue
                if all(cand[:i] + cand[i + 1:] in self for i in range(k)):
                    found.append(cand)
        found.sort(key=lambda f: (len(f), f))
        self._mf = tuple(found)
        return self._mf

    # -- subcomplexes -----------------------------------------------------------

    def full_subcomplex(self, subset):
        """K_J re-indexed on 1..|J|; the original labels ride along in `.labels`."""
        js = sorted(set(subset))
        if any(not 1 <= v <= self.m for v in js):
            raise ValueError("subset outside vertex range")
        pos = {v: i + 1 for i, v in enumerate(js)}
        faces = [tuple(pos[v] for v in f) for f in self.faces_within(js)]
        return SimplicialComplex(len(js), faces, labels=js)

    def relabelled(self, mapping, m=None):
        """Copy with vertex v renamed mapping[v] (injective)."""
        if len(set(mapping.values())) != len(mapping):
            raise ValueError("relabelling must be injective")
        new_faces = [tuple(sorted(mapping[v] for v in f)) for f in self.faces]
        mm = m if m is not None else max(mapping.values(), default=0)
        return SimplicialComplex(mm, new_faces)

    def to_json_dict(self):
        return {"m": self.m, "facets": [list(f) for f in self.facets if f]}

    @classmethod
    def from_json_dict(cls, data):
        return cls.from_facets(int(data["m"]), [face(f) for f in data["facets"]])


# -- point / simplex helpers ------------------------------------------------

def point():
    return SimplicialComplex.from_facets(1, [(1,)])


def simplex(k):
    """Full simplex on 1..k."""
    return SimplicialComplex.from_facets(k, [tuple(range(1, k + 1))])


def simplex_boundary(k):
    """boundary of the (k-1)-simplex on 1..k; for k=1 the empty complex {()}."""
    full = tuple(range(1, k + 1))
    if k == 1:
        return SimplicialComplex(1, [()])
    return SimplicialComplex.from_facets(
        k, [full[:i] + full[i + 1:] for i in range(k)])


def boundary(K):
    """Complex generated by all non-maximal faces of K (bd of a simplex
    recovers the usual boundary sphere)."""
    facets = set(K.facets)
    faces = [f for f in K.faces if f not in facets]
    # vertices that were facets disappear from the face set but keep labels
    return SimplicialComplex(K.m, faces)


def join(K1, K2):
    """Simplicial join; the second factor is relabelled onto m1+1..m1+m2."""
    off = K1.m
    faces = []
    for f1 in K1.faces:
        for f2 in K2.faces:
            faces.append(f1 + tuple(v + off for v in f2))
    return SimplicialComplex(K1.m + K2.m, faces)


@dataclass(frozen=True)
class Substitution:
    """Result of substituting parts into a slot complex.

    offsets[i] is added to part i's labels: part i occupies the contiguous
    block offsets[i]+1 .. offsets[i]+parts[i].m, in slot order.
    """

    complex: SimplicialComplex
    offsets: tuple

    def map_label(self, part_index, v):
        return self.offsets[part_index] + v


def substitute(K, parts):
    """Substitution complex K(K_1,...,K_m): faces are unions of part faces
    indexed by a face of K.  Parts are relabelled onto consecutive blocks."""
    if len(parts) != K.m:
        raise ValueError(f"need {K.m} parts, got {len(parts)}")
    offsets = []
    off = 0
    for p in parts:
        offsets.append(off)
        off += p.m
    total = off
    faces = set()
    for slot_face in K.faces:
        choices = [()]
        for s in slot_face:
            part = parts[s - 1]
            shift = offsets[s - 1]
            new_choices = []
            for base in choices:
                for pf in part.faces:
                    if pf:
                        new_choices.append(base + tuple(v + shift for v in pf))
            choices = new_choices
        faces.update(tuple(sorted(c)) for c in choices)
    faces.add(())
    return Substitution(SimplicialComplex(total, faces), tuple(offsets))


def substitution_missing_faces(K, parts):
    """Missing faces of the substitution via the disjoint-union formula:
    each part's own missing faces, plus one transversal per missing face of
    the slot complex (one vertex out of each involved part)."""
    offsets = []
    off = 0
    for p in parts:
        offsets.append(off)
        off += p.m
    out = []
    for i, p in enumerate(parts):
        for mf in p.missing_faces():
            out.append(tuple(v + offsets[i] for v in mf))
    for slot_mf in K.missing_faces():
        transversals = [()]
        for s in slot_mf:
            part = parts[s - 1]
            shift = offsets[s - 1]
            verts = [v + shift for v in range(1, part.m + 1)
                     if (v,) in part.faces]
            transversals = [t + (v,) for t in transversals for v in verts]
        out.extend(tuple(sorted(t)) for t in transversals)
    return sorted(set(out), key=lambda f: (len(f), f))


def is_subcomplex(K_small, K_big, labelling=None):
    """True iff every face of K_small maps to a face of K_big.

    labelling maps small labels to big labels (default: identity)."""
    if labelling is None:
        labelling = {v: v for v in range(1, K_small.m + 1)}
    if len(set(labelling.values())) != len(labelling):
        raise ValueError("labelling must be injective")
    for f in K_small.faces:
        img = tuple(sorted(labelling[v] for v in f))
        if img not in K_big:
            return False
    return True


@dataclass(frozen=True)
class ShiftedResult:
    shifted: bool
    witnesses: tuple  # vertex orders (ascending significance) that work

    def __bool__(self):
        return self.shifted


def _order_is_shifted(K, order):
    """order[v] = position; larger position may replace smaller inside faces."""
    pos = {v: i for i, v in enumerate(order)}
    for f in K.faces:
        for v in f:
            rest = tuple(x for x in f if x != v)
            for w in range(1, K.m + 1):
                if w in f or pos[w] <= pos[v]:
                    continue
                if tuple(sorted(rest + (w,))) not in K:
                    return False
    return True


def is_shifted(K, order=None):
    """Shiftedness test.

    With `order` given (a permutation of 1..m, smallest first), only that
    order is checked.  Otherwise all m! orders are tried for m <= 7 and
    every witnessing order is reported; beyond that an order is mandatory.
    """
    if order is not None:
        order = tuple(order)
        if sorted(order) != list(range(1, K.m + 1)):
            raise ValueError("order must be a permutation of 1..m")
        ok = _order_is_shifted(K, order)
        return ShiftedResult(ok, (order,) if ok else ())
    if K.m > 7:
        raise SizeLimitError(
            "exhaustive order search is limited to m <= 7; pass an order")
    wits = tuple(p for p in permutations(range(1, K.m + 1))
                 if _order_is_shifted(K, p))
    return ShiftedResult(bool(wits), wits)


# -- reduced simplicial chains ------------------------------------------------

def reduced_chain_complex(faces):
    """Reduced chain complex of a face family (empty simplex in degree -1)."""
    by_dim = {}
    for f in faces:
        by_dim.setdefault(len(f) - 1, []).append(tuple(f))
    basis = {d: sorted(fs) for d, fs in by_dim.items()}
    diffs = {}
    for d, fs in basis.items():
        below = {f: i for i, f in enumerate(basis.get(d - 1, ()))}
        if not below and d - 1 not in basis:
            continue
        entries = {}
        for j, f in enumerate(fs):
            for k in range(len(f)):
                g = f[:k] + f[k + 1:]
                entries[(below[g], j)] = (-1) ** k
        diffs[d] = IntMatrix(len(basis.get(d - 1, ())), len(fs), entries)
    return ChainComplex(basis, diffs)


def reduced_homology(K_or_faces):
    """Reduced integral homology, degree -> HomologyGroup (nontrivial only)."""
    faces = K_or_faces.faces if isinstance(K_or_faces, SimplicialComplex) else K_or_faces
    return reduced_chain_complex(faces).homology_all()


def is_acyclic(K_or_faces):
    return not reduced_homology(K_or_faces)


# -- builder expression grammar -----------------------------------------------
#
#   EXPR := 'pt' | 'simplex(' INT {',' INT} ')' | 'bd(' EXPR ')'
#         | 'join(' EXPR ',' EXPR ')' | 'subst(' EXPR ';' EXPR {',' EXPR} ')'
#
# Whitespace-insensitive, LL(1); vertices are relabelled left to right, so
# simplex arguments only fix the vertex count.

class ParseError(ValueError):
    def __init__(self, message, pos):
        super().__init__(f"{message} (line 1, column {pos + 1})")
        self.pos = pos


class _Scanner:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch):
        self.skip_ws()
        if self.pos >= len(self.text) or self.text[self.pos] != ch:
            raise ParseError(f"expected {ch!r}", self.pos)
        self.pos += 1

    def word(self):
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isalpha():
            self.pos += 1
        if start == self.pos:
            raise ParseError("expected a name", start)
        return self.text[start:self.pos]

    def integer(self):
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise ParseError("expected an integer", start)
        return int(self.text[start:self.pos])


def _parse_expr(sc):
    name = sc.word()
    if name == "pt":
        return point()
    if name == "simplex":
        sc.expect("(")
        labels = [sc.integer()]
        while sc.peek() == ",":
            sc.expect(",")
            labels.append(sc.integer())
        sc.expect(")")
        if len(set(labels)) != len(labels):
            raise ParseError("repeated vertex in simplex(...)", sc.pos)
        return simplex(len(labels))
    if name == "bd":
        sc.expect("(")
        inner = _parse_expr(sc)
        sc.expect(")")
        return boundary(inner)
    if name == "join":
        sc.expect("(")
        left = _parse_expr(sc)
        sc.expect(",")
        right = _parse_expr(sc)
        sc.expect(")")
        return join(left, right)
    if name == "subst":
        sc.expect("(")
        slot = _parse_expr(sc)
        sc.expect(";")
        parts = [_parse_expr(sc)]
        while sc.peek() == ",":
            sc.expect(",")
            parts.append(_parse_expr(sc))
        sc.expect(")")
        return substitute(slot, parts).complex
    raise ParseError(f"unknown builder {name!r}", sc.pos)


def _count_vertices(sc):
    name = sc.word()
    if name == "pt":
        return 1
    if name == "simplex":
        sc.expect("(")
        sc.integer()
        n = 1
        while sc.peek() == ",":
            sc.expect(",")
            sc.integer()
            n += 1
        sc.expect(")")
        return n
    if name == "bd":
        sc.expect("(")
        n = _count_vertices(sc)
        sc.expect(")")
        return n
    if name == "join":
        sc.expect("(")
        n = _count_vertices(sc)
        sc.expect(",")
        n += _count_vertices(sc)
        sc.expect(")")
        return n
    if name == "subst":
        sc.expect("(")
        _count_vertices(sc)
        sc.expect(";")
        n = _count_vertices(sc)
        while sc.peek() == ",":
            sc.expect(",")
            n += _count_vertices(sc)
        sc.expect(")")
        return n
    raise ParseError(f"unknown builder {name!r}", sc.pos)


def expression_vertex_count(text):
    """Vertex count of a builder expression, without constructing anything
    (the construction is exponential in it, so gate first)."""
    sc = _Scanner(text)
    n = _count_vertices(sc)
    sc.skip_ws()
    if sc.pos != len(sc.text):
        raise ParseError("trailing input", sc.pos)
    return n


def parse_complex(text, max_vertices=None):
    """Parse a builder expression into a SimplicialComplex."""
    if max_vertices is not None:
        n = expression_vertex_count(text)
        if n > max_vertices:
            raise SizeLimitError(
                f"expression builds {n} vertices, above the bound {max_vertices}")
    sc = _Scanner(text)
    K = _parse_expr(sc)
    sc.skip_ws()
    if sc.pos != len(sc.text):
        raise ParseError("trailing input", sc.pos)
    return K
