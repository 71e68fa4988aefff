"""Iterated higher Whitehead product expressions and their realisability.

An expression is a rooted tree: leaves are distinct coordinate-map labels,
every bracket has at least two arguments.  Children are normalised so that
sub-brackets precede leaves (ordered by smallest leaf); reordering only
moves canonical chains by a sign, and normalising pins the golden outputs.

The canonical complex of an expression is built by substitution: a bracket
with sub-products w_1..w_q and leaves i_1..i_p gets

    bd_Delta(w) = bd_simplex(bd_Delta(w_1), ..., bd_Delta(w_q), i_1..i_p)

with the top sphere the join of the children's spheres and bd_simplex(p).
The canonical cellular chain multiplies the children's chains by the usual
boundary-of-polydisc factor (one circle letter per position).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from . import complexes as cx
from .exactalg import HomologyGroup, IntMatrix, invariant_factors, kernel_basis
from .moment_angle import CellChain, zk_chain_complex

UNDEFINED = "undefined"
DEFINED_TRIVIAL = "defined-trivial"
DEFINED_NONTRIVIAL = "defined-nontrivial"


@dataclass(frozen=True)
class WhiteheadExpr:
    """Leaf(label) when children is empty, otherwise a bracket."""

    label: int = 0
    children: tuple = ()

    @property
    def is_leaf(self):
        return not self.children

    def leaves(self):
        if self.is_leaf:
            return (self.label,)
        out = []
        for c in self.children:
            out.extend(c.leaves())
        return tuple(sorted(out))

    def bracket_children(self):
        return tuple(c for c in self.children if not c.is_leaf)

    def leaf_children(self):
        return tuple(c.label for c in self.children if c.is_leaf)

    def is_single(self):
        return not self.is_leaf and all(c.is_leaf for c in self.children)

    def is_nested(self):
        """One sub-bracket per level (a single bracket is nested)."""
        if self.is_leaf:
            return False
        subs = self.bracket_children()
        if not subs:
            return True
        return len(subs) == 1 and subs[0].is_nested()

    def dimension(self):
        if self.is_leaf:
            raise ValueError("a bare coordinate map has no product dimension")
        p = len(self.leaf_children())
        return sum(c.dimension() for c in self.bracket_children()) + 2 * p - 1

    def to_text(self):
        if self.is_leaf:
            return str(self.label)
        return "[" + ",".join(c.to_text() for c in self.children) + "]"

    def __repr__(self):
        return f"WhiteheadExpr({self.to_text()})"


def leaf(v):
    if v < 1:
        raise ValueError("leaf labels must be positive")
    return WhiteheadExpr(label=v)


def bracket(children):
    """Normalised bracket; rejects arity < 2 and repeated leaves."""
    kids = tuple(children)
    if len(kids) < 2:
        raise ValueError("a bracket needs at least two arguments")
    seen = set()
    for c in kids:
        for v in c.leaves():
            if v in seen:
                raise ValueError(f"leaf {v} appears twice")
            seen.add(v)
    kids = tuple(sorted(kids, key=lambda c: (1 if c.is_leaf else 0, c.leaves()[0])))
    return WhiteheadExpr(children=kids)


def parse_whitehead(text):
    """Nested integer lists: expr := int | '[' expr (',' expr)+ ']'."""
    pos = 0

    def skip():
        nonlocal pos
        while pos < len(text) and text[pos].isspace():
            pos += 1

    def expr():
        nonlocal pos
        skip()
        if pos < len(text) and text[pos] == "[":
            pos += 1
            kids = [expr()]
            skip()
            while pos < len(text) and text[pos] == ",":
                pos += 1
                kids.append(expr())
                skip()
            if pos >= len(text) or text[pos] != "]":
                raise cx.ParseError("expected ']'", pos)
            pos += 1
            return bracket(kids)
        start = pos
        while pos < len(text) and text[pos].isdigit():
            pos += 1
        if start == pos:
            raise cx.ParseError("expected an integer or '['", pos)
        return leaf(int(text[start:pos]))

    w = expr()
    skip()
    if pos != len(text):
        raise cx.ParseError("trailing input", pos)
    return w


# -- canonical complexes -------------------------------------------------------

@dataclass(frozen=True)
class DeltaW:
    """Canonical complex, its top sphere (same labels; the sphere may leave
    some vertices unused), and the map from leaf labels to vertices.

    The sphere is None for brackets that mix sub-products with no leaf of
    their own: the join of the children's spheres then outgrows the
    substitution complex and the top-sphere construction does not apply.
    """

    complex: cx.SimplicialComplex
    sphere: cx.SimplicialComplex | None
    leaf_map: dict = field(compare=False)

    def vertex_to_leaf(self):
        return {v: l for l, v in self.leaf_map.items()}


def delta_w(w):
    if w.is_leaf:
        raise ValueError("bare leaves have no canonical complex")
    parts = []
    part_leaf_maps = []
    spheres = []
    for c in w.bracket_children():
        sub = delta_w(c)
        parts.append(sub.complex)
        part_leaf_maps.append(sub.leaf_map)
        spheres.append(sub.sphere)
    p = len(w.leaf_children())
    for l in w.leaf_children():
        parts.append(cx.point())
        part_leaf_maps.append({l: 1})
    sub = cx.substitute(cx.simplex_boundary(len(parts)), parts)
    leaf_map = {}
    for idx, lm in enumerate(part_leaf_maps):
        for l, v in lm.items():
            leaf_map[l] = sub.map_label(idx, v)
    if (spheres and p == 0) or any(s is None for s in spheres):
        return DeltaW(sub.complex, None, leaf_map)
    sphere = None
    for s in spheres:
        sphere = s if sphere is None else cx.join(sphere, s)
    if p:
        leaf_block = cx.simplex_boundary(p)
        sphere = leaf_block if sphere is None else cx.join(sphere, leaf_block)
    if sphere.dimension() != sub.complex.dimension():
        raise AssertionError("top sphere dimension mismatch")
    return DeltaW(sub.complex, sphere, leaf_map)


def delta_w_sphere(w):
    return delta_w(w).sphere


def sphere_fundamental_cycle(sphere):
    """Generator of the top reduced homology of a simplicial sphere."""
    C = cx.reduced_chain_complex(sphere.faces)
    top = max(C.degrees)
    cols = kernel_basis(C.differential(top))
    if len(cols) != 1:
        raise ValueError("complex is not a homology sphere in top degree")
    labels = C.basis[top]
    return {labels[i]: v for i, v in cols[0].items()}


# -- canonical chains ----------------------------------------------------------

def _disc_boundary_factor(leaves_):
    terms = {}
    for k, v in enumerate(leaves_):
        I = tuple(x for x in leaves_ if x != v)
        terms[((v,), I)] = 1
    return CellChain(terms)


def hurewicz_chain(w, m=None):
    """Canonical cellular chain of an iterated product.

    Recursively the product of the sub-products' chains with the
    one-circle-letter sum over the bracket's own leaves.  Brackets whose
    arguments are all sub-products (no leaves) carry no canonical chain at
    this level and are rejected.
    """
    if w.is_leaf:
        raise ValueError("bare leaves carry no canonical chain")
    if m is not None:
        bad = [v for v in w.leaves() if v > m]
        if bad:
            raise ValueError(f"leaves {bad} outside 1..{m}")
    subs = w.bracket_children()
    leaves_ = w.leaf_children()
    if subs and not leaves_:
        raise ValueError(
            "brackets with sub-products only have no canonical cellular chain")
    chain = None
    for c in subs:
        sub = hurewicz_chain(c)
        chain = sub if chain is None else chain.product(sub)
    factor = _disc_boundary_factor(tuple(sorted(leaves_)))
    chain = factor if chain is None else chain.product(factor)
    if chain.degree != w.dimension():
        raise AssertionError("canonical chain degree mismatch")
    return chain


# -- realisability criteria ----------------------------------------------------

def _embeds_via_leaves(dw, K):
    """Does the canonical complex sit inside K with leaves at themselves?"""
    labelling = dw.vertex_to_leaf()
    if any(l > K.m for l in labelling.values()):
        return False
    return cx.is_subcomplex(dw.complex, K, labelling)


def single_product_status(K, I, check_witness=True):
    """Status of a single product on the vertex list I: defined iff the
    boundary of the simplex on I sits in K, trivial iff I itself is a face."""
    I = tuple(sorted(set(I)))
    if len(I) < 2:
        raise ValueError("need at least two distinct vertices")
    if I[-1] > K.m:
        raise ValueError("vertex outside K")
    defined = all(I[:k] + I[k + 1:] in K for k in range(len(I)))
    if not defined:
        return UNDEFINED
    if I in K:
        return DEFINED_TRIVIAL
    if check_witness:
        w = bracket([leaf(v) for v in I])
        cls = zk_chain_complex(K).class_of(2 * len(I) - 1,
                                           hurewicz_chain(w).terms)
        if cls.is_boundary:
            raise AssertionError(
                f"canonical cycle of {I} unexpectedly bounds in Z_K")
    return DEFINED_NONTRIVIAL


def _nested_shape_parts(w):
    subs = w.bracket_children()
    if w.is_leaf or any(not c.is_single() for c in subs):
        raise ValueError(
            "expected the shape [w_1,...,w_q, leaves] with single-product w_j")
    return subs, w.leaf_children()


def trivialising_join(w):
    """The join bd(w_1) * ... * bd(w_q) * simplex(leaves) whose presence in K
    kills the product, with the leaf map onto consecutive blocks."""
    subs, leaves_ = _nested_shape_parts(w)
    complex_ = None
    leaf_map = {}
    off = 0
    for c in subs:
        ls = c.leaves()
        piece = cx.simplex_boundary(len(ls))
        complex_ = piece if complex_ is None else cx.join(complex_, piece)
        for i, l in enumerate(ls):
            leaf_map[l] = off + i + 1
        off += len(ls)
    if leaves_:
        piece = cx.simplex(len(leaves_))
        complex_ = piece if complex_ is None else cx.join(complex_, piece)
        for i, l in enumerate(sorted(leaves_)):
            leaf_map[l] = off + i + 1
        off += len(leaves_)
    return complex_, leaf_map


def nested_shape_status(K, w, check_witness=True):
    """Exact status for products [w_1,...,w_q, leaves] with single w_j:
    defined iff K contains the canonical complex, trivial iff K contains the
    trivialising join."""
    subs, leaves_ = _nested_shape_parts(w)
    if not subs:
        return single_product_status(K, leaves_, check_witness)
    dw = delta_w(w)
    if not _embeds_via_leaves(dw, K):
        return UNDEFINED
    join_complex, join_leaf_map = trivialising_join(w)
    trivial = cx.is_subcomplex(join_complex, K,
                               {v: l for l, v in join_leaf_map.items()})
    status = DEFINED_TRIVIAL if trivial else DEFINED_NONTRIVIAL
    if check_witness and leaves_:
        cls = zk_chain_complex(K).class_of(w.dimension(),
                                           hurewicz_chain(w).terms)
        if trivial and not cls.is_boundary:
            raise AssertionError("trivial product with a nonzero canonical class")
        if not trivial and cls.is_boundary:
            raise AssertionError("nontrivial product with a bounding canonical class")
    return status


@dataclass(frozen=True)
class RealisationReport:
    defined: str          # yes / no / unknown-sufficient-only
    nontrivial: str       # yes / no / unknown
    witness: CellChain | None
    notes: tuple = ()


def realises_sufficient(K, w):
    """Sufficient realisability test for a general expression.

    The canonical complex embeds with leaves fixed pointwise; when it does,
    the canonical cycle decides nontriviality whenever its class is nonzero.
    The converse is open in general, so a vanishing class is only reported
    as definite when an exact criterion applies.
    """
    if w.is_leaf:
        raise ValueError("bare leaves are not products")
    notes = []
    dw = delta_w(w)
    special = all(c.is_single() for c in w.bracket_children())
    embedded = _embeds_via_leaves(dw, K)
    if embedded:
        defined = "yes"
    elif special:
        defined = "no"
        notes.append("smallest-complex criterion applies: not defined")
    else:
        defined = "unknown-sufficient-only"
        notes.append("canonical complex does not embed; converse is open")
    witness = None
    nontrivial = "unknown"
    if defined != "yes":
        return RealisationReport(defined, "no" if defined == "no" else "unknown",
                                 None, tuple(notes))
    full = not K.missing_faces()
    try:
        chain = hurewicz_chain(w, K.m)
    except ValueError as exc:
        notes.append(str(exc))
        chain = None
    if chain is not None:
        cls = zk_chain_complex(K).class_of(chain.degree, chain.terms)
        if not cls.is_boundary:
            nontrivial = "yes"
            witness = chain
        else:
            notes.append("canonical class vanishes")
            nontrivial = "unknown"
    if nontrivial != "yes":
        if full:
            nontrivial = "no"
            notes.append("K is the full simplex; Z_K is contractible")
        elif special:
            join_complex, join_leaf_map = trivialising_join(w)
            if cx.is_subcomplex(join_complex, K,
                                {v: l for l, v in join_leaf_map.items()}):
                nontrivial = "no"
                notes.append("trivialising join is a subcomplex")
    return RealisationReport(defined, nontrivial, witness, tuple(notes))


# -- wedge bases for shifted and fillable complexes ------------------------------

@dataclass(frozen=True)
class WedgeEntry:
    subset: tuple
    missing_face: tuple
    expr: WhiteheadExpr
    chain: CellChain


@dataclass(frozen=True)
class WedgeBasis:
    entries: tuple
    is_basis: bool
    homology: dict = field(compare=False)
    details: tuple = ()


def _nested_entry(I, rest):
    expr = bracket([leaf(v) for v in I])
    for j in sorted(rest):
        expr = bracket([expr, leaf(j)])
    return expr


def _subset_missing_faces(K, J):
    sub = K.full_subcomplex(J)
    return [tuple(sub.labels[v - 1] for v in mf) for mf in sub.missing_faces()]


def _basis_verdict(K, entries):
    """Do the entries' classes form a Z-basis of H_*(Z_K)?"""
    C = zk_chain_complex(K)
    hom = C.homology_all()
    details = []
    by_degree = {}
    for e in entries:
        by_degree.setdefault(e.chain.degree, []).append(e)
    ok = True
    degrees = set(by_degree) | {d for d in hom if d > 0}
    for d in sorted(degrees):
        group = hom.get(d, HomologyGroup(0))
        if group.torsion:
            ok = False
            details.append(f"degree {d}: torsion {group.torsion} present")
            continue
        rows = []
        for e in by_degree.get(d, ()):
            cls = C.class_of(d, e.chain.terms)
            if any(o != 0 for o in cls.orders):
                ok = False
                details.append(f"degree {d}: unexpected torsion coordinate")
            rows.append(cls.coords)
        if len(rows) != group.rank:
            ok = False
            details.append(
                f"degree {d}: {len(rows)} chains against rank {group.rank}")
            continue
        if not rows:
            continue
        M = IntMatrix.from_rows([list(r) for r in rows])
        facs = invariant_factors(M)
        if len(facs) != group.rank or any(f != 1 for f in facs):
            ok = False
            details.append(f"degree {d}: invariant factors {facs}")
    return WedgeBasis(tuple(entries), ok, hom, tuple(details))


def shifted_wedge_basis(K, order=None):
    """Whitehead wedge basis of a shifted complex.

    For every vertex subset J, each missing face of K_J containing the
    order-maximal vertex of J contributes the nested product
    [[...[[mu_I], mu_j1]...], mu_jq] over J - I; the verdict certifies the
    emitted chains as a Z-basis of H_*(Z_K).
    """
    res = cx.is_shifted(K, order)
    if not res:
        raise ValueError("K is not shifted" if order is None
                         else "K is not shifted for the given order")
    witness = res.witnesses[0]
    rank = {v: i for i, v in enumerate(witness)}
    entries = []
    for k in range(1, K.m + 1):
        for J in combinations(range(1, K.m + 1), k):
            top = max(J, key=lambda v: rank[v])
            for I in _subset_missing_faces(K, J):
                if top not in I:
                    continue
                rest = tuple(v for v in J if v not in set(I))
                expr = _nested_entry(I, rest)
                entries.append(WedgeEntry(J, I, expr, hurewicz_chain(expr)))
    return _basis_verdict(K, entries)


def fillable_wedge_basis(K, fillings):
    """Wedge basis from fillings: fillings maps a subset J to missing faces
    of K_J whose addition makes K_J acyclic over the integers (the computable
    stand-in for contractibility; certified only at homology level)."""
    fillings = {tuple(sorted(J)): tuple(cx.face(f) for f in fs)
                for J, fs in fillings.items()}
    entries = []
    for k in range(1, K.m + 1):
        for J in combinations(range(1, K.m + 1), k):
            fill = fillings.get(J, ())
            mfs = set(_subset_missing_faces(K, J))
            for f in fill:
                if f not in mfs:
                    raise ValueError(f"{f} is not a missing face of K_{J}")
            filled = list(K.faces_within(J)) + list(fill)
            if not cx.is_acyclic(filled):
                raise ValueError(
                    f"filling for J={J} is not acyclic over the integers")
            for I in fill:
                rest = tuple(v for v in J if v not in set(I))
                expr = _nested_entry(I, rest)
                entries.append(WedgeEntry(J, I, expr, hurewicz_chain(expr)))
    return _basis_verdict(K, entries)
