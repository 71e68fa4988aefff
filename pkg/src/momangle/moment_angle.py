"""Cellular chains of the moment-angle complex Z_K and the Hochster splitting.

Cells of Z_K are pairs kappa(J, I) of disjoint vertex subsets with I a face
of K: I marks disc factors (degree 2 each), J marks circle factors (degree
1 each).  The boundary mirrors the Koszul differential with ascending
exterior letters:

    d kappa(J, I) = sum over i in I of (-1)^{#{j in J : j < i}}
                    kappa(J + {i}, I - {i}).

Products of cell chains concatenate letters and sort them by vertex; only
the odd (circle) letters contribute signs, by the usual Koszul rule.  These
two conventions together make the Hochster embedding below an honest chain
map and reproduce the canonical bracket chains with a plus sign.
"""

from __future__ import annotations

import re
from functools import lru_cache
from itertools import combinations

from .complexes import SizeLimitError, reduced_chain_complex
from .exactalg import ChainComplex, IntMatrix, direct_sum

ZK_MAX_VERTICES = 24


def cell_degree(cell):
    J, I = cell
    return 2 * len(I) + len(J)


def cell_boundary(cell):
    """Boundary of a single cell as {cell: coeff}."""
    J, I = cell
    out = {}
    for i in I:
        sign = -1 if sum(1 for j in J if j < i) % 2 else 1
        out[(tuple(sorted(J + (i,))), tuple(x for x in I if x != i))] = sign
    return out


class CellChain:
    """Homogeneous sparse integer combination of cells of (D^2)^m."""

    __slots__ = ("terms", "degree")

    def __init__(self, terms):
        self.terms = {}
        degree = None
        for cell, c in terms.items():
            if not c:
                continue
            J, I = tuple(cell[0]), tuple(cell[1])
            if set(J) & set(I):
                raise ValueError(f"cell {cell} has overlapping S and D sets")
            d = cell_degree((J, I))
            if degree is None:
                degree = d
            elif degree != d:
                raise ValueError("cell chain is not homogeneous")
            self.terms[(J, I)] = int(c)
        self.degree = degree if degree is not None else 0

    @classmethod
    def zero(cls):
        return cls({})

    @classmethod
    def unit(cls):
        return cls({((), ()): 1})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, CellChain) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __neg__(self):
        return CellChain({c: -v for c, v in self.terms.items()})

    def __add__(self, other):
        out = dict(self.terms)
        for c, v in other.terms.items():
            out[c] = out.get(c, 0) + v
        return CellChain(out)

    def __sub__(self, other):
        return self + (-other)

    def scaled(self, k):
        return CellChain({c: k * v for c, v in self.terms.items()})

    def support(self):
        verts = set()
        for J, I in self.terms:
            verts.update(J), verts.update(I)
        return tuple(sorted(verts))

    def boundary(self):
        out = {}
        for cell, c in self.terms.items():
            for tgt, s in cell_boundary(cell).items():
                out[tgt] = out.get(tgt, 0) + c * s
        return CellChain(out)

    def product(self, other):
        """Concatenation product; factors must have disjoint vertex support.

        Sign: sort the concatenated letters by vertex; each transposition of
        two circle letters contributes -1 (disc letters are even)."""
        out = {}
        for (J1, I1), c1 in self.terms.items():
            for (J2, I2), c2 in other.terms.items():
                if (set(J1) | set(I1)) & (set(J2) | set(I2)):
                    raise ValueError("product factors share a vertex")
                inv = sum(1 for a in J1 for b in J2 if b < a)
                sign = -1 if inv % 2 else 1
                cell = (tuple(sorted(J1 + J2)), tuple(sorted(I1 + I2)))
                out[cell] = out.get(cell, 0) + sign * c1 * c2
        return CellChain(out)

    def supported_in(self, K):
        return all(I in K for _, I in self.terms)

    # -- text form ------------------------------------------------------------

    def to_text(self):
        if not self.terms:
            return "0"
        bits = []
        for (J, I), c in sorted(self.terms.items(), key=lambda t: (t[0][1], t[0][0])):
            word = "*".join(("D%d" % v if v in set(I) else "S%d" % v)
                            for v in sorted(J + I)) or "1"
            if c == 1:
                term = word
            elif c == -1:
                term = "-" + word
            else:
                term = f"{c}*{word}"
            bits.append(term)
        text = " + ".join(bits)
        return text.replace("+ -", "- ")

    @classmethod
    def from_text(cls, text):
        """Parse a signed sum of S/D words; letters may appear in any order,
        reordering circle letters flips the sign by the Koszul rule."""
        out = {}
        for sign, term in _signed_terms(text):
            coeff, letters = _parse_cell_word(term)
            svs = [v for kind, v in letters if kind == "S"]
            inv = sum(1 for a in range(len(svs)) for b in range(a + 1, len(svs))
                      if svs[a] > svs[b])
            if inv % 2:
                sign = -sign
            J = tuple(sorted(v for kind, v in letters if kind == "S"))
            I = tuple(sorted(v for kind, v in letters if kind == "D"))
            if len(J) + len(I) != len(letters):
                raise ValueError(f"repeated vertex in term {term!r}")
            cell = (J, I)
            out[cell] = out.get(cell, 0) + sign * coeff
        return cls(out)

    def __repr__(self):
        return f"CellChain({self.to_text()})"


def _signed_terms(text):
    text = text.strip()
    if not text or text == "0":
        return
    for match in re.finditer(r"([+-]?)\s*([^+-]+)", text):
        sign = -1 if match.group(1) == "-" else 1
        term = match.group(2).strip()
        if term:
            yield sign, term


def _parse_cell_word(term):
    coeff = 1
    letters = []
    for factor in term.split("*"):
        factor = factor.strip()
        if not factor:
            raise ValueError(f"empty factor in {term!r}")
        if factor[0] in "SD":
            letters.append((factor[0], int(factor[1:])))
        elif factor == "1":
            continue
        else:
            coeff *= int(factor)
    return coeff, letters


# -- the chain complex of Z_K -------------------------------------------------

@lru_cache(maxsize=None)
def zk_cells(K):
    """All cells kappa(J, I) with I in K, grouped by degree."""
    if K.m > ZK_MAX_VERTICES:
        raise SizeLimitError(f"Z_K cell enumeration refuses m={K.m} > {ZK_MAX_VERTICES}")
    by_degree = {}
    for I in sorted(K.faces, key=lambda f: (len(f), f)):
        rest = [v for v in range(1, K.m + 1) if v not in set(I)]
        for k in range(len(rest) + 1):
            for J in combinations(rest, k):
                by_degree.setdefault(2 * len(I) + k, []).append((J, I))
    for d in by_degree:
        by_degree[d].sort()
    return by_degree


@lru_cache(maxsize=None)
def zk_chain_complex(K):
    """Cellular chain complex of Z_K (degree of kappa(J,I) is 2|I|+|J|)."""
    if not K.has_all_singletons():
        raise ValueError("Z_K needs every singleton to be a face")
    cells = zk_cells(K)
    basis = {d: list(cs) for d, cs in cells.items()}
    index = {d: {c: i for i, c in enumerate(cs)} for d, cs in basis.items()}
    diffs = {}
    for d, cs in basis.items():
        if d - 1 not in basis:
            continue
        below = index[d - 1]
        entries = {}
        for j, cell in enumerate(cs):
            for tgt, s in cell_boundary(cell).items():
                i = below.get(tgt)
                if i is not None:
                    entries[(i, j)] = s
        diffs[d] = IntMatrix(len(basis[d - 1]), len(cs), entries)
    return ChainComplex(basis, diffs)


def zk_homology(K):
    """Integral homology of Z_K by the cellular route, degree -> group."""
    return zk_chain_complex(K).homology_all()


def reduced_ranks(homology):
    """Positive-degree ranks only, the usual wedge-of-spheres fingerprint."""
    return {d: h.rank for d, h in homology.items() if d > 0 and h.rank}


def zk_class(K, chain):
    """Homology class of a cellular cycle in Z_K."""
    C = zk_chain_complex(K)
    return C.class_of(chain.degree, chain.terms)


# -- Hochster decomposition -----------------------------------------------------

def shuffle_sign(L, J):
    """Sign attached to a simplex L inside the subset J.

    This is the sign of the shuffle sorting (J-L, L) into J, twisted by
    (-1)^(q(q-1)/2) with q = |J-L|.  The twist is what makes the embedding
    of simplicial chains a chain map against the cellular boundary above; it
    is +1 whenever L fills all of J.
    """
    Lset = set(L)
    rest = [j for j in J if j not in Lset]
    inv = sum(1 for l in L for j in rest if l < j)
    q = len(rest)
    return -1 if (inv + q * (q - 1) // 2) % 2 else 1


def hochster_embed(K, J, simplicial_chain):
    """Embed a simplicial chain on K_J into the cellular chains of Z_K:
    L -> shuffle_sign(L, J) * kappa(J - L, L).

    The chain is keyed by faces of K_J in the original labels; a simplex of
    simplicial degree p-1 lands in cellular degree p + |J|."""
    J = tuple(sorted(set(J)))
    Jset = set(J)
    out = {}
    for L, c in simplicial_chain.items():
        if not c:
            continue
        L = tuple(sorted(L))
        if not set(L) <= Jset:
            raise ValueError(f"simplex {L} is not inside J={J}")
        if L not in K:
            raise ValueError(f"support {L} is not a face of K_J")
        cell = (tuple(j for j in J if j not in set(L)), L)
        out[cell] = out.get(cell, 0) + shuffle_sign(L, J) * c
    return CellChain(out)


def hochster_table(K, subsets=None):
    """Reduced homology of every full subcomplex, placed into Z_K degrees.

    Returns (per_subset, aggregate): per_subset maps (J, degree) to the
    group contributed by K_J (simplicial degree p-1 sits in degree p+|J|),
    aggregate direct-sums the contributions per degree.  J = the empty set
    contributes the basepoint class in degree 0.
    """
    if K.m > 20:
        raise SizeLimitError(f"Hochster table refuses m={K.m} > 20")
    if subsets is None:
        subsets = []
        verts = range(1, K.m + 1)
        for k in range(K.m + 1):
            subsets.extend(combinations(verts, k))
    per_subset = {}
    aggregate = {}
    for J in subsets:
        J = tuple(sorted(J))
        hom = reduced_chain_complex(K.faces_within(J)).homology_all()
        for d, h in hom.items():
            degree = d + len(J) + 1
            per_subset[(J, degree)] = h
            aggregate[degree] = direct_sum(aggregate.get(degree), h)
    return per_subset, aggregate


