"""Sparse exact integer linear algebra.

Everything here runs over arbitrary-precision Python integers: Smith normal
form with unimodular transforms, integer linear solving, and homology of
integer chain complexes (rank plus invariant-factor torsion).  No modular or
floating-point shortcuts anywhere; torsion correctness depends on it.

Conventions:
  * matrices are sparse maps (row, col) -> nonzero int;
  * chain complexes are graded homologically, the differential lowers the
    degree by one; cohomological data must be re-indexed by negation before
    it enters this module.
"""

from __future__ import annotations

from dataclasses import dataclass


class IntMatrix:
    """Sparse integer matrix; zero entries are never stored."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows, cols, entries=None):
        self.rows = rows
        self.cols = cols
        self.entries = {}
        if entries:
            for (i, j), v in entries.items() if isinstance(entries, dict) else entries:
                if not (0 <= i < rows and 0 <= j < cols):
                    raise ValueError(f"entry ({i},{j}) outside {rows}x{cols}")
                if v:
                    self.entries[(i, j)] = int(v)

    @classmethod
    def identity(cls, n):
        return cls(n, n, {(i, i): 1 for i in range(n)})

    @classmethod
    def zero(cls, rows, cols):
        return cls(rows, cols)

    @classmethod
    def from_rows(cls, rows_data):
        rows = len(rows_data)
        cols = len(rows_data[0]) if rows else 0
        return cls(rows, cols, {(i, j): v for i, row in enumerate(rows_data)
                                for j, v in enumerate(row) if v})

    def __getitem__(self, key):
        return self.entries.get(key, 0)

    def __eq__(self, other):
        return (isinstance(other, IntMatrix) and self.rows == other.rows
                and self.cols == other.cols and self.entries == other.entries)

    def __hash__(self):
        return hash((self.rows, self.cols, frozenset(self.entries.items())))

    def is_zero(self):
        return not self.entries

    def nnz(self):
        return len(self.entries)

    def transpose(self):
        return IntMatrix(self.cols, self.rows,
                         {(j, i): v for (i, j), v in self.entries.items()})

    def __matmul__(self, other):
        if isinstance(other, IntMatrix):
            if self.cols != other.rows:
                raise ValueError("dimension mismatch")
            by_row = {}
            for (i, k), v in self.entries.items():
                by_row.setdefault(i, []).append((k, v))
            other_rows = {}
            for (k, j), w in other.entries.items():
                other_rows.setdefault(k, []).append((j, w))
            out = {}
            for i, terms in by_row.items():
                acc = {}
                for k, v in terms:
                    for j, w in other_rows.get(k, ()):
                        acc[j] = acc.get(j, 0) + v * w
                for j, s in acc.items():
                    if s:
                        out[(i, j)] = s
            return IntMatrix(self.rows, other.cols, out)
        return NotImplemented

    def apply(self, vec):
        """Multiply by a sparse column vector {index: value}."""
        out = {}
        for (i, j), v in self.entries.items():
            w = vec.get(j)
            if w:
                out[i] = out.get(i, 0) + v * w
        return {i: v for i, v in out.items() if v}

    def column(self, j):
        return {i: v for (i, jj), v in self.entries.items() if jj == j}

    def to_dense(self):
        rows = [[0] * self.cols for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            rows[i][j] = v
        return rows

    def to_triplets(self):
        """Sorted sparse-triplet form, handy for JSON debugging dumps."""
        return sorted([i, j, v] for (i, j), v in self.entries.items())

    def __repr__(self):
        return f"IntMatrix({self.rows}x{self.cols}, nnz={self.nnz()})"


@dataclass(frozen=True)
class SmithForm:
    """U @ A @ V == S with U, V unimodular; diag holds the invariant factors.

    ``vinv`` is V**-1, tracked during elimination; it converts vectors into
    the V-basis, which is what kernel-coordinate extraction needs.
    """

    S: IntMatrix
    U: IntMatrix
    V: IntMatrix
    vinv: IntMatrix
    diag: tuple

    @property
    def rank(self):
        return len(self.diag)

    def kernel_columns(self):
        """Indices j with S[j,j] absent or zero: V's columns there span ker A."""
        return list(range(self.rank, self.V.cols))


class _SnfWorker:
    """Row/column elimination state for the Smith normal form.

    Pivot rule: smallest nonzero magnitude, ties broken by (row, col); this
    fixes the transforms and therefore every canonical solution downstream.
    """

    def __init__(self, A, transforms=True):
        self.m, self.n = A.rows, A.cols
        self.a = {}
        self.colind = {}
        for (i, j), v in A.entries.items():
            self.a.setdefault(i, {})[j] = v
            self.colind.setdefault(j, set()).add(i)
        self.transforms = transforms
        if transforms:
            self.u = {i: {i: 1} for i in range(self.m)}     # rows of U
            self.v = {j: {j: 1} for j in range(self.n)}     # columns of V
            self.vinv = {j: {j: 1} for j in range(self.n)}  # rows of V^-1

    # -- elementary operations (mirrored into the transforms) --------------

    def _set(self, i, j, val):
        row = self.a.setdefault(i, {})
        if val:
            row[j] = val
            self.colind.setdefault(j, set()).add(i)
        else:
            if j in row:
                del row[j]
                self.colind[j].discard(i)

    def row_swap(self, i, k):
        if i == k:
            return
        ri, rk = self.a.get(i, {}), self.a.get(k, {})
        for j in set(ri) | set(rk):
            s = self.colind[j]
            s.discard(i), s.discard(k)
        self.a[i], self.a[k] = rk, ri
        for j in self.a[i]:
            self.colind[j].add(i)
        for j in self.a[k]:
            self.colind[j].add(k)
        if self.transforms:
            self.u[i], self.u[k] = self.u[k], self.u[i]

    def row_addmul(self, i, k, q):
        """row_i += q * row_k."""
        if not q:
            return
        for j, v in list(self.a.get(k, {}).items()):
            self._set(i, j, self.a.get(i, {}).get(j, 0) + q * v)
        if self.transforms:
            ui = self.u[i]
            for j, v in self.u[k].items():
                w = ui.get(j, 0) + q * v
                if w:
                    ui[j] = w
                elif j in ui:
                    del ui[j]

    def row_negate(self, i):
        for j, v in self.a.get(i, {}).items():
            self.a[i][j] = -v
        if self.transforms:
            self.u[i] = {j: -v for j, v in self.u[i].items()}

    def col_swap(self, j, k):
        if j == k:
            return
        rows = self.colind.get(j, set()) | self.colind.get(k, set())
        for i in rows:
            row = self.a[i]
            vj, vk = row.get(j, 0), row.get(k, 0)
            self._set(i, j, vk)
            self._set(i, k, vj)
        if self.transforms:
            self.v[j], self.v[k] = self.v[k], self.v[j]
            self.vinv[j], self.vinv[k] = self.vinv[k], self.vinv[j]

    def col_addmul(self, j, k, q):
        """col_j += q * col_k; V gets the same op, V^-1 the inverse row op."""
        if not q:
            return
        for i in list(self.colind.get(k, set())):
            v = self.a[i].get(k, 0)
            self._set(i, j, self.a[i].get(j, 0) + q * v)
        if self.transforms:
            vj = self.v[j]
            for i, v in self.v[k].items():
                w = vj.get(i, 0) + q * v
                if w:
                    vj[i] = w
                elif i in vj:
                    del vj[i]
            # (I + q E_{kj})^-1 = I - q E_{kj}: row_k of V^-1 -= q * row_j
            rk = self.vinv[k]
            for jj, v in self.vinv[j].items():
                w = rk.get(jj, 0) - q * v
                if w:
                    rk[jj] = w
                elif jj in rk:
                    del rk[jj]

    def col_negate(self, j):
        for i in self.colind.get(j, set()):
            self.a[i][j] = -self.a[i][j]
        if self.transforms:
            self.v[j] = {i: -v for i, v in self.v[j].items()}
            self.vinv[j] = {jj: -v for jj, v in self.vinv[j].items()}

    # -- the algorithm ------------------------------------------------------

    def find_pivot(self, t):
        best = None
        for i, row in self.a.items():
            if i < t or not row:
                continue
            for j, v in row.items():
                if j < t:
                    continue
                key = (abs(v), i, j)
                if best is None or key < best:
                    best = key
        return None if best is None else (best[1], best[2])

    def run(self):
        diag = []
        t = 0
        limit = min(self.m, self.n)
        while t < limit:
            pos = self.find_pivot(t)
            if pos is None:
                break
            self.row_swap(t, pos[0])
            self.col_swap(t, pos[1])
            if self.a[t][t] < 0:
                self.row_negate(t)
            while True:
                p = self.a[t][t]
                dirty = False
                for i in sorted(self.colind.get(t, set())):
                    if i == t:
                        continue
                    q = self.a[i][t] // p
                    self.row_addmul(i, t, -q)
                    if self.a.get(i, {}).get(t):
                        dirty = True
                for j in sorted(self.a.get(t, {})):
                    if j == t:
                        continue
                    q = self.a[t][j] // p
                    self.col_addmul(j, t, -q)
                    if self.a[t].get(j):
                        dirty = True
                if dirty:
                    # a remainder smaller than the pivot appeared; adopt it
                    pos = self.find_pivot(t)
                    self.row_swap(t, pos[0])
                    self.col_swap(t, pos[1])
                    if self.a[t][t] < 0:
                        self.row_negate(t)
                    continue
                # pivot must divide everything that remains
                p = self.a[t][t]
                offender = None
                for i, row in self.a.items():
                    if i <= t:
                        continue
                    for j, v in row.items():
                        if j > t and v % p:
                            offender = (i, j) if offender is None else min(offender, (i, j))
                if offender is None:
                    break
                self.row_addmul(t, offender[0], 1)
            diag.append(self.a[t][t])
            t += 1
        return diag

    def result(self):
        diag = self.run()
        S = IntMatrix(self.m, self.n,
                      {(t, t): d for t, d in enumerate(diag) if d})
        if not self.transforms:
            return SmithForm(S, None, None, None, tuple(diag))
        U = IntMatrix(self.m, self.m, {(i, j): v for i, row in self.u.items()
                                       for j, v in row.items()})
        V = IntMatrix(self.n, self.n, {(i, j): v for j, col in self.v.items()
                                       for i, v in col.items()})
        vinv = IntMatrix(self.n, self.n, {(i, j): v for i, row in self.vinv.items()
                                          for j, v in row.items()})
        return SmithForm(S, U, V, vinv, tuple(diag))


def smith_normal_form(A, transforms=True):
    """Smith normal form of an integer matrix.

    Returns a SmithForm with U @ A @ V == S, the diagonal of S being the
    invariant factors in divisibility order.  With transforms=False only the
    diagonal is computed (faster; U, V, vinv are None).
    """
    return _SnfWorker(A, transforms).result()


def invariant_factors(A):
    """Nonzero invariant factors of A (rank-many entries)."""
    return [d for d in smith_normal_form(A, transforms=False).diag if d]


def solve_integer(A, b):
    """One integer solution x of A x = b, or None when none exists.

    b is a sparse vector {row: value}.  The returned solution is canonical:
    its coordinates along the kernel columns of the SNF transform are zero,
    so repeated runs are reproducible bit for bit.
    """
    for i in b:
        if not 0 <= i < A.rows:
            raise ValueError("vector index outside matrix rows")
    snf = smith_normal_form(A)
    c = snf.U.apply(b)
    y = {}
    for t, d in enumerate(snf.diag):
        ct = c.pop(t, 0)
        if d == 0:
            if ct:
                return None
            continue
        if ct % d:
            return None
        if ct:
            y[t] = ct // d
    if any(c.values()):
        return None
    return snf.V.apply(y)


def kernel_basis(A):
    """Columns spanning ker A; the basis is saturated (spans all of the
    integer kernel) because it consists of columns of a unimodular matrix."""
    snf = smith_normal_form(A)
    return [snf.V.column(j) for j in snf.kernel_columns()]


@dataclass(frozen=True)
class HomologyGroup:
    """rank + multiset of invariant factors > 1, each dividing the next."""

    rank: int
    torsion: tuple = ()

    def __post_init__(self):
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError("invariant factors must divide successively")

    def is_trivial(self):
        return self.rank == 0 and not self.torsion

    def __str__(self):
        parts = []
        if self.rank == 1:
            parts.append("Z")
        elif self.rank > 1:
            parts.append(f"Z^{self.rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"


TRIVIAL_GROUP = HomologyGroup(0, ())


def _factorise(n):
    out = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def direct_sum(a, b):
    """Direct sum of homology groups, re-normalised to invariant factors."""
    if a is None:
        return b
    if b is None:
        return a
    primary = {}
    for group in (a, b):
        for f in group.torsion:
            for p, e in _factorise(f).items():
                primary.setdefault(p, []).append(e)
    chains = []
    for p, exps in primary.items():
        exps.sort(reverse=True)
        for k, e in enumerate(exps):
            while len(chains) <= k:
                chains.append(1)
            chains[k] *= p ** e
    chains.sort()
    return HomologyGroup(a.rank + b.rank, tuple(chains))


@dataclass(frozen=True)
class HomologyClass:
    """Coordinates of a cycle's class in the SNF-derived presentation.

    orders[i] == 0 marks a free coordinate, otherwise coords[i] lives in
    Z/orders[i] (already reduced).  Coordinates of invariant factor 1 are
    dropped.  The class is a boundary exactly when every coordinate is zero.
    """

    coords: tuple
    orders: tuple

    @property
    def is_boundary(self):
        return all(c == 0 for c in self.coords)


class ChainComplex:
    """Finite complex of free Z-modules with labelled bases.

    basis: {degree: [label, ...]}; differentials: {degree d: IntMatrix}
    mapping C_d -> C_{d-1} in the bases' label order.  d(d(x)) = 0 is verified
    at construction.
    """

    def __init__(self, basis, differentials, check=True):
        self.basis = {d: list(labels) for d, labels in basis.items()}
        self.index = {d: {lab: i for i, lab in enumerate(labels)}
                      for d, labels in self.basis.items()}
        self.differentials = dict(differentials)
        self._present = {}
        for d, A in self.differentials.items():
            if A.cols != len(self.basis.get(d, ())):
                raise ValueError(f"differential at degree {d}: bad column count")
            if A.rows != len(self.basis.get(d - 1, ())):
                raise ValueError(f"differential at degree {d}: bad row count")
        if check:
            self.check_squares_to_zero()

    @property
    def degrees(self):
        return sorted(self.basis)

    def dim(self, d):
        return len(self.basis.get(d, ()))

    def differential(self, d):
        A = self.differentials.get(d)
        if A is None:
            A = IntMatrix.zero(self.dim(d - 1), self.dim(d))
        return A

    def check_squares_to_zero(self):
        for d in self.degrees:
            if self.dim(d) and self.dim(d - 1) and self.dim(d - 2):
                if not (self.differential(d - 1) @ self.differential(d)).is_zero():
                    raise ValueError(f"d^2 != 0 between degrees {d} and {d-2}")

    def vector(self, d, chain):
        """Sparse coordinate vector of {label: coeff} in the degree-d basis."""
        idx = self.index.get(d, {})
        out = {}
        for lab, c in chain.items():
            if not c:
                continue
            if lab not in idx:
                raise KeyError(f"label {lab!r} not in degree {d} basis")
            out[idx[lab]] = c
        return out

    def chain_from_vector(self, d, vec):
        labels = self.basis.get(d, [])
        return {labels[i]: v for i, v in vec.items() if v}

    def boundary_vector(self, d, chain):
        return self.differential(d).apply(self.vector(d, chain))

    def is_cycle(self, d, chain):
        return not self.boundary_vector(d, chain)

    def homology(self, d):
        """H_d as rank plus torsion; degrees outside the range give 0."""
        if not self.dim(d):
            return TRIVIAL_GROUP
        rank_out = len(invariant_factors(self.differential(d)))
        facs = invariant_factors(self.differential(d + 1))
        rank = self.dim(d) - rank_out - len(facs)
        torsion = tuple(f for f in facs if f > 1)
        return HomologyGroup(rank, torsion)

    def homology_all(self, nontrivial_only=True):
        out = {}
        for d in self.degrees:
            h = self.homology(d)
            if h.is_trivial() and nontrivial_only:
                continue
            out[d] = h
        return out

    # -- cycle classes ------------------------------------------------------

    def _presentation(self, d):
        """Cached kernel basis + presentation of H_d used for coordinates."""
        if d in self._present:
            return self._present[d]
        A = self.differential(d)
        B = self.differential(d + 1)
        snf_a = smith_normal_form(A)
        kcols = snf_a.kernel_columns()
        kpos = {j: t for t, j in enumerate(kcols)}
        # image columns expressed in kernel coordinates
        x_entries = {}
        for j in range(B.cols):
            col = snf_a.vinv.apply(B.column(j))
            for i, v in col.items():
                if i in kpos:
                    x_entries[(kpos[i], j)] = v
                elif v:
                    raise AssertionError("image column escapes the kernel")
        X = IntMatrix(len(kcols), B.cols, x_entries)
        snf_x = smith_normal_form(X)
        orders = []
        for t in range(len(kcols)):
            dt = snf_x.diag[t] if t < len(snf_x.diag) else 0
            orders.append(dt)
        data = (snf_a, kpos, snf_x, tuple(orders))
        self._present[d] = data
        return data

    def class_of(self, d, chain):
        """Coordinates of [chain] in H_d; raises if chain is not a cycle."""
        vec = self.vector(d, chain)
        if self.differential(d).apply(vec):
            raise ValueError("chain is not a cycle")
        snf_a, kpos, snf_x, orders = self._presentation(d)
        w = {}
        for i, v in snf_a.vinv.apply(vec).items():
            if i in kpos:
                w[kpos[i]] = v
            elif v:
                raise AssertionError("cycle escapes the kernel")
        u = snf_x.U.apply(w)
        coords, kept = [], []
        for t, order in enumerate(orders):
            c = u.get(t, 0)
            if order == 1:
                continue
            coords.append(c % order if order else c)
            kept.append(order)
        return HomologyClass(tuple(coords), tuple(kept))

    def is_boundary(self, d, chain):
        return self.class_of(d, chain).is_boundary


def class_in_homology(complex_, chain, degree):
    """Module-level face of ChainComplex.class_of (coordinates + flag)."""
    return complex_.class_of(degree, chain)
