"""Finite-dimensional associative unital algebras given by structure constants.

An Algebra stores, for each pair of basis elements (e_i, e_j), the
coordinate vector of the product e_i * e_j.  Construction validates
associativity and the unit law exactly, so a structure-constant bug in any
constructor fails loudly rather than corrupting downstream homology.

Conventions
-----------
* Products compose like functions: p * q means "apply q first, then p".
  For a path algebra, a path is stored as a sequence of arrows in
  application order, and relation files list arrow labels in composition
  order (["a", "b"] denotes a∘b, i.e. b followed by a).
* The Jacobson radical is computed generically for every algebra: over Q
  as the kernel of the trace bilinear form of the regular representation,
  over F_p by the p-th-power trace refinement of that form.  Algebras
  built by the constructors here also carry a closed-form radical, and the
  two are asserted to agree.
* Primitive orthogonal idempotents are carried only when a constructor
  can certify them (quiver vertices, matrix units, local algebras, ...)
  or when the caller supplies them; they are never searched for.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from .errors import (
    InfiniteDimensional,
    InputShapeError,
    MalformedRelation,
    NotAGroup,
    PropertyViolation,
    UnsupportedAlgebra,
)
from .exactlin import FieldSpec, Mat, rref

Vector = tuple


class Algebra:
    """A finite-dimensional associative unital algebra over FieldSpec.

    table[i][j] is the coordinate vector of e_i * e_j.
    """

    def __init__(
        self,
        field: FieldSpec,
        basis_labels: Sequence[str],
        table,
        unit,
        idempotents=None,
        provenance: Optional[dict] = None,
        _closed_radical=None,
        _skip_validation: bool = False,
    ):
        self.field = field
        self.dim = len(basis_labels)
        self.basis_labels = tuple(basis_labels)
        self.table = tuple(
            tuple(tuple(field.coerce(x) for x in cell) for cell in row) for row in table
        )
        self.unit = tuple(field.coerce(x) for x in unit)
        self.idempotents = (
            tuple(tuple(field.coerce(x) for x in e) for e in idempotents)
            if idempotents is not None
            else None
        )
        self.provenance = provenance or {}
        self._closed_radical = _closed_radical
        self._lock = threading.Lock()
        self._cache: dict = {}

        if self.dim == 0:
            raise InputShapeError("algebras must be unital, dim >= 1")
        if len(self.table) != self.dim or any(len(r) != self.dim for r in self.table):
            raise InputShapeError("structure table must be dim x dim")
        if any(len(cell) != self.dim for row in self.table for cell in row):
            raise InputShapeError("structure constants must be vectors of length dim")
        if len(self.unit) != self.dim:
            raise InputShapeError("unit vector has wrong length")

        self._nz = tuple(
            tuple(tuple((k, c) for k, c in enumerate(cell) if c != 0) for cell in row)
            for row in self.table
        )
        if not _skip_validation:
            self._validate()

    # -- element arithmetic ---------------------------------------------------

    def zero_vec(self) -> Vector:
        return tuple(self.field.zero() for _ in range(self.dim))

    def basis_vec(self, i: int) -> Vector:
        z = self.field.zero()
        return tuple(self.field.one() if j == i else z for j in range(self.dim))

    def mul_vec(self, v, w) -> Vector:
        p = self.field.characteristic
        acc = [self.field.zero()] * self.dim
        for i, a in enumerate(v):
            if a == 0:
                continue
            row = self._nz[i]
            for j, b in enumerate(w):
                if b == 0:
                    continue
                ab = a * b
                for k, c in row[j]:
                    acc[k] += ab * c
        if p:
            return tuple(x % p for x in acc)
        return tuple(acc)

    def left_mult_matrix(self, v) -> Mat:
        """Matrix of x -> v*x in the basis (column j is v*e_j)."""
        cols = [self.mul_vec(v, self.basis_vec(j)) for j in range(self.dim)]
        return Mat.from_cols(self.field, cols)

    def right_mult_matrix(self, v) -> Mat:
        """Matrix of x -> x*v in the basis (column j is e_j*v)."""
        cols = [self.mul_vec(self.basis_vec(j), v) for j in range(self.dim)]
        return Mat.from_cols(self.field, cols)

    # -- validation -----------------------------------------------------------

    def _validate(self):
        for i in range(self.dim):
            e_i = self.basis_vec(i)
            if self.mul_vec(self.unit, e_i) != e_i or self.mul_vec(e_i, self.unit) != e_i:
                raise PropertyViolation(f"unit law fails at basis element {self.basis_labels[i]}")
        for i in range(self.dim):
            for j in range(self.dim):
                ij = self.table[i][j]
                for k in range(self.dim):
                    lhs = self.mul_vec(ij, self.basis_vec(k))
                    rhs = self.mul_vec(self.basis_vec(i), self.table[j][k])
                    if lhs != rhs:
                        raise PropertyViolation(
                            f"associativity fails at ({self.basis_labels[i]}, "
                            f"{self.basis_labels[j]}, {self.basis_labels[k]})"
                        )
        if self.idempotents is not None:
            self._validate_idempotents()

    def _validate_idempotents(self):
        total = self.zero_vec()
        for a, e in enumerate(self.idempotents):
            if self.mul_vec(e, e) != tuple(e):
                raise PropertyViolation(f"idempotent {a} is not idempotent")
            for b, f in enumerate(self.idempotents):
                if a != b and any(x != 0 for x in self.mul_vec(e, f)):
                    raise PropertyViolation(f"idempotents {a}, {b} are not orthogonal")
            total = tuple(self.field.add(x, y) for x, y in zip(total, e))
        if total != self.unit:
            raise PropertyViolation("idempotents do not sum to the unit")

    # -- identity and comparison ----------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, Algebra)
            and self.field == other.field
            and self.dim == other.dim
            and self.table == other.table
            and self.unit == other.unit
        )

    def __hash__(self):
        return hash((self.field, self.dim, self.unit))

    def __repr__(self):
        return f"Algebra(dim={self.dim}, field={self.field}, kind={self.provenance.get('kind', '?')})"

    # -- cached structure -----------------------------------------------------

    def _get_cached(self, key, builder):
        with self._lock:
            if key in self._cache:
                return self._cache[key]
        value = builder()
        with self._lock:
            return self._cache.setdefault(key, value)

    def radical_basis(self) -> Mat:
        """Columns spanning the Jacobson radical.

        Generic computation always runs; when a constructor supplied a
        closed-form radical the two are asserted to span the same
        subspace and the closed form (deterministic basis) is returned.
        """
        return self._get_cached("radical", self._compute_radical)

    def _compute_radical(self) -> Mat:
        generic = _radical_generic(self)
        if self._closed_radical is not None:
            closed = self._closed_radical
            if not _same_column_space(closed, generic):
                raise PropertyViolation(
                    "closed-form radical disagrees with the generic trace computation"
                )
            return closed
        return generic

    def primitive_idempotents(self):
        return self.idempotents

    def is_local(self) -> bool:
        return self.dim - self.radical_basis().cols == 1

    def opposite(self) -> "Algebra":
        def build():
            table = [[self.table[j][i] for j in range(self.dim)] for i in range(self.dim)]
            op = Algebra(
                self.field,
                self.basis_labels,
                table,
                self.unit,
                idempotents=self.idempotents,
                provenance={"kind": "opposite", "of": self.provenance.get("kind", "?")},
                _closed_radical=self._closed_radical,
            )
            op._cache["opposite"] = self
            return op

        return self._get_cached("opposite", build)


def _same_column_space(a: Mat, b: Mat) -> bool:
    ra = rref(a.transpose()).rank if a.cols else 0
    rb = rref(b.transpose()).rank if b.cols else 0
    if ra != rb:
        return False
    joint = rref(a.hstack(b).transpose()).rank
    return joint == ra


def _radical_generic(a: Algebra) -> Mat:
    """Kernel of the trace form over Q; the p-power trace refinement over F_p.

    Over F_p the chain V_0 = A, V_{i+1} = {x in V_i : g_i(x*y) = 0 for all
    y}, with g_i(z) = Tr(Z^(p^i))/p^i mod p computed from an integer lift Z
    of the regular representation of z, reaches the radical after
    floor(log_p dim) + 1 steps.  Over a prime field each g_i is linear, so
    every step is one exact kernel computation.
    """
    field = a.field
    n = a.dim
    p = field.characteristic
    lmats = [a.left_mult_matrix(a.basis_vec(i)) for i in range(n)]

    if p == 0:
        gram = [
            [_trace(lmats[i] * lmats[j]) for j in range(n)]
            for i in range(n)
        ]
        return Mat(field, gram).kernel_basis()

    levels = 0
    while p ** (levels + 1) <= n:
        levels += 1

    basis = Mat.identity(field, n)  # columns span the current ideal V_i
    for i in range(levels + 1):
        q = p ** i
        if basis.cols == 0:
            break
        rows = []
        for y in range(n):
            row = []
            for t in range(basis.cols):
                x = basis.col(t)
                z = a.mul_vec(x, a.basis_vec(y))
                lz = a.left_mult_matrix(z)
                zint = [[int(e) for e in r] for r in lz.data]
                tr = _int_matrix_power_trace(zint, q)
                if tr % q != 0:
                    raise PropertyViolation("p-power trace is not divisible as required")
                row.append((tr // q) % p)
            rows.append(row)
        ker = Mat(field, rows, cols=basis.cols).kernel_basis()
        basis = basis * ker
    return basis


def _trace(m: Mat):
    tot = m.field.zero()
    for i in range(m.rows):
        tot = m.field.add(tot, m.entry(i, i))
    return tot


def _int_matrix_power_trace(m, e: int) -> int:
    """Trace of m^e for an integer matrix, by square-and-multiply over Z."""
    n = len(m)
    result = None
    base = m
    while e:
        if e & 1:
            result = base if result is None else _int_matmul(result, base)
        e >>= 1
        if e:
            base = _int_matmul(base, base)
    assert result is not None
    return sum(result[i][i] for i in range(n))


def _int_matmul(a, b):
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


# ---------------------------------------------------------------------------
# Quivers and path algebras
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Quiver:
    """A finite quiver with relations given as combinations of parallel paths.

    Arrows are (source, target, label) with 0-based vertices.  A relation
    is a list of (arrow-label sequence in composition order, coefficient)
    terms; all terms of one relation must be parallel paths of one common
    length >= 2.
    """

    vertex_count: int
    arrows: tuple = ()
    relations: tuple = ()

    def __post_init__(self):
        for s, t, _lbl in self.arrows:
            if not (0 <= s < self.vertex_count and 0 <= t < self.vertex_count):
                raise InputShapeError("arrow endpoint outside vertex range")
        labels = [lbl for _, _, lbl in self.arrows]
        if len(set(labels)) != len(labels):
            raise InputShapeError("arrow labels must be distinct")


def path_algebra(q: Quiver, field: FieldSpec, max_path_length: int = 64) -> Algebra:
    """The quotient of the path algebra kQ by the relation ideal.

    Relations must be homogeneous in path length (each relation's terms
    share one length), so the ideal is graded and the quotient is built
    level by level: new paths only extend reduced paths of the previous
    level, relations and right-extensions of earlier reduction rules are
    row-reduced in the candidate coordinates, and the surviving candidates
    form the basis at that level.  Raises InfiniteDimensional when
    irreducible paths survive past max_path_length.
    """
    if q.vertex_count < 1:
        raise InputShapeError("a path algebra needs at least one vertex")
    arrow_labels = [lbl for _, _, lbl in q.arrows]
    label_to_arrow = {lbl: i for i, lbl in enumerate(arrow_labels)}
    arr_src = [a[0] for a in q.arrows]
    arr_tgt = [a[1] for a in q.arrows]

    # Parse and validate relations; group them by term length.
    rels_by_len: dict = {}
    for rel in q.relations:
        terms = []
        for term_path, coeff in rel:
            arrows_comp = [label_to_arrow.get(lbl) for lbl in term_path]
            if any(x is None for x in arrows_comp):
                raise MalformedRelation(f"unknown arrow label in {term_path}")
            arrows_app = tuple(reversed(arrows_comp))  # composition -> application order
            if len(arrows_app) < 2:
                raise MalformedRelation("relation paths must have length >= 2")
            for x, y in zip(arrows_app, arrows_app[1:]):
                if arr_tgt[x] != arr_src[y]:
                    raise MalformedRelation(f"non-composable path {term_path}")
            src = arr_src[arrows_app[0]]
            tgt = arr_tgt[arrows_app[-1]]
            terms.append((src, arrows_app, tgt, field.coerce(coeff)))
        if not terms:
            raise MalformedRelation("empty relation")
        src0, tgt0, len0 = terms[0][0], terms[0][2], len(terms[0][1])
        for src, arrows_app, tgt, _c in terms:
            if (src, tgt) != (src0, tgt0):
                raise MalformedRelation("relation terms are not parallel paths")
            if len(arrows_app) != len0:
                raise MalformedRelation(
                    "relation terms of unequal length are not supported; "
                    "the ideal must be homogeneous in path length"
                )
        rels_by_len.setdefault(len0, []).append(terms)

    # Path keys are (source, arrows-in-application-order).
    reduced: list = [[(v, ()) for v in range(q.vertex_count)],
                     [(arr_src[i], (i,)) for i in range(len(q.arrows))]]
    # nf_cand[level][candidate key] = {reduced key at that level: coeff}
    nf_cand: list = [
        {k: {k: field.one()} for k in reduced[0]},
        {k: {k: field.one()} for k in reduced[1]},
    ]
    target_of = {}
    for k in reduced[0]:
        target_of[k] = k[0]
    for k in reduced[1]:
        target_of[k] = arr_tgt[k[1][0]]

    def nf_level(key, level):
        """Normal form of a length-`level` path, via tail reduction."""
        if level >= len(nf_cand):
            return {}
        if level <= 1:
            return nf_cand[level].get(key, {})
        src, arrows = key
        last = arrows[-1]
        tail = (src, arrows[:-1])
        out: dict = {}
        for rkey, c in nf_level(tail, level - 1).items():
            cand = (rkey[0], rkey[1] + (last,))
            for fkey, c2 in nf_cand[level].get(cand, {}).items():
                prod = field.mul(c, c2)
                out[fkey] = field.add(out.get(fkey, field.zero()), prod)
        return {k2: v for k2, v in out.items() if v != 0}

    level = 1
    while reduced[level]:
        level += 1
        if level > max_path_length + 1:
            raise InfiniteDimensional(
                f"irreducible paths survive past the bound {max_path_length}"
            )
        candidates = []
        for rkey in reduced[level - 1]:
            for ai in range(len(q.arrows)):
                if arr_src[ai] == target_of[rkey]:
                    candidates.append((rkey[0], rkey[1] + (ai,)))
        if len(candidates) > 100_000:
            raise InfiniteDimensional("path growth exceeds the desk-scale limit")
        cand_pos = {k: i for i, k in enumerate(candidates)}

        def expand(key):
            """Coordinates of a length-`level` path over the candidates."""
            src, arrows = key
            last = arrows[-1]
            tail = (src, arrows[:-1])
            out: dict = {}
            for rkey, c in nf_level(tail, level - 1).items():
                cand = (rkey[0], rkey[1] + (last,))
                out[cand] = field.add(out.get(cand, field.zero()), c)
            return out

        gens = []
        for terms in rels_by_len.get(level, []):
            row = [field.zero()] * len(candidates)
            for src, arrows_app, _tgt, c in terms:
                for cand, c2 in expand((src, arrows_app)).items():
                    row[cand_pos[cand]] = field.add(row[cand_pos[cand]],
                                                    field.mul(c, c2))
            gens.append(row)
        # Right-extensions of the previous level's reduction rules.
        for pivot, nf_map in nf_cand[level - 1].items():
            if nf_map == {pivot: field.one()}:
                continue
            psrc = pivot[0]
            first_arrow_src = psrc
            for ai in range(len(q.arrows)):
                if arr_tgt[ai] != first_arrow_src:
                    continue
                row = [field.zero()] * len(candidates)
                ext = (arr_src[ai], (ai,) + pivot[1])
                for cand, c in expand(ext).items():
                    row[cand_pos[cand]] = field.add(row[cand_pos[cand]], c)
                for rkey, c in nf_map.items():
                    rext = (arr_src[ai], (ai,) + rkey[1])
                    for cand, c2 in expand(rext).items():
                        row[cand_pos[cand]] = field.sub(row[cand_pos[cand]],
                                                        field.mul(c, c2))
                gens.append(row)

        order = sorted(range(len(candidates)), key=lambda i: candidates[i], reverse=True)
        level_nf: dict = {}
        if gens and candidates:
            ordered = Mat(field, [[row[o] for o in order] for row in gens],
                          cols=len(candidates))
            red = rref(ordered)
            pivot_set = set(red.pivots)
            pivot_row = {c: r for r, c in enumerate(red.pivots)}
            survivors = [order[pos] for pos in range(len(candidates))
                         if pos not in pivot_set]
            for pos in range(len(candidates)):
                key = candidates[order[pos]]
                if pos not in pivot_set:
                    level_nf[key] = {key: field.one()}
                else:
                    r = pivot_row[pos]
                    entry: dict = {}
                    for pos2 in range(len(candidates)):
                        if pos2 in pivot_set:
                            continue
                        c = red.matrix.entry(r, pos2)
                        if c != 0:
                            entry[candidates[order[pos2]]] = field.neg(c)
                    level_nf[key] = entry
        else:
            survivors = list(range(len(candidates)))
            for key in candidates:
                level_nf[key] = {key: field.one()}

        new_reduced = sorted((candidates[i] for i in survivors))
        for key in new_reduced:
            target_of[key] = arr_tgt[key[1][-1]]
        reduced.append(new_reduced)
        nf_cand.append(level_nf)

    basis_keys = [k for lvl in reduced for k in sorted(lvl)]
    basis_index = {k: i for i, k in enumerate(basis_keys)}
    dim = len(basis_keys)

    def nf_any(key):
        return nf_level(key, len(key[1]))

    zero = field.zero()
    table = []
    for ki in basis_keys:
        row = []
        for kj in basis_keys:
            # product e_{ki} * e_{kj} applies kj first
            if target_of[kj] != ki[0]:
                row.append(tuple(zero for _ in range(dim)))
                continue
            full = (kj[0], kj[1] + ki[1])
            cell = [zero] * dim
            for rkey, c in nf_any(full).items():
                cell[basis_index[rkey]] = c
            row.append(tuple(cell))
        table.append(row)

    unit = [zero] * dim
    idems = []
    for v in range(q.vertex_count):
        e = [zero] * dim
        e[basis_index[(v, ())]] = field.one()
        idems.append(tuple(e))
        unit[basis_index[(v, ())]] = field.one()

    rad_cols = [
        tuple(field.one() if t == b else zero for t in range(dim))
        for b, key in enumerate(basis_keys)
        if len(key[1]) >= 1
    ]
    closed_rad = Mat.from_cols(field, rad_cols) if rad_cols else Mat.zeros(field, dim, 0)

    labels = [_path_label(k, arrow_labels) for k in basis_keys]
    return Algebra(
        field,
        labels,
        table,
        unit,
        idempotents=idems,
        provenance={"kind": "path_algebra", "vertices": q.vertex_count,
                    "arrows": [list(a) for a in q.arrows]},
        _closed_radical=closed_rad,
    )


def _path_label(key, arrow_labels):
    source, arrows = key
    if not arrows:
        return f"e{source + 1}"
    return "*".join(arrow_labels[i] for i in reversed(arrows))


# ---------------------------------------------------------------------------
# Group algebras
# ---------------------------------------------------------------------------


def group_algebra(mult_table: Sequence[Sequence[int]], field: FieldSpec) -> Algebra:
    """The group algebra of the finite group given by its multiplication table.

    mult_table[i][j] is the index of g_i * g_j.  The table is validated:
    rows and columns must be permutations, a two-sided identity and
    inverses must exist, and associativity must hold on all triples.
    """
    n = len(mult_table)
    if n == 0:
        raise NotAGroup("empty table")
    if any(len(r) != n for r in mult_table):
        raise NotAGroup("table is not square")
    full = set(range(n))
    for r in mult_table:
        if set(r) != full:
            raise NotAGroup("a row is not a permutation")
    for j in range(n):
        if {mult_table[i][j] for i in range(n)} != full:
            raise NotAGroup("a column is not a permutation")
    identity = None
    for e in range(n):
        if all(mult_table[e][x] == x and mult_table[x][e] == x for x in range(n)):
            identity = e
            break
    if identity is None:
        raise NotAGroup("no two-sided identity")
    for i in range(n):
        if not any(mult_table[i][j] == identity and mult_table[j][i] == identity for j in range(n)):
            raise NotAGroup(f"element {i} has no inverse")
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if mult_table[mult_table[i][j]][k] != mult_table[i][mult_table[j][k]]:
                    raise NotAGroup(f"associativity fails at ({i}, {j}, {k})")

    zero, one = field.zero(), field.one()
    table = [
        [tuple(one if k == mult_table[i][j] else zero for k in range(n)) for j in range(n)]
        for i in range(n)
    ]
    unit = tuple(one if k == identity else zero for k in range(n))
    labels = [f"g{i}" for i in range(n)]
    a = Algebra(
        field,
        labels,
        table,
        unit,
        provenance={"kind": "group_algebra", "order": n},
    )
    # Local group algebras (e.g. F_p[P] for a p-group) carry the unit as
    # their one primitive idempotent; otherwise idempotent data is absent.
    if a.is_local():
        return Algebra(
            field,
            labels,
            table,
            unit,
            idempotents=[unit],
            provenance={"kind": "group_algebra", "order": n},
        )
    return a


def cyclic_group_table(n: int):
    return [[(i + j) % n for j in range(n)] for i in range(n)]


def symmetric_group_table(n: int):
    """Multiplication table of S_n acting on the left (compose like functions)."""
    from itertools import permutations

    perms = list(permutations(range(n)))
    idx = {p: i for i, p in enumerate(perms)}
    table = []
    for p in perms:
        row = []
        for q in perms:
            comp = tuple(p[q[i]] for i in range(n))
            row.append(idx[comp])
        table.append(row)
    return table


# ---------------------------------------------------------------------------
# Truncated polynomial extensions and derived algebras
# ---------------------------------------------------------------------------


def truncated_extension(r: Algebra, t: int):
    """S = R[x]/(x^t) with x central, plus the embedding matrix R -> S.

    The basis is {r_i x^j} ordered with the power of x as the slow index,
    so the j = 0 slice is an embedded copy of R.
    """
    if t < 1:
        raise InputShapeError("truncation degree must be >= 1")
    field = r.field
    d = r.dim
    dim = d * t
    zero = field.zero()

    def pos(i, j):
        return j * d + i

    labels = []
    for j in range(t):
        for i in range(d):
            suffix = "" if j == 0 else (f"*x" if j == 1 else f"*x^{j}")
            labels.append(r.basis_labels[i] + suffix)

    table = [[None] * dim for _ in range(dim)]
    for a in range(t):
        for i in range(d):
            for b in range(t):
                for k in range(d):
                    cell = [zero] * dim
                    if a + b < t:
                        prod = r.table[i][k]
                        for m, c in enumerate(prod):
                            if c != 0:
                                cell[pos(m, a + b)] = c
                    table[pos(i, a)][pos(k, b)] = tuple(cell)

    unit = [zero] * dim
    for i, c in enumerate(r.unit):
        unit[pos(i, 0)] = c

    idems = None
    if r.idempotents is not None:
        idems = []
        for e in r.idempotents:
            v = [zero] * dim
            for i, c in enumerate(e):
                v[pos(i, 0)] = c
            idems.append(tuple(v))

    rad_r = r.radical_basis()
    rad_cols = []
    for cidx in range(rad_r.cols):
        col = rad_r.col(cidx)
        v = [zero] * dim
        for i, c in enumerate(col):
            v[pos(i, 0)] = c
        rad_cols.append(tuple(v))
    for j in range(1, t):
        for i in range(d):
            v = [zero] * dim
            v[pos(i, j)] = field.one()
            rad_cols.append(tuple(v))
    closed_rad = Mat.from_cols(field, rad_cols) if rad_cols else Mat.zeros(field, dim, 0)

    s = Algebra(
        field,
        labels,
        table,
        unit,
        idempotents=idems,
        provenance={"kind": "truncated", "t": t, "base": r.provenance.get("kind", "?")},
        _closed_radical=closed_rad,
    )
    embedding = Mat.from_cols(field, [s.basis_vec(pos(i, 0)) for i in range(d)])
    return s, embedding


def field_algebra(field: FieldSpec) -> Algebra:
    return Algebra(
        field,
        ["1"],
        [[(field.one(),)]],
        (field.one(),),
        idempotents=[(field.one(),)],
        provenance={"kind": "field"},
        _closed_radical=Mat.zeros(field, 1, 0),
    )


def matrix_algebra(a: Algebra, n: int) -> Algebra:
    """n x n matrices over a; basis E_uv ⊗ e_i with matrix-unit products."""
    if n < 1:
        raise InputShapeError("matrix size must be >= 1")
    field = a.field
    d = a.dim
    dim = n * n * d
    zero = field.zero()

    def pos(u, v, i):
        return (u * n + v) * d + i

    labels = [
        f"E{u + 1}{v + 1}*{a.basis_labels[i]}"
        for u in range(n)
        for v in range(n)
        for i in range(d)
    ]
    table = [[None] * dim for _ in range(dim)]
    for u in range(n):
        for v in range(n):
            for i in range(d):
                for u2 in range(n):
                    for v2 in range(n):
                        for j in range(d):
                            cell = [zero] * dim
                            if v == u2:
                                for k, c in enumerate(a.table[i][j]):
                                    if c != 0:
                                        cell[pos(u, v2, k)] = c
                            table[pos(u, v, i)][pos(u2, v2, j)] = tuple(cell)

    unit = [zero] * dim
    for u in range(n):
        for i, c in enumerate(a.unit):
            unit[pos(u, u, i)] = c

    idems = None
    if a.idempotents is not None:
        idems = []
        for u in range(n):
            for e in a.idempotents:
                v = [zero] * dim
                for i, c in enumerate(e):
                    v[pos(u, u, i)] = c
                idems.append(tuple(v))

    rad_a = a.radical_basis()
    rad_cols = []
    for u in range(n):
        for v in range(n):
            for cidx in range(rad_a.cols):
                col = rad_a.col(cidx)
                w = [zero] * dim
                for i, c in enumerate(col):
                    w[pos(u, v, i)] = c
                rad_cols.append(tuple(w))
    closed_rad = Mat.from_cols(field, rad_cols) if rad_cols else Mat.zeros(field, dim, 0)

    return Algebra(
        field,
        labels,
        table,
        unit,
        idempotents=idems,
        provenance={"kind": "matrix", "n": n, "base": a.provenance.get("kind", "?")},
        _closed_radical=closed_rad,
    )


def product_algebra(a: Algebra, b: Algebra) -> Algebra:
    """The direct product a x b, with blockwise products."""
    if a.field != b.field:
        raise InputShapeError("product factors must share the field")
    field = a.field
    da, db = a.dim, b.dim
    dim = da + db
    zero = field.zero()

    def embed_a(v):
        return tuple(v) + tuple(zero for _ in range(db))

    def embed_b(v):
        return tuple(zero for _ in range(da)) + tuple(v)

    labels = [f"({lbl},0)" for lbl in a.basis_labels] + [f"(0,{lbl})" for lbl in b.basis_labels]
    table = [[None] * dim for _ in range(dim)]
    for i in range(dim):
        for j in range(dim):
            if i < da and j < da:
                table[i][j] = embed_a(a.table[i][j])
            elif i >= da and j >= da:
                table[i][j] = embed_b(b.table[i - da][j - da])
            else:
                table[i][j] = tuple(zero for _ in range(dim))

    unit = tuple(a.unit) + tuple(b.unit)
    idems = None
    if a.idempotents is not None and b.idempotents is not None:
        idems = [embed_a(e) for e in a.idempotents] + [embed_b(f) for f in b.idempotents]

    rad_cols = [embed_a(a.radical_basis().col(c)) for c in range(a.radical_basis().cols)]
    rad_cols += [embed_b(b.radical_basis().col(c)) for c in range(b.radical_basis().cols)]
    closed_rad = Mat.from_cols(field, rad_cols) if rad_cols else Mat.zeros(field, dim, 0)

    return Algebra(
        field,
        labels,
        table,
        unit,
        idempotents=idems,
        provenance={"kind": "product",
                    "left": a.provenance.get("kind", "?"),
                    "right": b.provenance.get("kind", "?")},
        _closed_radical=closed_rad,
    )


def tensor_algebra(a: Algebra, b: Algebra) -> Algebra:
    """a ⊗_k b; modules over it are (a, b^op)-bimodule-style data."""
    if a.field != b.field:
        raise InputShapeError("tensor factors must share the field")
    field = a.field
    da, db = a.dim, b.dim
    dim = da * db
    zero = field.zero()
    p = field.characteristic

    def pos(i, j):
        return i * db + j

    labels = [f"{la}(x){lb}" for la in a.basis_labels for lb in b.basis_labels]
    table = [[None] * dim for _ in range(dim)]
    for i in range(da):
        for j in range(db):
            for k in range(da):
                for l in range(db):
                    cell = [zero] * dim
                    for m, c1 in enumerate(a.table[i][k]):
                        if c1 == 0:
                            continue
                        for q, c2 in enumerate(b.table[j][l]):
                            if c2 == 0:
                                continue
                            cell[pos(m, q)] = (c1 * c2) % p if p else c1 * c2
                    table[pos(i, j)][pos(k, l)] = tuple(cell)

    unit = [zero] * dim
    for i, c1 in enumerate(a.unit):
        if c1 == 0:
            continue
        for j, c2 in enumerate(b.unit):
            if c2 != 0:
                unit[pos(i, j)] = (c1 * c2) % p if p else c1 * c2

    idems = None
    if a.idempotents is not None and b.idempotents is not None:
        idems = []
        for e in a.idempotents:
            for f in b.idempotents:
                v = [zero] * dim
                for i, c1 in enumerate(e):
                    if c1 == 0:
                        continue
                    for j, c2 in enumerate(f):
                        if c2 != 0:
                            v[pos(i, j)] = (c1 * c2) % p if p else c1 * c2
                idems.append(tuple(v))

    # rad(a (x) b) = rad(a) (x) b + a (x) rad(b) over a perfect field.
    rad_a, rad_b = a.radical_basis(), b.radical_basis()
    span_cols = []
    for c in range(rad_a.cols):
        col = rad_a.col(c)
        for j in range(db):
            v = [zero] * dim
            for i, x in enumerate(col):
                v[pos(i, j)] = x
            span_cols.append(v)
    for c in range(rad_b.cols):
        col = rad_b.col(c)
        for i in range(da):
            v = [zero] * dim
            for j, x in enumerate(col):
                v[pos(i, j)] = x
            span_cols.append(v)
    if span_cols:
        span = Mat.from_cols(field, span_cols)
        red = rref(span.transpose())
        closed_rad = red.matrix.transpose().select_cols(range(red.rank))
    else:
        closed_rad = Mat.zeros(field, dim, 0)

    return Algebra(
        field,
        labels,
        table,
        unit,
        idempotents=idems,
        provenance={"kind": "tensor",
                    "left": a.provenance.get("kind", "?"),
                    "right": b.provenance.get("kind", "?")},
        _closed_radical=closed_rad,
    )


def derived_algebras(a: Algebra, kind: str, *, n: int = None, other: Algebra = None) -> Algebra:
    """Dispatcher over the derived constructions: opposite, matrix(n), product(b)."""
    if kind == "opposite":
        return a.opposite()
    if kind == "matrix":
        return matrix_algebra(a, n)
    if kind == "product":
        return product_algebra(a, other)
    raise InputShapeError(f"unknown derived kind {kind!r}")


def quotient_by_ideal(a: Algebra, ideal: Mat) -> Algebra:
    """The quotient algebra A/I for a two-sided ideal spanned by ideal's columns.

    Used to check semisimplicity of A/rad(A); the quotient basis is the
    set of coordinate positions missed by the ideal's pivots.
    """
    field = a.field
    red = rref(ideal.transpose())
    pivot_rows = set(red.pivots)
    keep = [i for i in range(a.dim) if i not in pivot_rows]
    b_cols = [red.matrix.transpose().col(c) for c in range(red.rank)]
    c_cols = [a.basis_vec(i) for i in keep]
    t = Mat.from_cols(field, list(b_cols) + list(c_cols))
    if t.cols != a.dim or not t.is_invertible():
        raise InputShapeError("ideal basis is not independent")
    tinv = t.inverse()
    k = len(b_cols)

    def project(v):
        coords = tinv * Mat.col_vector(field, v)
        return tuple(coords.entry(i, 0) for i in range(k, a.dim))

    table = [
        [project(a.mul_vec(c_cols[i], c_cols[j])) for j in range(len(keep))]
        for i in range(len(keep))
    ]
    unit = project(a.unit)
    labels = [a.basis_labels[i] for i in keep]
    return Algebra(field, labels, table, unit,
                   provenance={"kind": "quotient", "of": a.provenance.get("kind", "?")})


def radical_and_idempotents(a: Algebra):
    """The radical basis together with the primitive idempotent set.

    Raises UnsupportedAlgebra when no idempotent data is available (the
    radical alone is always computable via Algebra.radical_basis()).
    """
    idems = a.primitive_idempotents()
    if idems is None:
        raise UnsupportedAlgebra(
            "no primitive idempotent data; supply idempotents or use a supported constructor"
        )
    return a.radical_basis(), list(idems)


# ---------------------------------------------------------------------------
# Serialization (.alg / .quiver)
# ---------------------------------------------------------------------------


def algebra_to_json(a: Algebra) -> dict:
    fmt = a.field.format
    doc = {
        "field": {"char": a.field.characteristic},
        "basis": list(a.basis_labels),
        "table": [[[fmt(x) for x in cell] for cell in row] for row in a.table],
        "unit": [fmt(x) for x in a.unit],
    }
    if a.idempotents is not None:
        doc["idempotents"] = [[fmt(x) for x in e] for e in a.idempotents]
    if a.provenance:
        doc["provenance"] = a.provenance
    return doc


def algebra_from_json(doc: dict) -> Algebra:
    try:
        field = FieldSpec(int(doc["field"]["char"]))
        basis = doc["basis"]
        table = doc["table"]
        unit = doc["unit"]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputShapeError(f"malformed algebra document: {exc}") from exc
    return Algebra(
        field,
        basis,
        table,
        unit,
        idempotents=doc.get("idempotents"),
        provenance=doc.get("provenance"),
    )


def save_algebra(a: Algebra, path) -> None:
    Path(path).write_text(json.dumps(algebra_to_json(a), indent=1))


def load_algebra(path) -> Algebra:
    return algebra_from_json(json.loads(Path(path).read_text()))


def quiver_to_json(q: Quiver) -> dict:
    return {
        "vertices": q.vertex_count,
        "arrows": [list(arrow) for arrow in q.arrows],
        "relations": [[[list(p), str(c)] for p, c in rel] for rel in q.relations],
    }


def quiver_from_json(doc: dict) -> Quiver:
    try:
        return Quiver(
            int(doc["vertices"]),
            tuple((int(s), int(t), str(l)) for s, t, l in doc.get("arrows", [])),
            tuple(tuple((tuple(p), c) for p, c in rel) for rel in doc.get("relations", [])),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise InputShapeError(f"malformed quiver document: {exc}") from exc


def save_quiver(q: Quiver, path) -> None:
    Path(path).write_text(json.dumps(quiver_to_json(q), indent=1))


def load_quiver(path) -> Quiver:
    return quiver_from_json(json.loads(Path(path).read_text()))
