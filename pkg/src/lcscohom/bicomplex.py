"""The degree-split bicomplex refining the reduced complex.

Chains in bidegree (i, j) are formal sums over (i+j)-tuples; the first i
coordinates play the cycle-set role and the last j the linearizing role.
The horizontal differential lowers i, the vertical one lowers j:

    dh(i,j) = dot-action + alternating merges among the first i
              coordinates + (-1)^i drop of coordinate i,         i, j >= 1
    -dv(i,j) = drop of coordinate i+1 + alternating merges among
              the last j coordinates + (-1)^j drop of the last,  j >= 2

(coordinates 1-based).  Cochains in bidegree (i, j) are value tables
whose linearization kills every partial shuffle of the last j
coordinates; the total complex in degree n is the direct sum over
i + j = n, j >= 1, with blocks ordered by descending i, and the chain
differential restricted to block (i, j) is dh + (-1)^i dv.
"""

import itertools
from dataclasses import dataclass, field

from .abelian import FiniteAbelianGroup, merge_invariants
from .budget import check_basis
from .errors import DegreeError, ParameterError
from .linalg import (
    IntegerMatrix,
    LatticeTester,
    kernel_mod_m,
    subquotient_invariants,
    vstack,
)
from .reduced import (
    all_tuples,
    reduced_boundary_matrix,
    degenerate_indices,
    linearity_rows,
    tuple_index,
)
from .structures import LinearCycleSet, require_valid_lcs

__all__ = [
    "shuffle_permutations",
    "partial_shuffles",
    "shuffle_rows",
    "dh_matrix",
    "dv_matrix",
    "total_chain_matrix",
    "total_blocks",
    "block_cochain_generators",
    "full_cohomology",
    "BicomplexReport",
    "bicomplex_identity_check",
    "row_matches_reduced",
    "column_matches_trivial_reduced",
]


def shuffle_permutations(r: int, j: int):
    """Permutations of {0..j-1} increasing on the first r and last j-r slots.

    Returns (sign, inverse) pairs, where inverse[p] says which source slot
    lands at position p.
    """
    if not 1 <= r <= j - 1:
        raise ParameterError(f"shuffle type ({r}, {j - r}) needs 1 <= r <= j-1")
    out = []
    for first in itertools.combinations(range(j), r):
        rest = [p for p in range(j) if p not in first]
        perm = list(first) + rest
        sign = 1
        for a in range(j):
            for b in range(a + 1, j):
                if perm[a] > perm[b]:
                    sign = -sign
        inverse = [0] * j
        for q, p in enumerate(perm):
            inverse[p] = q
        out.append((sign, inverse))
    return out


def partial_shuffles(structure: LinearCycleSet, i: int, j: int, r: int):
    """One signed formal sum per (i+j)-tuple, as {tuple: coefficient} dicts.

    The first i coordinates stay put; the last j are shuffled with the
    (r, j-r) signs.  Coinciding terms accumulate, so sums over tuples
    with repeated entries may cancel to empty dicts.
    """
    if i < 0 or j < 2:
        raise ParameterError(f"partial shuffles need i >= 0 and j >= 2, got ({i}, {j})")
    perms = shuffle_permutations(r, j)
    n = structure.order
    check_basis(n ** (i + j), f"the degree-{i + j} tuple basis")
    sums = []
    for t in all_tuples(n, i + j):
        acc = {}
        for sign, inverse in perms:
            term = t[:i] + tuple(t[i + inverse[p]] for p in range(j))
            acc[term] = acc.get(term, 0) + sign
        sums.append({term: c for term, c in acc.items() if c})
    return sums


def shuffle_rows(structure: LinearCycleSet, i: int, j: int) -> IntegerMatrix:
    """All partial-shuffle sums at bidegree (i, j), linearized as matrix rows.

    Rows double as the cochain-side constraints and, transposed, as
    generators of the shuffle subgroup of the free chain module.  For
    j < 2 there are no shuffles and the matrix has zero rows.
    """
    n = structure.order
    size = n ** (i + j)
    if j < 2:
        return IntegerMatrix.zeros(0, size)
    data = []
    for r in range(1, j):
        for acc in partial_shuffles(structure, i, j, r):
            row = [0] * size
            for term, c in acc.items():
                row[tuple_index(term, n)] += c
            data.append(row)
    return IntegerMatrix(len(data), size, data)


def dh_matrix(structure: LinearCycleSet, i: int, j: int) -> IntegerMatrix:
    """Matrix of the horizontal differential at bidegree (i, j), i, j >= 1."""
    if i < 1 or j < 1:
        raise ParameterError(f"horizontal differential needs i, j >= 1, got ({i}, {j})")
    n = structure.order
    k = i + j
    check_basis(n**k, f"the degree-{k} tuple basis")
    add, dot = structure.add, structure.dot
    data = [[0] * n**k for _ in range(n ** (k - 1))]
    for col, t in enumerate(all_tuples(n, k)):
        head = dot[t[0]]
        acted = tuple(head[x] for x in t[1:])
        data[tuple_index(acted, n)][col] += 1
        sign = 1
        for pos in range(1, i):
            sign = -sign
            merged = t[: pos - 1] + (add[t[pos - 1]][t[pos]],) + t[pos + 1 :]
            data[tuple_index(merged, n)][col] += sign
        dropped = t[: i - 1] + t[i:]
        data[tuple_index(dropped, n)][col] -= sign
    return IntegerMatrix(n ** (k - 1), n**k, data)


def dv_matrix(structure: LinearCycleSet, i: int, j: int) -> IntegerMatrix:
    """Matrix of the vertical differential at bidegree (i, j), j >= 2."""
    if i < 0 or j < 2:
        raise ParameterError(f"vertical differential needs i >= 0 and j >= 2, got ({i}, {j})")
    n = structure.order
    k = i + j
    check_basis(n**k, f"the degree-{k} tuple basis")
    add = structure.add
    data = [[0] * n**k for _ in range(n ** (k - 1))]
    for col, t in enumerate(all_tuples(n, k)):
        dropped = t[:i] + t[i + 1 :]
        data[tuple_index(dropped, n)][col] -= 1
        sign = 1
        for offset in range(1, j):
            sign = -sign
            pos = i + offset
            merged = t[: pos - 1] + (add[t[pos - 1]][t[pos]],) + t[pos + 1 :]
            data[tuple_index(merged, n)][col] -= sign
        last = t[: k - 1]
        data[tuple_index(last, n)][col] += sign
    return IntegerMatrix(n ** (k - 1), n**k, data)


def total_blocks(n: int):
    """Bidegrees summing to n with j >= 1, ordered by descending i."""
    if not isinstance(n, int) or n < 1:
        raise DegreeError(f"total degree must be an integer >= 1, got {n!r}")
    return [(i, n - i) for i in range(n - 1, -1, -1)]


def total_chain_matrix(structure: LinearCycleSet, n: int) -> IntegerMatrix:
    """Matrix of the total-complex boundary in degree n.

    Source blocks (descending i, size |A|^n each) map through dh into
    (i-1, j) and through (-1)^i dv into (i, j-1); degree 1 boundary is
    the zero map into nothing.
    """
    order = structure.order
    src = total_blocks(n)
    size_src = order**n
    check_basis(len(src) * size_src, f"the total degree-{n} basis", factor=3)
    if n == 1:
        return IntegerMatrix.zeros(0, size_src)
    dst = total_blocks(n - 1)
    size_dst = order ** (n - 1)
    dst_pos = {block: p for p, block in enumerate(dst)}
    data = [[0] * (len(src) * size_src) for _ in range(len(dst) * size_dst)]

    def insert(block_matrix, row_block, col_block, sign):
        roff = dst_pos[row_block] * size_dst
        coff = col_block * size_src
        for rr in range(size_dst):
            target = data[roff + rr]
            source = block_matrix.data[rr]
            for cc in range(size_src):
                x = source[cc]
                if x:
                    target[coff + cc] += sign * x
    for pos, (i, j) in enumerate(src):
        if i >= 1:
            insert(dh_matrix(structure, i, j), (i - 1, j), pos, 1)
        if j >= 2:
            insert(dv_matrix(structure, i, j), (i, j - 1), pos, -1 if i % 2 else 1)
    return IntegerMatrix(len(dst) * size_dst, len(src) * size_src, data)


def _degenerate_rows(structure, k):
    n = structure.order
    cols = n**k
    data = []
    for idx in degenerate_indices(structure, k):
        row = [0] * cols
        row[idx] = 1
        data.append(row)
    return IntegerMatrix(len(data), cols, data)


def block_cochain_generators(
    structure: LinearCycleSet,
    i: int,
    j: int,
    m: int,
    normalized: bool = False,
) -> IntegerMatrix:
    """Generators (mod m) of the bidegree-(i, j) cochain group.

    Value tables whose linearization vanishes on every partial shuffle of
    the last j coordinates, and on degenerate tuples when normalized.
    """
    n = structure.order
    size = n ** (i + j)
    constraints = shuffle_rows(structure, i, j)
    if normalized:
        constraints = vstack([constraints, _degenerate_rows(structure, i + j)])
    if constraints.rows == 0:
        return IntegerMatrix.identity(size)
    return kernel_mod_m(constraints, m)


def _block_diagonal(mats):
    rows = sum(m.rows for m in mats)
    cols = sum(m.cols for m in mats)
    data = [[0] * cols for _ in range(rows)]
    roff = coff = 0
    for m in mats:
        for rr in range(m.rows):
            row = data[roff + rr]
            src = m.data[rr]
            for cc in range(m.cols):
                row[coff + cc] = src[cc]
        roff += m.rows
        coff += m.cols
    return IntegerMatrix(rows, cols, data)


def full_cohomology(
    structure: LinearCycleSet,
    coeffs: FiniteAbelianGroup,
    degree: int,
    normalized: bool = False,
):
    """Invariant factors of the degree-n cohomology of the total complex.

    The cochain group is the direct sum of the bidegree blocks (descending
    i); kernels and coboundaries are taken within the shuffle-constrained
    (and, when normalized, degenerate-vanishing) subgroups.
    """
    require_valid_lcs(structure)
    if not isinstance(degree, int) or degree < 1:
        raise DegreeError(f"degree must be an integer >= 1, got {degree!r}")
    n = structure.order
    check_basis((degree + 1) * n ** (degree + 1), f"the total degree-{degree + 1} basis", factor=3)
    d_out = total_chain_matrix(structure, degree + 1).transpose()
    d_in_free = total_chain_matrix(structure, degree).transpose() if degree >= 2 else None
    parts = []
    for m in coeffs.factors:
        gens = _block_diagonal(
            [block_cochain_generators(structure, i, j, m, normalized) for i, j in total_blocks(degree)]
        )
        if degree >= 2:
            prev = _block_diagonal(
                [
                    block_cochain_generators(structure, i, j, m, normalized)
                    for i, j in total_blocks(degree - 1)
                ]
            )
            d_in = d_in_free @ prev
        else:
            d_in = IntegerMatrix.zeros(n**degree, 0)
        parts.append(subquotient_invariants(d_out, d_in, gens, m))
    return merge_invariants(*parts)


# ---------------------------------------------------------------------------
# Structural checks


@dataclass
class BicomplexCheck:
    name: str
    ok: bool
    detail: str = ""

    def to_dict(self):
        out = {"name": self.name, "ok": self.ok}
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass
class BicomplexReport:
    order: int
    max_degree: int
    checks: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def to_dict(self):
        return {
            "order": self.order,
            "max_degree": self.max_degree,
            "ok": self.ok,
            "checks": [c.to_dict() for c in self.checks],
        }


def _shuffle_vectors(structure, i, j):
    n = structure.order
    size = n ** (i + j)
    vectors = []
    for r in range(1, j):
        for acc in partial_shuffles(structure, i, j, r):
            vec = [0] * size
            for term, c in acc.items():
                vec[tuple_index(term, n)] += c
            vectors.append(vec)
    return vectors


def bicomplex_identity_check(structure: LinearCycleSet, max_degree: int) -> BicomplexReport:
    """Exact structural checks of the bicomplex up to a total degree.

    Composite identities (dh.dh = 0, dv.dv = 0, and the commutation of dh
    with dv) are exact matrix equalities on free modules; preservation of
    the shuffle subgroups is an integer lattice-membership check, and
    preservation of the degenerate subgroups a support check.
    """
    require_valid_lcs(structure)
    if not isinstance(max_degree, int) or max_degree < 2:
        raise DegreeError(f"max degree must be an integer >= 2, got {max_degree!r}")
    n = structure.order
    check_basis(n**max_degree, f"the degree-{max_degree} tuple basis")
    report = BicomplexReport(order=n, max_degree=max_degree)
    checks = report.checks
    for total in range(2, max_degree + 1):
        for i, j in total_blocks(total):
            if i >= 2:
                prod = dh_matrix(structure, i - 1, j) @ dh_matrix(structure, i, j)
                checks.append(
                    BicomplexCheck(f"dh.dh=0 at ({i},{j})", prod.is_zero())
                )
            if j >= 3:
                prod = dv_matrix(structure, i, j - 1) @ dv_matrix(structure, i, j)
                checks.append(
                    BicomplexCheck(f"dv.dv=0 at ({i},{j})", prod.is_zero())
                )
            if i >= 1 and j >= 2:
                lhs = dh_matrix(structure, i, j - 1) @ dv_matrix(structure, i, j)
                rhs = dv_matrix(structure, i - 1, j) @ dh_matrix(structure, i, j)
                checks.append(
                    BicomplexCheck(f"dh.dv=dv.dh at ({i},{j})", lhs == rhs)
                )
    for total in range(2, max_degree + 1):
        for i, j in total_blocks(total):
            if j < 2:
                continue
            vectors = _shuffle_vectors(structure, i, j)
            if i >= 1:
                dh = dh_matrix(structure, i, j)
                tester = LatticeTester(shuffle_rows(structure, i - 1, j).transpose())
                ok = all(tester.contains(dh.apply(v)) for v in vectors)
                checks.append(BicomplexCheck(f"dh preserves shuffles at ({i},{j})", ok))
            dv = dv_matrix(structure, i, j)
            if j - 1 >= 2:
                tester = LatticeTester(shuffle_rows(structure, i, j - 1).transpose())
                ok = all(tester.contains(dv.apply(v)) for v in vectors)
            else:
                ok = all(not any(dv.apply(v)) for v in vectors)
            checks.append(BicomplexCheck(f"dv preserves shuffles at ({i},{j})", ok))
    for total in range(2, max_degree + 1):
        target_ok = set(degenerate_indices(structure, total - 1))
        source = degenerate_indices(structure, total)
        for i, j in total_blocks(total):
            mats = []
            if i >= 1:
                mats.append(("dh", dh_matrix(structure, i, j)))
            if j >= 2:
                mats.append(("dv", dv_matrix(structure, i, j)))
            for name, mat in mats:
                ok = all(
                    all(r in target_ok or not mat.data[r][col] for r in range(mat.rows))
                    for col in source
                )
                checks.append(
                    BicomplexCheck(f"{name} preserves degenerates at ({i},{j})", ok)
                )
    return report


def row_matches_reduced(structure: LinearCycleSet, i: int) -> bool:
    """The j = 1 row of the bicomplex is the reduced boundary, exactly."""
    if i < 1:
        raise ParameterError("row comparison needs i >= 1")
    return dh_matrix(structure, i, 1) == reduced_boundary_matrix(structure, i + 1)


def _bar_matrix(structure, j):
    # drop-first + alternating merges + (-1)^j drop-last, on the add table only
    n = structure.order
    add = structure.add
    data = [[0] * n**j for _ in range(n ** (j - 1))]
    for col, t in enumerate(all_tuples(n, j)):
        data[tuple_index(t[1:], n)][col] += 1
        sign = 1
        for pos in range(1, j):
            sign = -sign
            merged = t[: pos - 1] + (add[t[pos - 1]][t[pos]],) + t[pos + 1 :]
            data[tuple_index(merged, n)][col] += sign
        data[tuple_index(t[: j - 1], n)][col] -= sign
    return IntegerMatrix(n ** (j - 1), n**j, data)


def column_matches_trivial_reduced(structure: LinearCycleSet, j: int) -> bool:
    """The i = 0 column is the complex of the underlying abelian group.

    Exactly: dv(0, j) is the negated bar-type boundary of (A, +).  Against
    the reduced boundary of the trivial dot action the match holds modulo
    the linearity relations of the target degree: columns of
    dv(0, j) + boundary(trivial, j) must lie in the relation lattice.
    Both statements are checked.
    """
    if j < 2:
        raise ParameterError("column comparison needs j >= 2")
    n = structure.order
    trivial = LinearCycleSet(
        n,
        [list(row) for row in structure.add],
        [[b for b in range(n)] for _ in range(n)],
    )
    dv = dv_matrix(structure, 0, j)
    if dv != _bar_matrix(structure, j).scaled(-1):
        return False
    red = reduced_boundary_matrix(trivial, j)
    total = IntegerMatrix(
        dv.rows,
        dv.cols,
        [[dv.data[r][c] + red.data[r][c] for c in range(dv.cols)] for r in range(dv.rows)],
    )
    tester = LatticeTester(linearity_rows(structure, j - 1).transpose())
    return tester.contains_all(total)
