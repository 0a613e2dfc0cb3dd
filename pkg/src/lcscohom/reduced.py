"""The reduced chain and cochain complexes of a linear cycle set.

Degree-k chains are formal sums over k-tuples of elements; the reduced
complex imposes linearity in the last coordinate, realized here as an
explicit relation lattice over the free module on A^k.  Cochains are
value tables over the lexicographically ordered tuple basis, and the
matrix of the degree-k coboundary is the transpose of the degree-(k+1)
boundary matrix.

Degree-k bases grow as |A|^k, so everything checks the basis budget
before materializing matrices.

The boundary of a tuple (a_1, ..., a_k) is

    (a_1.a_2, ..., a_1.a_k)
    + sum over i = 1..k-2 of (-1)^i (a_1, ..., a_i + a_{i+1}, ..., a_k)
    + (-1)^(k-1) (a_1, ..., a_{k-2}, a_k)

with the degree-1 boundary zero.  The unconstrained companion complex
(`cs_*` functions) instead uses all set-theoretic maps and the boundary

    sum over i = 1..k-1 of (-1)^(i-1)
        [ (a_i.a_1, .., a_i.a_{i-1}, a_i.a_{i+1}, .., a_i.a_k)
          - (a_1, .., a_{i-1}, a_{i+1}, .., a_k) ].
"""

import itertools
from dataclasses import dataclass

from .abelian import FiniteAbelianGroup, merge_invariants, parse_group_spec
from .budget import check_basis
from .errors import (
    DegreeError,
    LinearityError,
    MalformedTableError,
    ShapeError,
)
from .linalg import (
    IntegerMatrix,
    LatticeTester,
    hstack,
    integer_kernel,
    kernel_mod_m,
    lattice_quotient_invariants,
    subquotient_invariants,
    vstack,
)
from .structures import LinearCycleSet, require_valid_lcs

__all__ = [
    "Cochain",
    "tuple_index",
    "all_tuples",
    "reduced_boundary_matrix",
    "linearity_rows",
    "degenerate_indices",
    "cochain_space_generators",
    "reduced_coboundary",
    "reduced_cohomology",
    "reduced_homology",
    "cs_chain_matrix",
    "cs_coboundary_matrix",
    "cs_cocycle_group",
    "cs_cohomology",
    "antisymmetrization_matrix",
    "antisymmetrization_is_chain_map",
    "cochain_from_dict",
]


def all_tuples(n: int, k: int):
    return itertools.product(range(n), repeat=k)


def tuple_index(t, n: int) -> int:
    idx = 0
    for x in t:
        idx = idx * n + x
    return idx


def _check_degree(k: int):
    if not isinstance(k, int) or k < 1:
        raise DegreeError(f"degree must be an integer >= 1, got {k!r}")


def reduced_boundary_matrix(structure: LinearCycleSet, k: int) -> IntegerMatrix:
    """Matrix of the degree-k boundary on free modules, A^k -> A^(k-1).

    Rows are indexed by (k-1)-tuples, columns by k-tuples, both in
    lexicographic order; entries are the integer multiplicities gathered
    from coinciding terms.  Degree 1 yields the zero map into nothing,
    encoded as a matrix with 0 rows.
    """
    _check_degree(k)
    n = structure.order
    check_basis(n**k, f"the degree-{k} tuple basis")
    if k == 1:
        return IntegerMatrix.zeros(0, n)
    add, dot = structure.add, structure.dot
    data = [[0] * n**k for _ in range(n ** (k - 1))]
    for col, t in enumerate(all_tuples(n, k)):
        head = dot[t[0]]
        first = tuple(head[x] for x in t[1:])
        data[tuple_index(first, n)][col] += 1
        sign = 1
        for i in range(1, k - 1):
            sign = -sign
            merged = t[: i - 1] + (add[t[i - 1]][t[i]],) + t[i + 1 :]
            data[tuple_index(merged, n)][col] += sign
        sign = -sign
        last = t[: k - 2] + (t[k - 1],)
        data[tuple_index(last, n)][col] += sign
    return IntegerMatrix(n ** (k - 1), n**k, data)


def linearity_rows(structure: LinearCycleSet, k: int) -> IntegerMatrix:
    """Constraint rows expressing linearity in the last coordinate.

    One row per (prefix, a, b): the value at (prefix, a + b) minus the
    values at (prefix, a) and (prefix, b).  Kernel mod m = the group of
    last-linear cochains; transposed columns = the relation lattice of
    the chain-side presentation.
    """
    _check_degree(k)
    n = structure.order
    check_basis(n**k, f"the degree-{k} tuple basis")
    add = structure.add
    cols = n**k
    data = []
    for prefix in all_tuples(n, k - 1):
        base = tuple_index(prefix, n) * n
        for a in range(n):
            for b in range(n):
                row = [0] * cols
                row[base + add[a][b]] += 1
                row[base + a] -= 1
                row[base + b] -= 1
                data.append(row)
    return IntegerMatrix(len(data), cols, data)


def degenerate_indices(structure: LinearCycleSet, k: int):
    """Indices of tuples containing the additive neutral element."""
    _check_degree(k)
    n = structure.order
    zero = structure.zero
    return [i for i, t in enumerate(all_tuples(n, k)) if zero in t]


def _degenerate_rows(structure: LinearCycleSet, k: int) -> IntegerMatrix:
    n = structure.order
    cols = n**k
    data = []
    for i in degenerate_indices(structure, k):
        row = [0] * cols
        row[i] = 1
        data.append(row)
    return IntegerMatrix(len(data), cols, data)


def cochain_space_generators(
    structure: LinearCycleSet,
    k: int,
    m: int,
    normalized: bool = False,
) -> IntegerMatrix:
    """Generators (mod m) of the degree-k cochain group.

    Last-linear value tables, additionally vanishing on degenerate tuples
    when normalized.
    """
    constraints = linearity_rows(structure, k)
    if normalized:
        constraints = vstack([constraints, _degenerate_rows(structure, k)])
    return kernel_mod_m(constraints, m)


def _relation_lattice(structure, k, m, normalized):
    """Chain-side relation lattice inside Z^(n^k): linearity columns,
    degenerate generators when normalized, and m times the identity."""
    n = structure.order
    parts = [linearity_rows(structure, k).transpose()]
    if normalized:
        parts.append(_degenerate_rows(structure, k).transpose())
    parts.append(IntegerMatrix.identity(n**k).scaled(m))
    return hstack(parts)


@dataclass
class Cochain:
    """A degree-k cochain: one coefficient-group element per k-tuple.

    Values are stored flat in lexicographic tuple order.  The class does
    not itself require linearity; membership tests are explicit so that
    raw value tables can be inspected and reported on.
    """

    base: LinearCycleSet
    coeffs: FiniteAbelianGroup
    degree: int
    values: tuple

    def __post_init__(self):
        _check_degree(self.degree)
        expected = self.base.order**self.degree
        if len(self.values) != expected:
            raise ShapeError(
                f"degree-{self.degree} cochain needs {expected} values, got {len(self.values)}"
            )
        width = len(self.coeffs.factors)
        for v in self.values:
            if len(v) != width:
                raise ShapeError(
                    f"cochain value {v!r} does not match the {width}-factor coefficient group"
                )
        self.values = tuple(self.coeffs.reduce(v) for v in self.values)

    @classmethod
    def zero(cls, base, coeffs, degree):
        return cls(base, coeffs, degree, (coeffs.zero,) * base.order**degree)

    @classmethod
    def from_callable(cls, base, coeffs, degree, fn):
        values = tuple(fn(*t) for t in all_tuples(base.order, degree))
        return cls(base, coeffs, degree, values)

    def value(self, t):
        return self.values[tuple_index(t, self.base.order)]

    def __call__(self, *args):
        return self.value(args)

    def linearity_violation(self):
        """A witness (prefix, a, b) where last-coordinate linearity fails."""
        n = self.base.order
        add = self.base.add
        g = self.coeffs
        for prefix in all_tuples(n, self.degree - 1):
            base = tuple_index(prefix, n) * n
            vals = self.values
            for a in range(n):
                for b in range(n):
                    lhs = vals[base + add[a][b]]
                    rhs = g.add(vals[base + a], vals[base + b])
                    if lhs != rhs:
                        return (prefix, a, b)
        return None

    def degenerate_violation(self):
        """A degenerate tuple on which the cochain is nonzero, if any."""
        n = self.base.order
        zero = self.coeffs.zero
        for i, t in enumerate(all_tuples(n, self.degree)):
            if self.base.zero in t and self.values[i] != zero:
                return t
        return None

    def is_linear_in_last(self) -> bool:
        return self.linearity_violation() is None

    def is_normalized(self) -> bool:
        return self.is_linear_in_last() and self.degenerate_violation() is None

    def __add__(self, other):
        self._match(other)
        g = self.coeffs
        return Cochain(
            self.base,
            g,
            self.degree,
            tuple(g.add(a, b) for a, b in zip(self.values, other.values)),
        )

    def __sub__(self, other):
        self._match(other)
        g = self.coeffs
        return Cochain(
            self.base,
            g,
            self.degree,
            tuple(g.sub(a, b) for a, b in zip(self.values, other.values)),
        )

    def __neg__(self):
        g = self.coeffs
        return Cochain(self.base, g, self.degree, tuple(g.neg(a) for a in self.values))

    def _match(self, other):
        if (
            not isinstance(other, Cochain)
            or other.base != self.base
            or other.coeffs != self.coeffs
            or other.degree != self.degree
        ):
            raise ShapeError("cochains live on different complexes")

    def to_dict(self) -> dict:
        single = len(self.coeffs.factors) == 1
        values = [v[0] if single else list(v) for v in self.values]
        return {"degree": self.degree, "coeff": str(self.coeffs), "values": values}


def cochain_from_dict(
    data, base: LinearCycleSet, coeffs: FiniteAbelianGroup = None
) -> Cochain:
    """Parse a cochain file dict against a structure.

    The coefficient group comes from the optional "coeff" key or from the
    caller; when both are given they must agree.
    """
    if not isinstance(data, dict):
        raise MalformedTableError("cochain file must be a JSON object")
    extra = set(data) - {"degree", "coeff", "values"}
    if extra:
        raise MalformedTableError(f"unknown keys in cochain file: {sorted(extra)}")
    if "coeff" in data:
        spec = data["coeff"]
        if not isinstance(spec, str):
            raise MalformedTableError("cochain coeff must be a group spec string")
        declared = parse_group_spec(spec)
        if coeffs is not None and declared != coeffs:
            raise MalformedTableError(
                f"cochain file declares coefficients {declared}, expected {coeffs}"
            )
        coeffs = declared
    if coeffs is None:
        raise MalformedTableError("cochain file lacks a coeff key and none was supplied")
    degree = data.get("degree")
    if not isinstance(degree, int) or isinstance(degree, bool) or degree < 1:
        raise MalformedTableError(f"cochain degree must be an integer >= 1, got {degree!r}")
    raw = data.get("values")
    expected = base.order**degree
    if not isinstance(raw, list) or len(raw) != expected:
        raise MalformedTableError(f"cochain of degree {degree} needs exactly {expected} values")
    width = len(coeffs.factors)
    values = []
    for v in raw:
        if isinstance(v, int) and not isinstance(v, bool) and width == 1:
            elem = (v,)
        elif (
            isinstance(v, list)
            and len(v) == width
            and all(isinstance(x, int) and not isinstance(x, bool) for x in v)
        ):
            elem = tuple(v)
        else:
            raise MalformedTableError(
                f"cochain values must be ints (single factor) or lists of {width} ints"
            )
        values.append(coeffs.reduce(elem))
    return Cochain(base, coeffs, degree, tuple(values))


def reduced_coboundary(f: Cochain, check: bool = True) -> Cochain:
    """The degree-(k+1) coboundary of a degree-k cochain, evaluated directly.

    With check=True the input must be linear in its last coordinate (the
    membership condition of the reduced complex); a violation raises
    LinearityError with a witness.
    """
    if check:
        witness = f.linearity_violation()
        if witness is not None:
            raise LinearityError(
                f"cochain is not linear in its last coordinate at {witness}"
            )
    base, g, k = f.base, f.coeffs, f.degree
    n = base.order
    check_basis(n ** (k + 1), f"the degree-{k + 1} tuple basis")
    add, dot = base.add, base.dot

    def value(t):
        head = dot[t[0]]
        acc = f.value(tuple(head[x] for x in t[1:]))
        sign = 1
        for i in range(1, k):
            sign = -sign
            merged = t[: i - 1] + (add[t[i - 1]][t[i]],) + t[i + 1 :]
            acc = g.add(acc, g.scale(sign, f.value(merged)))
        sign = -sign
        acc = g.add(acc, g.scale(sign, f.value(t[: k - 1] + (t[k],))))
        return acc

    values = tuple(value(t) for t in all_tuples(n, k + 1))
    return Cochain(base, g, k + 1, values)


def reduced_cohomology(
    structure: LinearCycleSet,
    coeffs: FiniteAbelianGroup,
    k: int,
    normalized: bool = False,
):
    """Invariant factors of the degree-k reduced cohomology group.

    Kernel of the degree-k coboundary within the last-linear cochains
    (vanishing on degenerate tuples when normalized), modulo coboundaries
    from degree k-1; degree 1 has no coboundaries below.
    """
    require_valid_lcs(structure)
    _check_degree(k)
    n = structure.order
    check_basis(n**k, f"the degree-{k} tuple basis")
    check_basis(n ** (k + 1), f"the degree-{k + 1} tuple basis")
    d_out = reduced_boundary_matrix(structure, k + 1).transpose()
    d_in_free = reduced_boundary_matrix(structure, k).transpose() if k >= 2 else None
    parts = []
    for m in coeffs.factors:
        gens = cochain_space_generators(structure, k, m, normalized)
        if k >= 2:
            d_in = d_in_free @ cochain_space_generators(structure, k - 1, m, normalized)
        else:
            d_in = IntegerMatrix.zeros(n**k, 0)
        parts.append(subquotient_invariants(d_out, d_in, gens, m))
    return merge_invariants(*parts)


def reduced_homology(
    structure: LinearCycleSet,
    coeffs: FiniteAbelianGroup,
    k: int,
    normalized: bool = False,
):
    """Invariant factors of the degree-k reduced homology group.

    Chains are presented as the free module on k-tuples modulo the
    linearity relations (and degenerate generators when normalized); the
    homology lattice quotient is (preimage of relations under the
    boundary) / (boundary image + relations).  Degree 1 is the full
    degree-1 chain group modulo the image from degree 2.
    """
    require_valid_lcs(structure)
    _check_degree(k)
    n = structure.order
    check_basis(n**k, f"the degree-{k} tuple basis")
    check_basis(n ** (k + 1), f"the degree-{k + 1} tuple basis")
    nk = n**k
    m_down = reduced_boundary_matrix(structure, k)
    m_up = reduced_boundary_matrix(structure, k + 1)
    parts = []
    for m in coeffs.factors:
        w_here = _relation_lattice(structure, k, m, normalized)
        if k >= 2:
            w_prev = _relation_lattice(structure, k - 1, m, normalized)
            block = hstack([m_down, w_prev.scaled(-1)])
            ker = integer_kernel(block)
            cycles = IntegerMatrix(nk, ker.cols, [ker.data[i][:] for i in range(nk)])
        else:
            cycles = IntegerMatrix.identity(nk)
        boundaries = hstack([m_up, w_here])
        parts.append(lattice_quotient_invariants(cycles, boundaries))
    return merge_invariants(*parts)


# ---------------------------------------------------------------------------
# The unconstrained companion complex (all set-theoretic cochains)


def cs_chain_matrix(structure: LinearCycleSet, k: int) -> IntegerMatrix:
    """Matrix of the degree-k boundary of the unconstrained complex."""
    _check_degree(k)
    n = structure.order
    check_basis(n**k, f"the degree-{k} tuple basis")
    if k == 1:
        return IntegerMatrix.zeros(0, n)
    dot = structure.dot
    data = [[0] * n**k for _ in range(n ** (k - 1))]
    for col, t in enumerate(all_tuples(n, k)):
        sign = 1
        for i in range(k - 1):
            row = dot[t[i]]
            acted = tuple(row[t[p]] for p in range(k) if p != i)
            data[tuple_index(acted, n)][col] += sign
            dropped = t[:i] + t[i + 1 :]
            data[tuple_index(dropped, n)][col] -= sign
            sign = -sign
    return IntegerMatrix(n ** (k - 1), n**k, data)


def cs_coboundary_matrix(structure: LinearCycleSet, k: int) -> IntegerMatrix:
    """Matrix of the degree-k coboundary: transpose of the degree-(k+1) boundary."""
    return cs_chain_matrix(structure, k + 1).transpose()


def cs_cocycle_group(structure: LinearCycleSet, coeffs: FiniteAbelianGroup, k: int):
    """Invariant factors of the group of degree-k unconstrained cocycles."""
    require_valid_lcs(structure)
    _check_degree(k)
    n = structure.order
    check_basis(n ** (k + 1), f"the degree-{k + 1} tuple basis")
    d_out = cs_coboundary_matrix(structure, k)
    empty = IntegerMatrix.zeros(n**k, 0)
    parts = [
        subquotient_invariants(d_out, empty, IntegerMatrix.identity(n**k), m)
        for m in coeffs.factors
    ]
    return merge_invariants(*parts)


def cs_cohomology(structure: LinearCycleSet, coeffs: FiniteAbelianGroup, k: int):
    """Invariant factors of the degree-k cohomology of the unconstrained complex."""
    require_valid_lcs(structure)
    _check_degree(k)
    n = structure.order
    check_basis(n ** (k + 1), f"the degree-{k + 1} tuple basis")
    d_out = cs_coboundary_matrix(structure, k)
    if k >= 2:
        d_in = cs_chain_matrix(structure, k).transpose()
    else:
        d_in = IntegerMatrix.zeros(n**k, 0)
    parts = [
        subquotient_invariants(d_out, d_in, IntegerMatrix.identity(n**k), m)
        for m in coeffs.factors
    ]
    return merge_invariants(*parts)


# ---------------------------------------------------------------------------
# Antisymmetrization, mapping the unconstrained complex into the reduced one


def _parity(perm) -> int:
    sign = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


def antisymmetrization_matrix(structure: LinearCycleSet, k: int) -> IntegerMatrix:
    """Signed sum over permutations of the first k-1 coordinates.

    Degree 1 and 2 give the identity; composed with the projection to the
    reduced quotient this is a chain map from the unconstrained complex.
    """
    _check_degree(k)
    n = structure.order
    check_basis(n**k, f"the degree-{k} tuple basis")
    size = n**k
    data = [[0] * size for _ in range(size)]
    perms = [(p, _parity(p)) for p in itertools.permutations(range(k - 1))]
    for col, t in enumerate(all_tuples(n, k)):
        for p, sign in perms:
            shuffled = tuple(t[p[i]] for i in range(k - 1)) + (t[k - 1],)
            data[tuple_index(shuffled, n)][col] += sign
    return IntegerMatrix(size, size, data)


def antisymmetrization_is_chain_map(structure: LinearCycleSet, k: int) -> bool:
    """Check boundary . antisym == antisym . cs_boundary modulo linearity.

    The identity holds in the reduced quotient, so the column differences
    must lie in the integer lattice spanned by the linearity relations of
    degree k-1.  Degree 1 is vacuous.
    """
    require_valid_lcs(structure)
    _check_degree(k)
    if k == 1:
        return True
    lhs = reduced_boundary_matrix(structure, k) @ antisymmetrization_matrix(structure, k)
    rhs = antisymmetrization_matrix(structure, k - 1) @ cs_chain_matrix(structure, k)
    diff = IntegerMatrix(
        lhs.rows,
        lhs.cols,
        [
            [lhs.data[i][j] - rhs.data[i][j] for j in range(lhs.cols)]
            for i in range(lhs.rows)
        ],
    )
    tester = LatticeTester(linearity_rows(structure, k - 1).transpose())
    return tester.contains_all(diff)
