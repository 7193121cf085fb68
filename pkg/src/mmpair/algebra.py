"""Finite-dimensional algebras given by structure constants.

Supported kinds:

* ``general`` -- arbitrary bilinear product, full structure-constant table;
* ``anticommutative`` -- bracket with [u,u]=0, table stored only for i<j;
* ``lie`` -- anticommutative plus the Jacobi identity (verified at build);
* ``gl`` -- all n x n matrices under the matrix commutator (elements are
  flattened row-major into length n^2 coordinate vectors).

Elements are plain tuples of exact rationals of length ``dim``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .exact import (
    Matrix,
    ZERO,
    commutator,
    format_rational,
    rat,
    vec_add,
    vec_is_zero,
    vec_sub,
    vec_to_strings,
    vec_zero,
)

KINDS = ("general", "anticommutative", "lie", "gl")


class AlgebraError(ValueError):
    pass


class IndexOutOfRange(AlgebraError):
    pass


class DuplicateEntry(AlgebraError):
    pass


class AxiomViolation(AlgebraError):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class Verdict:
    """Outcome of an exact check: pass, or the first (lexicographic) witness."""

    passed: bool
    witness: tuple | None = None
    residual: tuple | None = None

    def __bool__(self) -> bool:
        return self.passed


@dataclass(frozen=True)
class AlgebraDescriptor:
    name: str
    kind: str
    dim: int
    basis: tuple
    # list of (i, j, k, coefficient); for anticommutative kinds only i < j
    table: tuple = ()
    n: int = 0  # only for kind=gl

    @staticmethod
    def general(name, basis, table):
        return _make_descriptor(name, "general", basis, table)

    @staticmethod
    def anticommutative(name, basis, table):
        return _make_descriptor(name, "anticommutative", basis, table)

    @staticmethod
    def lie(name, basis, table):
        return _make_descriptor(name, "lie", basis, table)

    @staticmethod
    def gl(n: int, name: str | None = None):
        if n < 1:
            raise AlgebraError("gl needs n >= 1")
        basis = tuple(f"E{i}{j}" for i in range(n) for j in range(n))
        return AlgebraDescriptor(name or f"gl{n}", "gl", n * n, basis, (), n)


def _make_descriptor(name, kind, basis, table):
    basis = tuple(basis)
    dim = len(basis)
    norm = []
    seen = set()
    for i, j, k, c in table:
        if not (0 <= i < dim and 0 <= j < dim and 0 <= k < dim):
            raise IndexOutOfRange(f"structure constant index out of range: {(i, j, k)}")
        if (i, j, k) in seen:
            raise DuplicateEntry(f"duplicate structure constant entry {(i, j, k)}")
        seen.add((i, j, k))
        if kind in ("anticommutative", "lie"):
            if i == j:
                if rat(c) != 0:
                    raise AxiomViolation(
                        f"[b{i},b{i}] must vanish in an anticommutative algebra",
                        witness=(i, i),
                    )
                continue
            if i > j:
                raise AlgebraError(
                    f"anticommutative tables are stored for i < j only, got {(i, j)}"
                )
        c = rat(c)
        if c != 0:
            norm.append((i, j, k, c))
    norm.sort(key=lambda e: e[:3])
    return AlgebraDescriptor(name, kind, dim, basis, tuple(norm))


class Algebra:
    """Validated algebra with a bilinear product evaluator."""

    def __init__(self, descriptor: AlgebraDescriptor):
        self.descriptor = descriptor
        self.dim = descriptor.dim
        self.kind = descriptor.kind
        self.name = descriptor.name
        self.n = descriptor.n
        # (i, j) -> tuple of (k, c)
        prods: dict = {}
        for i, j, k, c in descriptor.table:
            prods.setdefault((i, j), []).append((k, c))
            if descriptor.kind in ("anticommutative", "lie"):
                prods.setdefault((j, i), []).append((k, -c))
        self._prods = {key: tuple(v) for key, v in prods.items()}

    # -- element helpers --------------------------------------------------
    def zero(self) -> tuple:
        return vec_zero(self.dim)

    def basis_element(self, i: int) -> tuple:
        if not 0 <= i < self.dim:
            raise IndexOutOfRange(f"basis index {i} out of range for dim {self.dim}")
        return tuple(rat(1) if k == i else ZERO for k in range(self.dim))

    def element(self, coords) -> tuple:
        coords = tuple(rat(c) for c in coords)
        if len(coords) != self.dim:
            raise AlgebraError(f"element length {len(coords)} != dim {self.dim}")
        return coords

    def to_matrix(self, u: tuple) -> Matrix:
        if self.kind != "gl":
            raise AlgebraError("to_matrix applies to gl algebras only")
        return Matrix.from_flat(self.n, self.n, u)

    # -- the product -------------------------------------------------------
    def product(self, u: tuple, v: tuple) -> tuple:
        """Bilinear extension of the structure-constant table.

        For anticommutative/lie kinds this is the bracket; for gl it is the
        matrix commutator of the two flattened matrices.
        """
        if len(u) != self.dim or len(v) != self.dim:
            raise AlgebraError("element dimension mismatch")
        if self.kind == "gl":
            a = Matrix.from_flat(self.n, self.n, u)
            b = Matrix.from_flat(self.n, self.n, v)
            return commutator(a, b).flatten()
        out = [ZERO] * self.dim
        prods = self._prods
        for i, ci in enumerate(u):
            if ci == 0:
                continue
            for j, cj in enumerate(v):
                if cj == 0:
                    continue
                terms = prods.get((i, j))
                if terms:
                    f = ci * cj
                    for k, c in terms:
                        out[k] += f * c
        return tuple(out)

    bracket = product

    def basis_product(self, i: int, j: int) -> tuple:
        out = [ZERO] * self.dim
        if self.kind == "gl":
            return self.product(self.basis_element(i), self.basis_element(j))
        for k, c in self._prods.get((i, j), ()):
            out[k] += c
        return tuple(out)

    def __repr__(self):
        return f"Algebra({self.name}, kind={self.kind}, dim={self.dim})"


def build_algebra(descriptor: AlgebraDescriptor) -> Algebra:
    """Validate the kind-specific axioms and return the algebra.

    anticommutative: the stored table already forces [u,u]=0.
    lie: additionally the Jacobi identity on all basis triples.
    """
    if descriptor.kind not in KINDS:
        raise AlgebraError(f"unknown kind {descriptor.kind!r}")
    alg = Algebra(descriptor)
    if descriptor.kind == "lie":
        d = alg.dim
        for i in range(d):
            for j in range(d):
                for k in range(d):
                    res = jacobian_basis(alg, i, j, k)
                    if not vec_is_zero(res):
                        raise AxiomViolation(
                            f"Jacobi identity fails at basis triple ({i},{j},{k})",
                            witness=(i, j, k),
                        )
    return alg


def jacobian(alg: Algebra, x: tuple, y: tuple, z: tuple) -> tuple:
    """[[x,y],z] + [[y,z],x] + [[z,x],y]."""
    b = alg.product
    return vec_add(vec_add(b(b(x, y), z), b(b(y, z), x)), b(b(z, x), y))


def jacobian_basis(alg: Algebra, i: int, j: int, k: int) -> tuple:
    return jacobian(alg, alg.basis_element(i), alg.basis_element(j), alg.basis_element(k))


def commutator_algebra(alg: Algebra) -> Algebra:
    """The anticommutative algebra on the same space with bracket xy - yx."""
    if alg.kind != "general":
        raise AlgebraError("commutator_algebra expects a general algebra")
    table = []
    for i in range(alg.dim):
        for j in range(i + 1, alg.dim):
            br = vec_sub(alg.basis_product(i, j), alg.basis_product(j, i))
            for k, c in enumerate(br):
                if c != 0:
                    table.append((i, j, k, c))
    desc = AlgebraDescriptor.anticommutative(alg.name + "-minus", alg.descriptor.basis, table)
    return build_algebra(desc)


def associator(alg: Algebra, x: tuple, y: tuple, z: tuple) -> tuple:
    """(xy)z - x(yz)."""
    p = alg.product
    return vec_sub(p(p(x, y), z), p(x, p(y, z)))


def alternativity_check(alg: Algebra) -> Verdict:
    """Linearized alternative laws on all basis triples.

    (x,z,y) + (z,x,y) = 0 and (y,x,z) + (y,z,x) = 0 with
    (a,b,c) = (ab)c - a(bc).  Over the rationals this is equivalent to the
    pointwise laws (x,x,y) = (y,x,x) = 0.
    """
    if alg.kind != "general":
        raise AlgebraError("alternativity_check expects a general algebra")
    e = alg.basis_element
    for i in range(alg.dim):
        for j in range(alg.dim):
            for k in range(alg.dim):
                x, y, z = e(i), e(j), e(k)
                left = vec_add(associator(alg, x, z, y), associator(alg, z, x, y))
                if not vec_is_zero(left):
                    return Verdict(False, ("left", i, j, k), left)
                right = vec_add(associator(alg, y, x, z), associator(alg, y, z, x))
                if not vec_is_zero(right):
                    return Verdict(False, ("right", i, j, k), right)
    return Verdict(True)


def maltsev_check(alg: Algebra) -> Verdict:
    """Linearized Mal'tsev identity sweep.

    The identity [J(x,y,z),x] = J(x,y,[x,z]) is quadratic in x; its full
    linearization in x is checked on all basis 4-tuples (x1,x2,y,z):

        [J(x1,y,z),x2] + [J(x2,y,z),x1] = J(x1,y,[x2,z]) + J(x2,y,[x1,z])
    """
    if alg.kind not in ("anticommutative", "lie"):
        raise AlgebraError("maltsev_check expects an anticommutative algebra")
    e = alg.basis_element
    b = alg.product
    d = alg.dim
    for i1 in range(d):
        for i2 in range(d):
            for j in range(d):
                for k in range(d):
                    x1, x2, y, z = e(i1), e(i2), e(j), e(k)
                    lhs = vec_add(
                        b(jacobian(alg, x1, y, z), x2),
                        b(jacobian(alg, x2, y, z), x1),
                    )
                    rhs = vec_add(
                        jacobian(alg, x1, y, b(x2, z)),
                        jacobian(alg, x2, y, b(x1, z)),
                    )
                    res = vec_sub(lhs, rhs)
                    if not vec_is_zero(res):
                        return Verdict(False, (i1, i2, j, k), res)
    return Verdict(True)


# ---------------------------------------------------------------------------
# JSON form
# ---------------------------------------------------------------------------

_ALGEBRA_KEYS_TABLE = {"name", "kind", "dim", "basis", "table"}
_ALGEBRA_KEYS_GL = {"name", "kind", "n", "basis"}


def descriptor_from_dict(data: dict) -> AlgebraDescriptor:
    if not isinstance(data, dict):
        raise AlgebraError("algebra description must be a JSON object")
    kind = data.get("kind")
    if kind == "gl":
        unknown = set(data) - _ALGEBRA_KEYS_GL
        if unknown:
            raise AlgebraError(f"unknown keys in algebra file: {sorted(unknown)}")
        return AlgebraDescriptor.gl(int(data["n"]), data.get("name"))
    if kind not in ("general", "anticommutative", "lie"):
        raise AlgebraError(f"unknown algebra kind: {kind!r}")
    unknown = set(data) - _ALGEBRA_KEYS_TABLE
    if unknown:
        raise AlgebraError(f"unknown keys in algebra file: {sorted(unknown)}")
    basis = data.get("basis")
    dim = data.get("dim", len(basis) if basis else None)
    if basis is None:
        if dim is None:
            raise AlgebraError("algebra file needs 'basis' or 'dim'")
        basis = [f"b{i}" for i in range(int(dim))]
    if dim is not None and int(dim) != len(basis):
        raise AlgebraError("'dim' disagrees with length of 'basis'")
    table = []
    for entry in data.get("table", []):
        if len(entry) != 4:
            raise AlgebraError(f"table entry must be [i, j, k, coeff]: {entry}")
        i, j, k, c = entry
        table.append((int(i), int(j), int(k), rat(c)))
    return _make_descriptor(data.get("name", "anonymous"), kind, basis, table)


def descriptor_to_dict(desc: AlgebraDescriptor) -> dict:
    if desc.kind == "gl":
        return {"name": desc.name, "kind": "gl", "n": desc.n}
    return {
        "name": desc.name,
        "kind": desc.kind,
        "dim": desc.dim,
        "basis": list(desc.basis),
        "table": [[i, j, k, format_rational(c)] for i, j, k, c in desc.table],
    }


__all__ = [
    "Algebra",
    "AlgebraDescriptor",
    "AlgebraError",
    "AxiomViolation",
    "DuplicateEntry",
    "IndexOutOfRange",
    "Verdict",
    "alternativity_check",
    "associator",
    "build_algebra",
    "commutator_algebra",
    "descriptor_from_dict",
    "descriptor_to_dict",
    "jacobian",
    "jacobian_basis",
    "maltsev_check",
]
