"""Finite commutative F_p-algebras presented by structure constants.

A ring here is an F_p-vector space with basis e_0..e_{d-1}, a symmetric
multiplication table e_i * e_j = sum_k c_ijk e_k, and a declared unit
vector.  Everything downstream (modules, resolutions, dimensions) works
relative to a multiplicative subset S of such a ring, so this module also
houses multiplicative-set closure, ideal enumeration, and prime
complements.

Element order matters: all "smallest witness" searches elsewhere scan
elements lexicographically by coefficient vector, which this module fixes
once via RingElement ordering and MultSet iteration order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from . import gfmat
from .errors import (
    BadUnit,
    InputError,
    NonAssociative,
    NonCommutative,
    NotPrime,
    NotPrimeChar,
    RingMismatch,
)

__all__ = [
    "RingElement",
    "FiniteAlgebra",
    "MultSet",
    "Ideal",
    "IdealList",
    "QuotientData",
    "build_algebra",
    "prime_field",
    "truncated_polynomial",
    "direct_product",
    "mult_closure",
    "enumerate_ideals",
    "complement_multset",
    "quotient_algebra",
    "same_ring",
    "ring_to_spec",
    "ring_from_spec",
]

# Exhaustive element sweeps (radical, ideal enumeration, complements) are
# only sensible for small rings; this cap keeps them honest.
MAX_ENUMERABLE = 1 << 16


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


@dataclass(frozen=True, order=True)
class RingElement:
    """An element of a FiniteAlgebra, ordered lexicographically by vector.

    The ring reference is excluded from ordering and hashing so elements
    sort purely by coefficient vector, which is the canonical witness
    order used everywhere.
    """

    vec: tuple[int, ...]
    ring: "FiniteAlgebra" = field(compare=False, repr=False)

    def __post_init__(self):
        if len(self.vec) != self.ring.dim:
            raise InputError("element vector length %d, ring dimension %d"
                             % (len(self.vec), self.ring.dim))

    @property
    def array(self) -> np.ndarray:
        return np.array(self.vec, dtype=np.int64)

    def __mul__(self, other: "RingElement") -> "RingElement":
        if not same_ring(self.ring, other.ring):
            raise RingMismatch("elements of different rings")
        return self.ring.element(self.ring.mul_vec(self.array, other.array))

    def __add__(self, other: "RingElement") -> "RingElement":
        if not same_ring(self.ring, other.ring):
            raise RingMismatch("elements of different rings")
        return self.ring.element((self.array + other.array) % self.ring.p)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.vec)

    def label(self) -> str:
        """Human-readable form like '0', 'e1', or 'e1+2*f'."""
        parts = []
        for c, name in zip(self.vec, self.ring.basis_labels):
            if c == 0:
                continue
            parts.append(name if c == 1 else "%d*%s" % (c, name))
        return "+".join(parts) if parts else "0"


class FiniteAlgebra:
    """Commutative F_p-algebra given by a validated structure table.

    Attributes:
        p: prime characteristic.
        dim: F_p-dimension d.
        basis_labels: tuple of d distinct label strings.
        table: (d, d, d) int64 array, table[i, j] = vector of e_i * e_j.
        unit: length-d int64 array, the multiplicative identity.

    Instances are immutable by convention.  Derived data (left
    multiplication matrices, the radical, the ideal list, resolutions of
    modules over the ring) is cached on first use; caches only ever gain
    entries, so sharing an instance across threads is safe for readers.
    """

    def __init__(self, p: int, basis_labels, table, unit):
        self.p = int(p)
        self.basis_labels = tuple(str(s) for s in basis_labels)
        self.dim = len(self.basis_labels)
        self.table = np.mod(np.array(table, dtype=np.int64), self.p)
        self.unit = np.mod(np.array(unit, dtype=np.int64), self.p)
        self._validate()
        self._left_muls = None
        self._radical = None
        self._ideal_list = None
        self._elements = None

    # -- construction-time validation ------------------------------------

    def _validate(self):
        if not _is_prime(self.p):
            raise NotPrimeChar(self.p)
        d = self.dim
        if d == 0:
            raise InputError("ring dimension must be positive")
        if len(set(self.basis_labels)) != d:
            raise InputError("basis labels must be distinct")
        if self.table.shape != (d, d, d):
            raise InputError("structure table must have shape (%d, %d, %d)" % (d, d, d))
        if self.unit.shape != (d,):
            raise InputError("unit vector must have length %d" % d)
        for i in range(d):
            for j in range(i + 1, d):
                if not np.array_equal(self.table[i, j], self.table[j, i]):
                    raise NonCommutative(i, j, self.basis_labels)
        # left multiplication matrices straight from the table
        lm = [self.table[i].T.copy() for i in range(d)]
        for i in range(d):
            for j in range(d):
                lhs_vec = self.table[i, j]
                lhs = sum(int(lhs_vec[k]) * lm[k] for k in range(d)) % self.p
                rhs = (lm[i] @ lm[j]) % self.p
                if not np.array_equal(lhs, rhs):
                    # (e_i e_j) e_k != e_i (e_j e_k) for the first bad k
                    bad = np.nonzero(np.any((lhs - rhs) % self.p, axis=0))[0]
                    raise NonAssociative(i, j, int(bad[0]), self.basis_labels)
        unit_mat = sum(int(self.unit[i]) * lm[i] for i in range(d)) % self.p
        diff = np.nonzero(np.any((unit_mat - np.eye(d, dtype=np.int64)) % self.p, axis=0))[0]
        if diff.size:
            raise BadUnit(int(diff[0]), self.basis_labels)

    # -- elements ---------------------------------------------------------

    def element(self, vec) -> RingElement:
        arr = np.mod(np.array(vec, dtype=np.int64).reshape(-1), self.p)
        return RingElement(tuple(int(c) for c in arr), self)

    @property
    def zero(self) -> RingElement:
        return self.element([0] * self.dim)

    @property
    def one(self) -> RingElement:
        return self.element(self.unit)

    def basis_element(self, i: int) -> RingElement:
        vec = [0] * self.dim
        vec[i] = 1
        return self.element(vec)

    def mul_vec(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        return np.einsum("i,j,ijk->k", u % self.p, v % self.p, self.table) % self.p

    def left_mul_matrix(self, vec) -> np.ndarray:
        """Matrix of multiplication by the element on the ring itself."""
        arr = np.mod(np.array(vec, dtype=np.int64).reshape(-1), self.p)
        lms = self.left_muls()
        out = np.zeros((self.dim, self.dim), dtype=np.int64)
        for i in range(self.dim):
            if arr[i]:
                out = (out + int(arr[i]) * lms[i]) % self.p
        return out

    def left_muls(self) -> list[np.ndarray]:
        if self._left_muls is None:
            self._left_muls = [self.table[i].T.copy() for i in range(self.dim)]
        return self._left_muls

    @property
    def size(self) -> int:
        return self.p ** self.dim

    def elements(self) -> list[RingElement]:
        """All ring elements in canonical (lexicographic) order."""
        if self._elements is None:
            if self.size > MAX_ENUMERABLE:
                raise InputError("ring too large to enumerate (%d elements)" % self.size)
            self._elements = [
                self.element(v)
                for v in itertools.product(range(self.p), repeat=self.dim)
            ]
        return self._elements

    def is_nilpotent(self, elt: RingElement) -> bool:
        m = self.left_mul_matrix(elt.array)
        power = np.eye(self.dim, dtype=np.int64)
        for _ in range(self.dim):
            power = (power @ m) % self.p
        return not power.any()

    def radical_basis(self) -> np.ndarray:
        """Basis (columns) of the ideal of nilpotent elements.

        For a finite-dimensional commutative algebra this is the Jacobson
        radical.  Computed by exhaustive element sweep, which the size cap
        keeps cheap.
        """
        if self._radical is None:
            nil_vecs = [e.array for e in self.elements() if self.is_nilpotent(e)]
            if nil_vecs:
                stacked = np.stack(nil_vecs, axis=1)
                self._radical = gfmat.column_space(stacked, self.p)
            else:
                self._radical = gfmat.zeros(self.dim, 0)
        return self._radical

    def __repr__(self):
        return "FiniteAlgebra(p=%d, basis=%s)" % (self.p, list(self.basis_labels))


def same_ring(a: FiniteAlgebra, b: FiniteAlgebra) -> bool:
    """Structural ring equality; survives serialization round trips."""
    if a is b:
        return True
    return (
        a.p == b.p
        and a.dim == b.dim
        and np.array_equal(a.table, b.table)
        and np.array_equal(a.unit, b.unit)
    )


# -- constructors ----------------------------------------------------------


def build_algebra(p: int, basis_labels, table, unit) -> FiniteAlgebra:
    """Validate and build an algebra from raw structure data.

    Raises NotPrimeChar, NonCommutative, NonAssociative or BadUnit naming
    the first violating basis tuple.
    """
    return FiniteAlgebra(p, basis_labels, table, unit)


def prime_field(p: int) -> FiniteAlgebra:
    return FiniteAlgebra(p, ("1",), [[[1]]], [1])


def truncated_polynomial(p: int, k: int, var: str = "t") -> FiniteAlgebra:
    """F_p[t] / (t^k) on the basis 1, t, ..., t^{k-1}."""
    if k < 1:
        raise InputError("truncation order must be >= 1")
    labels = ["1"] + [var if n == 1 else "%s%d" % (var, n) for n in range(1, k)]
    table = np.zeros((k, k, k), dtype=np.int64)
    for i in range(k):
        for j in range(k):
            if i + j < k:
                table[i, j, i + j] = 1
    unit = [1] + [0] * (k - 1)
    return FiniteAlgebra(p, labels, table, unit)


def direct_product(a: FiniteAlgebra, b: FiniteAlgebra,
                   labels: tuple[str, ...] | None = None) -> FiniteAlgebra:
    """Product ring a x b with componentwise operations.

    The basis is the concatenation of the two bases; the unit is the sum
    of the two units.  Optional labels override the default qualified
    names.
    """
    if a.p != b.p:
        raise RingMismatch("direct product needs equal characteristic")
    d1, d2 = a.dim, b.dim
    d = d1 + d2
    if labels is None:
        labels = tuple("a.%s" % s for s in a.basis_labels) + tuple(
            "b.%s" % s for s in b.basis_labels)
    table = np.zeros((d, d, d), dtype=np.int64)
    table[:d1, :d1, :d1] = a.table
    table[d1:, d1:, d1:] = b.table
    unit = np.concatenate([a.unit, b.unit])
    return FiniteAlgebra(a.p, labels, table, unit)


# -- multiplicative sets ---------------------------------------------------


@dataclass(frozen=True)
class MultSet:
    """A multiplicatively closed subset of a finite ring, 1 included.

    Elements are stored sorted in canonical order; iteration yields that
    order, which is what every smallest-witness search relies on.  The
    degenerate flag records whether 0 is a member (every module is then
    uniformly S-torsion).
    """

    ring: FiniteAlgebra
    elements: tuple[RingElement, ...]
    degenerate: bool

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, elt: RingElement) -> bool:
        return elt in self.elements

    def labels(self) -> list[str]:
        return [e.label() for e in self.elements]

    def validate(self) -> None:
        """Check closure and unit membership; raises InputError if violated."""
        if self.ring.one not in self.elements:
            raise InputError("multiplicative set must contain 1")
        members = set(self.elements)
        for x in self.elements:
            for y in self.elements:
                if x * y not in members:
                    raise InputError(
                        "multiplicative set not closed: %s * %s = %s missing"
                        % (x.label(), y.label(), (x * y).label()))


def mult_closure(ring: FiniteAlgebra, seeds) -> MultSet:
    """Smallest multiplicatively closed set containing 1 and the seeds.

    Accepts RingElement or raw coefficient vectors.  Fixpoint closure
    under pairwise products; termination is bounded by ring size.
    """
    current: set[RingElement] = {ring.one}
    for s in seeds:
        current.add(s if isinstance(s, RingElement) else ring.element(s))
    while True:
        new = set()
        items = sorted(current)
        for x in items:
            for y in items:
                z = x * y
                if z not in current:
                    new.add(z)
        if not new:
            break
        current |= new
    elements = tuple(sorted(current))
    return MultSet(ring, elements, any(e.is_zero() for e in elements))


# -- ideals -----------------------------------------------------------------


def _subspace_key(basis: np.ndarray, p: int) -> tuple:
    """Canonical key for a subspace spanned by the given columns."""
    if basis.shape[1] == 0:
        return ()
    r, pivots = gfmat.rref(basis.T, p)
    return tuple(tuple(int(c) for c in row) for row in r[: len(pivots)])


@dataclass(frozen=True)
class Ideal:
    """An ideal of a finite algebra, stored as an F_p-subspace basis."""

    ring: FiniteAlgebra
    basis: np.ndarray  # dim x k columns, canonical
    is_prime: bool
    is_maximal: bool

    @property
    def fdim(self) -> int:
        return self.basis.shape[1]

    def contains(self, elt: RingElement) -> bool:
        if self.fdim == 0:
            return elt.is_zero()
        return gfmat.in_column_span(self.basis, elt.array, self.ring.p)

    def element_set(self) -> frozenset:
        combos = itertools.product(range(self.ring.p), repeat=self.fdim)
        out = set()
        for c in combos:
            v = (self.basis @ np.array(c, dtype=np.int64)) % self.ring.p
            out.add(tuple(int(x) for x in v))
        return frozenset(out)

    def label(self) -> str:
        if self.fdim == 0:
            return "(0)"
        gens = [self.ring.element(self.basis[:, j]).label() for j in range(self.fdim)]
        return "(" + ", ".join(gens) + ")"

    def key(self) -> tuple:
        return _subspace_key(self.basis, self.ring.p)


@dataclass(frozen=True)
class IdealList:
    ring: FiniteAlgebra
    ideals: tuple[Ideal, ...]

    def __iter__(self):
        return iter(self.ideals)

    def __len__(self):
        return len(self.ideals)

    @property
    def primes(self) -> tuple[Ideal, ...]:
        return tuple(i for i in self.ideals if i.is_prime)

    @property
    def maximals(self) -> tuple[Ideal, ...]:
        return tuple(i for i in self.ideals if i.is_maximal)

    @property
    def proper(self) -> tuple[Ideal, ...]:
        return tuple(i for i in self.ideals if i.fdim < self.ring.dim)


def _quotient_is_field(ring: FiniteAlgebra, basis: np.ndarray) -> bool:
    """Is R / (span basis) a field?  Assumes basis spans an ideal."""
    d, k = ring.dim, basis.shape[1]
    if k == d:
        return False  # improper
    if k == 0:
        section = np.eye(d, dtype=np.int64)
        proj = np.eye(d, dtype=np.int64)
    else:
        section = gfmat.extend_to_basis(basis, ring.p)
        full = np.hstack([basis, section])
        inv = gfmat.inverse(full, ring.p)
        proj = inv[k:, :]
    q = d - k
    # multiplication on quotient coordinates; field iff every nonzero
    # element multiplies invertibly
    for coeffs in itertools.product(range(ring.p), repeat=q):
        if not any(coeffs):
            continue
        rep = (section @ np.array(coeffs, dtype=np.int64)) % ring.p
        lm = ring.left_mul_matrix(rep)
        qmat = (proj @ lm @ section) % ring.p
        if gfmat.rank(qmat, ring.p) != q:
            return False
    return True


def enumerate_ideals(ring: FiniteAlgebra) -> IdealList:
    """All ideals of the ring, with primality and maximality flags.

    Every ideal is a sum of cyclic ideals, so we collect the distinct
    cyclic ideals Rr (column spaces of multiplication matrices) and close
    the collection under pairwise sum.  Exhaustive over ring elements;
    guarded by the enumeration cap.  Results are cached on the ring.
    """
    if ring._ideal_list is not None:
        return ring._ideal_list
    p = ring.p
    seen: dict[tuple, np.ndarray] = {}
    for elt in ring.elements():
        basis = gfmat.column_space(ring.left_mul_matrix(elt.array), p)
        seen.setdefault(_subspace_key(basis, p), basis)
    work = list(seen.items())
    while work:
        new_work = []
        items = list(seen.items())
        for _, b1 in work:
            for _, b2 in items:
                summed = gfmat.column_space(np.hstack([b1, b2]), p)
                key = _subspace_key(summed, p)
                if key not in seen:
                    seen[key] = summed
                    new_work.append((key, summed))
        work = new_work
    ideals = []
    for key in sorted(seen, key=lambda k: (len(k), k)):
        basis = seen[key]
        proper = basis.shape[1] < ring.dim
        prime = proper and _quotient_is_field(ring, basis)
        ideals.append(Ideal(ring, basis, prime, False))
    # maximality from the finished lattice: nothing strictly between I and R
    by_key = {i.key(): i for i in ideals}
    finished = []
    for ideal in ideals:
        maximal = False
        if ideal.fdim < ring.dim:
            maximal = True
            mine = ideal.element_set()
            for other in ideals:
                if other.fdim <= ideal.fdim or other.fdim == ring.dim:
                    continue
                if mine < other.element_set():
                    maximal = False
                    break
        finished.append(Ideal(ring, ideal.basis, ideal.is_prime, maximal))
    ring._ideal_list = IdealList(ring, tuple(finished))
    return ring._ideal_list


def complement_multset(ring: FiniteAlgebra, prime: Ideal) -> MultSet:
    """The multiplicative set R minus a prime ideal, in canonical order.

    Raises NotPrime if the ideal is not flagged prime or if the
    complement fails the closure check (defensive; cannot happen for a
    genuine prime).
    """
    if not prime.is_prime:
        raise NotPrime("complement requires a prime ideal, got %s" % prime.label())
    members = prime.element_set()
    elements = tuple(e for e in ring.elements() if e.vec not in members)
    ms = MultSet(ring, elements, any(e.is_zero() for e in elements))
    try:
        ms.validate()
    except InputError as exc:
        raise NotPrime("ideal %s is not prime: %s" % (prime.label(), exc)) from exc
    return ms


# -- quotient rings ---------------------------------------------------------


@dataclass(frozen=True)
class QuotientData:
    """A quotient algebra R/I together with coordinate translation maps.

    proj maps R-coordinates onto quotient coordinates (the map theta on
    coefficient vectors); section picks coset representatives.
    """

    source: FiniteAlgebra
    algebra: FiniteAlgebra
    ideal: Ideal
    proj: np.ndarray      # q x d
    section: np.ndarray   # d x q

    def theta(self, elt: RingElement) -> RingElement:
        return self.algebra.element((self.proj @ elt.array) % self.source.p)

    def theta_multset(self, s: MultSet) -> MultSet:
        images = {self.theta(x) for x in s}
        return mult_closure(self.algebra, images)


def quotient_algebra(ring: FiniteAlgebra, ideal: Ideal) -> QuotientData:
    """Quotient ring R/I on a complement basis of coset representatives."""
    if ideal.fdim == ring.dim:
        raise InputError("cannot form quotient by the improper ideal")
    p, d, k = ring.p, ring.dim, ideal.fdim
    if k == 0:
        section = np.eye(d, dtype=np.int64)
        proj = np.eye(d, dtype=np.int64)
    else:
        section = gfmat.extend_to_basis(ideal.basis, p)
        inv = gfmat.inverse(np.hstack([ideal.basis, section]), p)
        proj = inv[k:, :]
    q = d - k
    table = np.zeros((q, q, q), dtype=np.int64)
    for i in range(q):
        for j in range(q):
            prod = ring.mul_vec(section[:, i], section[:, j])
            table[i, j] = (proj @ prod) % p
    unit = (proj @ ring.unit) % p
    labels = ["q%d" % i for i in range(q)]
    algebra = FiniteAlgebra(p, labels, table, unit)
    return QuotientData(ring, algebra, ideal, proj, section)


# -- JSON wire format --------------------------------------------------------


def multset_to_spec(s_set: MultSet) -> dict:
    return {
        "kind": "multset",
        "seeds": [[int(c) for c in e.array] for e in s_set.elements],
    }


def multset_from_spec(ring: FiniteAlgebra, doc: dict, where: str = "multset") -> MultSet:
    """Parse a multset document; seeds are closed under multiplication."""
    if not isinstance(doc, dict):
        raise InputError("%s: expected an object" % where)
    if doc.get("kind") != "multset":
        raise InputError("%s/kind: expected 'multset', got %r" % (where, doc.get("kind")))
    seeds = doc.get("seeds")
    if not isinstance(seeds, list):
        raise InputError("%s/seeds: expected a list" % where)
    elements = []
    for i, coeffs in enumerate(seeds):
        if not isinstance(coeffs, list) or len(coeffs) != ring.dim:
            raise InputError("%s/seeds[%d]: expected %d coefficients" % (where, i, ring.dim))
        for j, c in enumerate(coeffs):
            if isinstance(c, bool) or not isinstance(c, int):
                raise InputError("%s/seeds[%d][%d]: expected an integer" % (where, i, j))
        elements.append(ring.element(coeffs))
    return mult_closure(ring, elements)


def ring_to_spec(ring: FiniteAlgebra) -> dict:
    mul = {}
    for i in range(ring.dim):
        for j in range(i, ring.dim):
            key = "%s*%s" % (ring.basis_labels[i], ring.basis_labels[j])
            mul[key] = [int(c) for c in ring.table[i, j]]
    return {
        "kind": "fp_algebra",
        "p": ring.p,
        "basis": list(ring.basis_labels),
        "mul": mul,
        "unit": [int(c) for c in ring.unit],
    }


def ring_from_spec(doc: dict, where: str = "ring") -> FiniteAlgebra:
    """Parse the fp_algebra wire format with pointer-style diagnostics."""
    if not isinstance(doc, dict):
        raise InputError("%s: expected an object" % where)
    if doc.get("kind") != "fp_algebra":
        raise InputError("%s/kind: expected 'fp_algebra', got %r" % (where, doc.get("kind")))
    for key in ("p", "basis", "mul", "unit"):
        if key not in doc:
            raise InputError("%s/%s: missing" % (where, key))
    labels = doc["basis"]
    if not isinstance(labels, list) or not all(isinstance(s, str) for s in labels):
        raise InputError("%s/basis: expected a list of strings" % where)
    d = len(labels)
    index = {s: i for i, s in enumerate(labels)}
    if len(index) != d:
        raise InputError("%s/basis: labels must be distinct" % where)
    table = np.zeros((d, d, d), dtype=np.int64)
    filled = np.zeros((d, d), dtype=bool)
    if not isinstance(doc["mul"], dict):
        raise InputError("%s/mul: expected an object" % where)
    for key, val in doc["mul"].items():
        if "*" not in key:
            raise InputError("%s/mul/%s: key must look like 'ei*ej'" % (where, key))
        left, right = key.split("*", 1)
        if left not in index or right not in index:
            raise InputError("%s/mul/%s: unknown basis label" % (where, key))
        if (not isinstance(val, list) or len(val) != d
                or not all(isinstance(c, int) for c in val)):
            raise InputError("%s/mul/%s: expected a list of %d integers" % (where, key, d))
        i, j = index[left], index[right]
        vec = np.array(val, dtype=np.int64)
        for a, b in ((i, j), (j, i)):
            if filled[a, b] and not np.array_equal(table[a, b], vec % doc["p"]):
                raise NonCommutative(a, b, labels)
            table[a, b] = vec % doc["p"]
            filled[a, b] = True
    missing = np.argwhere(~filled)
    if missing.size:
        i, j = missing[0]
        raise InputError("%s/mul: missing product %s*%s" % (where, labels[i], labels[j]))
    unit = doc["unit"]
    if not isinstance(unit, list) or len(unit) != d:
        raise InputError("%s/unit: expected a list of %d integers" % (where, d))
    return build_algebra(doc["p"], labels, table, unit)
