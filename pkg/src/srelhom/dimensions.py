"""Relative projective and injective dimensions with split certificates.

The dimension of a module with respect to a multiplicative set S is found
by walking (co)syzygies and certifying the first S-split level: a syzygy
K is S-projective exactly when some s in S admits a section pi' of a free
cover pi with pi . pi' = s Id, and dually with a retraction of the
canonical embedding into an injective module.  Search order over S is
always canonical, so reported witnesses are deterministic.

Values are either exact or "larger than the search bound", and every
comparison on them is three-valued (True / False / None) because bound
truncation can leave a relation undecided.  None never counts as a
violation; reports surface it as a separate "vacuous" verdict.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

import numpy as np

from . import gfmat
from .errors import (
    InputError,
    InternalInvariantViolation,
    MiddleNotCertified,
    NotSExact,
)
from .rings import (
    FiniteAlgebra,
    Ideal,
    MultSet,
    RingElement,
    complement_multset,
    enumerate_ideals,
    mult_closure,
)
from .modules import (
    Module,
    ModuleMap,
    SIsoWitness,
    cap_chain,
    character_dual,
    hom_space,
    is_s_isomorphism,
    quotient_by_columns,
    regular_module,
    s_exactness_check,
    subquotient,
)
from .homology import ext, injective_cocover, resolution
from .instances import random_module

__all__ = [
    "DEFAULT_BOUND",
    "DimValue",
    "dim_max",
    "SplitWitness",
    "DimResult",
    "GlobalDimReport",
    "SemisimpleReport",
    "LocalEntry",
    "LocalProfile",
    "Assertion",
    "InequalityReport",
    "ShiftReport",
    "is_s_projective",
    "is_s_injective",
    "s_pd",
    "s_id",
    "s_gldim",
    "is_s_semisimple",
    "local_profile",
    "check_inequalities",
    "dimension_shift_check",
]

DEFAULT_BOUND = 8


# -- dimension values ----------------------------------------------------------


@dataclass(frozen=True)
class DimValue:
    """An exact dimension n, or ">n" when the search bound was exhausted.

    Structural equality (==) is agreement of the record, so two ">8"
    values compare equal; the methods le/lt/eq are the three-valued
    order relations on the dimensions themselves.
    """

    value: int
    beyond: bool = False

    @staticmethod
    def exact(n: int) -> "DimValue":
        return DimValue(n, False)

    @staticmethod
    def over(bound: int) -> "DimValue":
        return DimValue(bound, True)

    @property
    def known(self) -> bool:
        return not self.beyond

    def shift(self, k: int) -> "DimValue":
        return DimValue(self.value + k, self.beyond)

    def le(self, other: "DimValue") -> bool | None:
        if self.known and other.known:
            return self.value <= other.value
        if self.known:
            # other >= other.value + 1
            return True if self.value <= other.value + 1 else None
        if other.known:
            # self >= self.value + 1
            return False if self.value + 1 > other.value else None
        return None

    def lt(self, other: "DimValue") -> bool | None:
        if self.known and other.known:
            return self.value < other.value
        if self.known:
            return True if self.value <= other.value else None
        if other.known:
            return False if self.value + 1 >= other.value else None
        return None

    def gt(self, other: "DimValue") -> bool | None:
        return other.lt(self)

    def eq(self, other: "DimValue") -> bool | None:
        if self.known and other.known:
            return self.value == other.value
        if self.known:
            return False if self.value <= other.value else None
        if other.known:
            return False if other.value <= self.value else None
        return None

    def __str__(self) -> str:
        return (">" if self.beyond else "") + str(self.value)


def dim_max(*vals: DimValue) -> DimValue:
    """Least upper bound under the ">n means at least n+1" reading."""
    best = vals[0]
    for v in vals[1:]:
        if best.known and v.known:
            best = DimValue.exact(max(best.value, v.value))
        elif best.known:
            best = DimValue.over(max(v.value, best.value - 1))
        elif v.known:
            best = DimValue.over(max(best.value, v.value - 1))
        else:
            best = DimValue.over(max(best.value, v.value))
    return best


def dim_add(a: DimValue, b: DimValue) -> DimValue:
    """Sum; one unknown side keeps the sum a strict lower bound."""
    if a.known and b.known:
        return DimValue.exact(a.value + b.value)
    if a.known or b.known:
        return DimValue.over(a.value + b.value)
    return DimValue.over(a.value + b.value + 1)


# -- split certificates --------------------------------------------------------


@dataclass(frozen=True)
class SplitWitness:
    """Certificate (or failed search) for an S-splitting.

    kind "section": cover is pi: F ->> P and mapping is pi': P -> F with
    pi . pi' = s Id_P.  kind "retraction": cover is iota: E -> I and
    mapping is q: I -> E with q . iota = s Id_E.  A failure carries
    s = None and the exhausted list of attempted elements.
    """

    kind: str
    cover: ModuleMap
    s: RingElement | None
    mapping: ModuleMap | None
    attempted: tuple[RingElement, ...] = ()

    @property
    def verdict(self) -> bool:
        return self.s is not None

    def certified_module(self) -> Module:
        return self.cover.target if self.kind == "section" else self.cover.source

    def verify(self) -> bool:
        """Re-check the defining identity as exact matrix equality."""
        if not self.verdict:
            return False
        if self.kind == "section":
            comp = self.cover.compose(self.mapping)
        else:
            comp = self.mapping.compose(self.cover)
        want = self.certified_module().action_of(self.s)
        return bool(np.array_equal(comp.matrix, want))


def _split_search(kind: str, cover: ModuleMap, s_set: MultSet) -> SplitWitness:
    """Solve for a section or retraction, trying each s in canonical order."""
    p = cover.ring.p
    if kind == "section":
        basis = hom_space(cover.target, cover.source)
        mats = [(cover.matrix @ h.matrix) % p for h in basis]
        certified = cover.target
    else:
        basis = hom_space(cover.target, cover.source)
        mats = [(h.matrix @ cover.matrix) % p for h in basis]
        certified = cover.source
    n = certified.vdim
    if basis:
        coeff = np.stack([m.reshape(-1) for m in mats], axis=1)
    else:
        coeff = gfmat.zeros(n * n, 0)
    tried = []
    for s in s_set:
        rhs = certified.action_of(s).reshape(-1)
        sol = gfmat.solve(coeff, rhs, p)
        if sol is None:
            tried.append(s)
            continue
        if basis:
            mat = np.zeros_like(basis[0].matrix)
            for c, h in zip(sol, basis):
                mat = (mat + int(c) * h.matrix) % p
        else:
            mat = gfmat.zeros(cover.source.vdim, cover.target.vdim)
        mapping = ModuleMap(cover.target, cover.source, mat)
        witness = SplitWitness(kind, cover, s, mapping, tuple(tried))
        if not witness.verify():
            raise InternalInvariantViolation("split witness failed re-verification")
        return witness
    return SplitWitness(kind, cover, None, None, tuple(tried))


def is_s_projective(module: Module, s_set: MultSet,
                    cover: ModuleMap | None = None) -> SplitWitness:
    """Search for s in S and a section pi': M -> F of a free cover pi."""
    if cover is None:
        cover = resolution(module).cover(0)
    return _split_search("section", cover, s_set)


def is_s_injective(module: Module, s_set: MultSet,
                   cocover: ModuleMap | None = None) -> SplitWitness:
    """Search for s in S and a retraction q: I -> M of the injective cocover."""
    if cocover is None:
        cocover = injective_cocover(module)
    return _split_search("retraction", cocover, s_set)


# -- dimensions ----------------------------------------------------------------


@dataclass(frozen=True)
class DimResult:
    """Outcome of a bounded (co)syzygy walk.

    levels[i] is the split search at level i; the last one succeeds
    exactly when value is exact.  For the injective kind, cross_check
    records the value obtained independently through the character dual.
    """

    kind: str
    module: Module
    s_set: MultSet
    bound: int
    value: DimValue
    levels: tuple[SplitWitness, ...]
    cross_check: DimValue | None = None

    @property
    def certificate(self) -> SplitWitness | None:
        return self.levels[-1] if self.value.known else None

    @property
    def last_failure(self) -> SplitWitness | None:
        failed = [w for w in self.levels if not w.verdict]
        return failed[-1] if failed else None

    def __str__(self) -> str:
        return "%s = %s (bound %d)" % (self.kind, self.value, self.bound)


def _check_walk_invariants(result: DimResult) -> DimResult:
    if result.value.known:
        n = result.value.value
        cert = result.levels[n]
        if not cert.verify():
            raise InternalInvariantViolation("terminating witness does not verify")
        if any(w.verdict for w in result.levels[:n]):
            raise InternalInvariantViolation("walk passed a level before terminating")
        if n > 0 and result.levels[n - 1].attempted == ():
            raise InternalInvariantViolation("failure level has no attempted record")
    return result


def s_pd(module: Module, s_set: MultSet, bound: int = DEFAULT_BOUND) -> DimResult:
    """S-relative projective dimension via the syzygy walk.

    Walks K_0 = M, K_{i+1} = Ker(F_i ->> K_i) along a minimal free
    resolution and returns the first level whose syzygy is S-projective;
    the in-walk cover is reused as the cover under test.
    """
    if bound < 0:
        raise InputError("bound must be nonnegative")
    res = resolution(module)
    levels = []
    value = DimValue.over(bound)
    for i in range(bound + 1):
        witness = is_s_projective(res.syzygy(i), s_set, cover=res.cover(i))
        levels.append(witness)
        if witness.verdict:
            value = DimValue.exact(i)
            break
    result = DimResult("S-pd", module, s_set, bound, value, tuple(levels))
    return _check_walk_invariants(result)


def s_id(module: Module, s_set: MultSet, bound: int = DEFAULT_BOUND) -> DimResult:
    """S-relative injective dimension, computed twice.

    The direct route walks cosyzygies C_0 = M, C_{i+1} = Coker(C_i -> I_i)
    through injective cocovers.  The value is cross-checked against the
    projective dimension of the character dual; any disagreement is an
    engine bug, not a property of the input.
    """
    if bound < 0:
        raise InputError("bound must be nonnegative")
    levels = []
    value = DimValue.over(bound)
    current = module
    for i in range(bound + 1):
        iota = injective_cocover(current)
        witness = is_s_injective(current, s_set, cocover=iota)
        levels.append(witness)
        if witness.verdict:
            value = DimValue.exact(i)
            break
        current, _ = subquotient(iota, "cokernel")
    dual_route = s_pd(character_dual(module), s_set, bound)
    if dual_route.value != value:
        raise InternalInvariantViolation(
            "injective dimension routes disagree: direct %s, dual %s"
            % (value, dual_route.value))
    result = DimResult("S-id", module, s_set, bound, value, tuple(levels),
                       cross_check=dual_route.value)
    return _check_walk_invariants(result)


# -- global dimension ----------------------------------------------------------

GLDIM_CAVEAT = ("candidate comes from the cyclic-module sweep; whether the "
                "supremum is attained on cyclic modules is open, so the "
                "randomized trials corroborate the value without proving it")


@dataclass(frozen=True)
class GlobalDimReport:
    """Cyclic-sweep candidate for the S-global dimension plus trial audit."""

    ring: FiniteAlgebra
    s_set: MultSet
    bound: int
    per_ideal: tuple[tuple[str, DimValue, DimValue], ...]
    cyclic_candidate: DimValue
    candidate: DimValue
    trials: int
    seed: int
    exceedances: tuple[tuple[int, DimValue], ...]
    caveat: str = GLDIM_CAVEAT

    @property
    def raised(self) -> bool:
        return bool(self.exceedances)


def s_gldim(ring: FiniteAlgebra, s_set: MultSet, bound: int = DEFAULT_BOUND,
            trials: int = 16, seed: int = 0) -> GlobalDimReport:
    """Candidate S-global dimension: cyclic sweep plus randomized audit.

    The candidate is max over all ideals I of max(S-pd(R/I), S-id(R/I)).
    Each trial draws a random module and checks it does not decidably
    exceed the candidate; an exceedance raises the candidate and is
    recorded, flagging the run.
    """
    reg = regular_module(ring)
    per_ideal = []
    cyclic = DimValue.exact(0)
    for ideal in enumerate_ideals(ring):
        cyc, _, _ = quotient_by_columns(reg, ideal.basis)
        pd_val = s_pd(cyc, s_set, bound).value
        id_val = s_id(cyc, s_set, bound).value
        per_ideal.append((ideal.label(), pd_val, id_val))
        cyclic = dim_max(cyclic, pd_val, id_val)
    candidate = cyclic
    rng = random.Random("sgldim:%d" % seed)
    exceed = []
    for t in range(trials):
        mod = random_module(ring, rng)
        val = dim_max(s_pd(mod, s_set, bound).value,
                      s_id(mod, s_set, bound).value)
        if val.le(candidate) is False:
            exceed.append((t, val))
            candidate = dim_max(candidate, val)
    return GlobalDimReport(ring, s_set, bound, tuple(per_ideal), cyclic,
                           candidate, trials, seed, tuple(exceed))


# -- semisimplicity ------------------------------------------------------------


@dataclass(frozen=True)
class SemisimpleReport:
    """Witness s with a projection family f_I(r) = r y_I, or the failures.

    family pairs each ideal with the element y = f_I(1) in I satisfying
    i y = s i for every i in I; failures pair each exhausted s with the
    first ideal whose linear system was infeasible.
    """

    ring: FiniteAlgebra
    s_set: MultSet
    verdict: bool
    s: RingElement | None
    family: tuple[tuple[Ideal, RingElement], ...]
    failures: tuple[tuple[RingElement, Ideal], ...]


def _semisimple_generator(ring: FiniteAlgebra, ideal: Ideal,
                          s: RingElement) -> RingElement | None:
    """Find y in I with i y = s i for all i in I, or report infeasibility.

    An R-linear f: R -> I is determined by y = f(1); the condition
    f(i) = s i for i in I becomes the stacked linear system below.
    """
    if ideal.fdim == 0:
        return ring.zero
    p = ring.p
    basis = ideal.basis
    rows = []
    rhs = []
    for j in range(ideal.fdim):
        gen = basis[:, j]
        rows.append((ring.left_mul_matrix(gen) @ basis) % p)
        rhs.append(ring.mul_vec(s.array, gen))
    coeff = np.vstack(rows)
    target = np.concatenate(rhs)
    sol = gfmat.solve(coeff, target, p)
    if sol is None:
        return None
    y = ring.element((basis @ sol) % p)
    for j in range(ideal.fdim):
        gen = ring.element(basis[:, j])
        if gen * y != s * gen:
            raise InternalInvariantViolation("semisimple generator fails re-check")
    return y


def is_s_semisimple(ring: FiniteAlgebra, s_set: MultSet) -> SemisimpleReport:
    """First s in canonical order that projects onto every ideal at once.

    For each candidate s, every ideal I must admit an R-linear
    f_I: R -> I with f_I(i) = s i for all i in I; the single s has to
    work for all ideals simultaneously.
    """
    ideals = enumerate_ideals(ring)
    failures = []
    for s in s_set:
        family = []
        blocker = None
        for ideal in ideals:
            y = _semisimple_generator(ring, ideal, s)
            if y is None:
                blocker = ideal
                break
            family.append((ideal, y))
        if blocker is None:
            return SemisimpleReport(ring, s_set, True, s, tuple(family), tuple(failures))
        failures.append((s, blocker))
    return SemisimpleReport(ring, s_set, False, None, (), tuple(failures))


# -- local profiles ------------------------------------------------------------


@dataclass(frozen=True)
class LocalEntry:
    prime: Ideal
    multset: MultSet
    result: DimResult


@dataclass(frozen=True)
class LocalProfile:
    """Dimension of one module localized at every prime, with the sup test.

    formula_ok records whether the supremum of the per-prime values
    equals the classical value (S = {1}); two beyond-bound values count
    as agreement.
    """

    module: Module
    kind: str
    bound: int
    entries: tuple[LocalEntry, ...]
    classical: DimResult
    sup_value: DimValue
    formula_ok: bool


def local_profile(module: Module, kind: str = "pd",
                  bound: int = DEFAULT_BOUND) -> LocalProfile:
    """Per-prime dimension table via complement multiplicative sets."""
    if kind not in ("pd", "id"):
        raise InputError("kind must be 'pd' or 'id', got %r" % (kind,))
    walker = s_pd if kind == "pd" else s_id
    ring = module.ring
    entries = []
    for prime in enumerate_ideals(ring).primes:
        mult = complement_multset(ring, prime)
        entries.append(LocalEntry(prime, mult, walker(module, mult, bound)))
    classical = walker(module, mult_closure(ring, []), bound)
    sup_value = dim_max(*(e.result.value for e in entries))
    formula_ok = sup_value == classical.value
    return LocalProfile(module, kind, bound, tuple(entries), classical,
                        sup_value, formula_ok)


# -- short exact sequence inequalities ------------------------------------------


@dataclass(frozen=True)
class Assertion:
    """One checked relation: verdict is pass, fail, vacuous, or inapplicable."""

    name: str
    statement: str
    verdict: str
    note: str = ""


@dataclass(frozen=True)
class InequalityReport:
    s_set: MultSet
    bound: int
    pd_results: tuple[DimResult, DimResult, DimResult]
    id_results: tuple[DimResult, DimResult, DimResult]
    split: SplitWitness | None
    assertions: tuple[Assertion, ...]

    @property
    def ok(self) -> bool:
        return all(a.verdict != "fail" for a in self.assertions)

    def by_name(self, name: str) -> Assertion:
        for a in self.assertions:
            if a.name == name:
                return a
        raise InputError("no assertion named %r" % (name,))


def _three_way(name: str, statement: str, outcome: bool | None,
               note: str = "") -> Assertion:
    if outcome is True:
        verdict = "pass"
    elif outcome is False:
        verdict = "fail"
    else:
        verdict = "vacuous"
        note = note or "undecided at bound"
    return Assertion(name, statement, verdict, note)


def _conditional(name: str, statement: str, hypothesis: bool | None,
                 conclusions: list[bool | None], note: str = "") -> Assertion:
    if hypothesis is False:
        return Assertion(name, statement, "inapplicable", "hypothesis fails")
    if hypothesis is None:
        return Assertion(name, statement, "vacuous", "hypothesis undecided at bound")
    if any(c is False for c in conclusions):
        return Assertion(name, statement, "fail", note)
    if all(c is True for c in conclusions):
        return Assertion(name, statement, "pass", note)
    return Assertion(name, statement, "vacuous", "conclusion undecided at bound")


def _require_s_exact(f: ModuleMap, g: ModuleMap, s_set: MultSet) -> None:
    report = s_exactness_check(cap_chain([f, g]), s_set)
    if not report.ok:
        bad = [pos.index for pos in report.positions if pos.witness is None][0]
        raise NotSExact("sequence is not S-exact at position %d" % bad)


def split_witness_from_retraction(f: ModuleMap, retraction: ModuleMap,
                                  s_set: MultSet) -> SplitWitness:
    """Certify a retraction of the first map of a short sequence.

    Finds the first s in canonical order with retraction . f = s Id
    exactly, and packages it; raises InputError when no element of S
    matches, since an uncertified retraction proves nothing.
    """
    if retraction.source is not f.target and retraction.source.vdim != f.target.vdim:
        raise InputError("retraction source does not match the middle term")
    comp = retraction.compose(f)
    tried = []
    for s in s_set:
        if np.array_equal(comp.matrix, f.source.action_of(s)):
            return SplitWitness("retraction", f, s, retraction, tuple(tried))
        tried.append(s)
    raise InputError("retraction is not s Id for any s in S")


def check_inequalities(triple: tuple[ModuleMap, ModuleMap], s_set: MultSet,
                       bound: int = DEFAULT_BOUND,
                       retraction: ModuleMap | None = None) -> InequalityReport:
    """Dimension inequalities along an S-exact 0 -> A -> B -> C -> 0.

    Unconditional bounds and conditional gap statements are always
    evaluated; the split additivity equalities run only when a
    retraction certifying the S-splitting accompanies the input.
    Relations undecidable at the bound come back "vacuous".
    """
    f, g = triple
    _require_s_exact(f, g, s_set)
    split = None
    if retraction is not None:
        split = split_witness_from_retraction(f, retraction, s_set)
    pd_res = tuple(s_pd(m, s_set, bound) for m in (f.source, f.target, g.target))
    id_res = tuple(s_id(m, s_set, bound) for m in (f.source, f.target, g.target))
    pd_a, pd_b, pd_c = (r.value for r in pd_res)
    id_a, id_b, id_c = (r.value for r in id_res)
    assertions = []

    rhs = dim_max(pd_a, pd_b).shift(1)
    assertions.append(_three_way(
        "pd-bound-on-quotient",
        "pd(C) = %s <= 1 + max(pd(A), pd(B)) = %s" % (pd_c, rhs),
        pd_c.le(rhs)))

    gap = pd_c.shift(-1)
    assertions.append(_conditional(
        "pd-gap",
        "pd(B) = %s < pd(C) = %s implies pd(A) = pd(C) - 1 > pd(B)" % (pd_b, pd_c),
        pd_b.lt(pd_c),
        [pd_a.eq(gap), pd_b.lt(gap)]))

    rhs = dim_max(id_b, id_c).shift(1)
    assertions.append(_three_way(
        "id-bound-on-sub",
        "id(A) = %s <= 1 + max(id(B), id(C)) = %s" % (id_a, rhs),
        id_a.le(rhs)))

    gap = id_a.shift(-1)
    assertions.append(_conditional(
        "id-gap",
        "id(B) = %s < id(A) = %s implies id(C) = id(A) - 1 > id(B)" % (id_b, id_a),
        id_b.lt(id_a),
        [id_c.eq(gap), id_b.lt(gap)]))

    if split is None:
        assertions.append(Assertion(
            "pd-split-additivity", "pd(B) = max(pd(A), pd(C))",
            "inapplicable", "no split witness supplied"))
        assertions.append(Assertion(
            "id-split-additivity", "id(B) = max(id(A), id(C))",
            "inapplicable", "no split witness supplied"))
    else:
        rhs = dim_max(pd_a, pd_c)
        assertions.append(_three_way(
            "pd-split-additivity",
            "pd(B) = %s equals max(pd(A), pd(C)) = %s" % (pd_b, rhs),
            pd_b.eq(rhs)))
        rhs = dim_max(id_a, id_c)
        assertions.append(_three_way(
            "id-split-additivity",
            "id(B) = %s equals max(id(A), id(C)) = %s" % (id_b, rhs),
            id_b.eq(rhs)))
    return InequalityReport(s_set, bound, pd_res, id_res, split, tuple(assertions))


# -- dimension shifting ----------------------------------------------------------


@dataclass(frozen=True)
class ShiftReport:
    """Outcome of the degree-shift comparison across a certified middle term.

    ok means some map between the two Ext modules is an S-isomorphism;
    searched counts the candidates tried before finding it (or all of
    them, on failure).
    """

    variance: str
    degree: int
    middle: SplitWitness
    source_dim: int
    target_dim: int
    mapping: ModuleMap | None
    witness: SIsoWitness | None
    searched: int
    ok: bool


def dimension_shift_check(triple: tuple[ModuleMap, ModuleMap], other: Module,
                          n: int, s_set: MultSet, variance: str = "auto",
                          search_cap: int = 65536) -> ShiftReport:
    """Compare Ext across a short sequence whose middle term S-splits.

    With the middle term S-projective the contravariant comparison runs
    Ext^n(A, other) against Ext^{n+1}(C, other); with it S-injective the
    covariant one runs Ext^n(other, C) against Ext^{n+1}(other, A).  The
    check searches the full hom space between the two Ext modules for an
    S-isomorphism, so a zero map between uniformly S-torsion sides
    qualifies.
    """
    if n < 0:
        raise InputError("degree must be nonnegative")
    f, g = triple
    _require_s_exact(f, g, s_set)
    mid = f.target
    middle = None
    if variance in ("auto", "contravariant"):
        candidate = is_s_projective(mid, s_set)
        if candidate.verdict:
            variance, middle = "contravariant", candidate
        elif variance == "contravariant":
            raise MiddleNotCertified("middle term is not S-projective")
    if middle is None:
        candidate = is_s_injective(mid, s_set)
        if candidate.verdict:
            variance, middle = "covariant", candidate
        else:
            raise MiddleNotCertified("middle term certifies neither way")
    if variance == "contravariant":
        src = ext(f.source, other, n)
        tgt = ext(g.target, other, n + 1)
    else:
        src = ext(other, g.target, n)
        tgt = ext(other, f.source, n + 1)
    basis = hom_space(src.module, tgt.module)
    p = s_set.ring.p
    if p ** len(basis) > search_cap:
        raise InputError("hom search space has %d candidates, over the cap %d"
                         % (p ** len(basis), search_cap))
    searched = 0
    for coeffs in itertools.product(range(p), repeat=len(basis)):
        mat = gfmat.zeros(tgt.module.vdim, src.module.vdim)
        for c, h in zip(coeffs, basis):
            mat = (mat + c * h.matrix) % p
        cand = ModuleMap(src.module, tgt.module, mat)
        searched += 1
        witness = is_s_isomorphism(cand, s_set)
        if witness.verdict:
            return ShiftReport(variance, n, middle, src.dim, tgt.dim,
                               cand, witness, searched, True)
    return ShiftReport(variance, n, middle, src.dim, tgt.dim,
                       None, None, searched, False)
