"""Free resolutions, Ext, and the S-relative long exact sequence.

The resolution of M is built by iterated covers: choose generators of the
current syzygy, map a free module onto it, take the kernel, repeat.  The
"minimal" style lifts an F_p-basis of K / rad K; over a local ring that
is a minimal generating set, over a product ring it may overshoot the
true minimum but keeps ranks small.  "plain" covers every F_p basis
vector, and "seeded-random" pads the minimal generators with random
redundant ones for resolution-independence testing.

Ext^n(M, N) is computed as cohomology of Hom(F_., N).  Since every F_k is
free of rank r_k, Hom(F_k, N) is N^{r_k}, and the differential is the
block matrix of ring actions read off the boundary.  Ext results retain
cocycle representatives, so maps induced in either variable descend to
cohomology explicitly; connecting maps are built exactly as in the snake
construction, with S-isomorphism correctors splicing the exact core of an
S-exact sequence back to its stated endpoints.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from . import gfmat
from .errors import (
    InputError,
    InternalInvariantViolation,
    NotSExact,
)
from .rings import FiniteAlgebra, MultSet, RingElement
from .modules import (
    Module,
    ModuleMap,
    SExactReport,
    cap_chain,
    character_dual,
    free_map_from_generator_images,
    free_module,
    generator_vector,
    image_factorization,
    is_s_isomorphism,
    map_from_spec,
    map_to_spec,
    module_from_spec,
    module_to_spec,
    ring_matrix_of_free_map,
    s_exactness_check,
    s_iso_inverse,
    submodule_from_columns,
    subquotient,
    quotient_by_columns,
    zero_module,
)

__all__ = [
    "Resolution",
    "AssembledResolution",
    "resolution",
    "free_resolution",
    "HomCochain",
    "ExtResult",
    "ext",
    "ext_with_resolution",
    "ext_map_on_target",
    "ext_map_on_source",
    "chain_lift",
    "horseshoe",
    "ConnectingData",
    "long_ext_sequence",
    "injective_cocover",
    "comparison_isomorphisms",
    "resolution_to_spec",
    "resolution_from_spec",
]

DEFAULT_DEPTH = 12

STYLES = ("minimal", "plain", "seeded-random")


class BaseResolution:
    """Shared interface: ranks, boundaries, and their ring matrices."""

    module: Module
    frees: list[Module]

    def ensure(self, index: int) -> None:
        raise NotImplementedError

    def rank(self, k: int) -> int:
        self.ensure(k)
        return self.frees[k].free_rank

    def boundary(self, k: int) -> ModuleMap:
        """d_k: F_k -> F_{k-1} for k >= 1; k = 0 gives the augmentation."""
        raise NotImplementedError

    @property
    def augmentation(self) -> ModuleMap:
        return self.boundary(0)

    def ring_matrix(self, k: int) -> np.ndarray:
        """Boundary k >= 1 as a (r_{k-1}, r_k, d) array of ring vectors."""
        cache = getattr(self, "_ring_mats", None)
        if cache is None:
            cache = self._ring_mats = {}
        if k not in cache:
            cache[k] = ring_matrix_of_free_map(self.boundary(k))
        return cache[k]


class Resolution(BaseResolution):
    """A lazily extended free resolution of a module.

    syzygies[i] is K_i with K_0 = M; covers[i]: F_i ->> K_i is the chosen
    surjection and inclusions[i]: K_i -> F_{i-1} (i >= 1) embeds each
    syzygy into the previous free module.  The boundary d_i is
    inclusion . cover.
    """

    def __init__(self, module: Module, style: str = "minimal", seed: int = 0):
        if style not in STYLES:
            raise InputError("unknown resolution style %r" % style)
        self.module = module
        self.style = style
        self.seed = seed
        self.frees: list[Module] = []
        self.covers: list[ModuleMap] = []
        self.syzygies: list[Module] = [module]
        self.inclusions: list[ModuleMap | None] = [None]
        self._boundaries: dict[int, ModuleMap] = {}

    @property
    def ring(self) -> FiniteAlgebra:
        return self.module.ring

    def _generator_columns(self, k_mod: Module, level: int) -> np.ndarray:
        ring = self.ring
        p = ring.p
        if self.style == "plain":
            return gfmat.identity(k_mod.vdim)
        rad = ring.radical_basis()
        rad_cols = []
        for j in range(rad.shape[1]):
            rad_cols.append(k_mod.action_of(rad[:, j]))
        if rad_cols:
            rad_span = gfmat.column_space(np.hstack(rad_cols), p)
        else:
            rad_span = gfmat.zeros(k_mod.vdim, 0)
        gens = gfmat.extend_to_basis(rad_span, p)
        if self.style == "seeded-random" and k_mod.vdim:
            rng = random.Random("res:%d:%d:%d" % (self.seed, level, k_mod.vdim))
            extra = []
            for _ in range(rng.randint(1, 2)):
                vec = np.array([rng.randrange(p) for _ in range(k_mod.vdim)],
                               dtype=np.int64)
                if vec.any():
                    extra.append(vec.reshape(-1, 1))
            if extra:
                gens = np.hstack([gens] + extra)
        return gens

    def ensure(self, index: int) -> None:
        """Extend so that frees[0..index] and their covers exist."""
        while len(self.frees) <= index:
            level = len(self.frees)
            k_mod = self.syzygies[level]
            gens = self._generator_columns(k_mod, level)
            free = free_module(self.ring, gens.shape[1])
            cover = free_map_from_generator_images(free, k_mod, gens)
            if gfmat.rank(cover.matrix, self.ring.p) != k_mod.vdim:
                raise InternalInvariantViolation("cover is not surjective")
            self.frees.append(free)
            self.covers.append(cover)
            ker_cols = gfmat.nullspace(cover.matrix, self.ring.p)
            nxt, incl = submodule_from_columns(free, ker_cols)
            self.syzygies.append(nxt)
            self.inclusions.append(incl)

    def syzygy(self, i: int) -> Module:
        """K_i, with K_0 = M and K_{i+1} = Ker(F_i ->> K_i)."""
        if i >= len(self.syzygies):
            self.ensure(i - 1)
        return self.syzygies[i]

    def cover(self, i: int) -> ModuleMap:
        self.ensure(i)
        return self.covers[i]

    def boundary(self, k: int) -> ModuleMap:
        if k == 0:
            return self.cover(0)
        if k not in self._boundaries:
            self.ensure(k)
            self._boundaries[k] = self.inclusions[k].compose(self.covers[k])
        return self._boundaries[k]


class AssembledResolution(BaseResolution):
    """A fixed-depth resolution given by explicit boundary maps.

    maps[0] is the augmentation F_0 -> M and maps[k] the boundary
    F_k -> F_{k-1}.  Validation checks surjectivity of the augmentation,
    vanishing composites, and exactness by rank counting.
    """

    def __init__(self, module: Module, maps: list[ModuleMap], check: bool = True):
        if not maps:
            raise InputError("resolution needs at least the augmentation")
        self.module = module
        self.maps = list(maps)
        self.frees = [m.source for m in maps]
        for free in self.frees:
            if free.free_rank is None:
                raise InputError("resolution terms must be free modules")
        if check:
            self._validate()

    def _validate(self):
        p = self.module.ring.p
        aug = self.maps[0]
        if aug.target.vdim != self.module.vdim:
            raise InputError("augmentation target does not match the module")
        if gfmat.rank(aug.matrix, p) != self.module.vdim:
            raise InputError("augmentation is not surjective")
        for k in range(1, len(self.maps)):
            comp = (self.maps[k - 1].matrix @ self.maps[k].matrix) % p
            if comp.any():
                raise InputError("boundary composite at level %d is nonzero" % k)
            null = self.frees[k - 1].vdim - gfmat.rank(self.maps[k - 1].matrix, p)
            if gfmat.rank(self.maps[k].matrix, p) != null:
                raise InputError("resolution is not exact at level %d" % (k - 1))

    @property
    def depth(self) -> int:
        return len(self.maps) - 1

    def ensure(self, index: int) -> None:
        if index >= len(self.frees):
            raise InputError(
                "resolution of depth %d too shallow for level %d"
                % (self.depth, index))

    def boundary(self, k: int) -> ModuleMap:
        self.ensure(k)
        return self.maps[k]


def resolution(module: Module, style: str = "minimal", seed: int = 0) -> Resolution:
    """Cached resolution accessor; one instance per (style, seed)."""
    key = ("resolution", style, seed)
    if key not in module._cache:
        module._cache[key] = Resolution(module, style, seed)
    return module._cache[key]


def free_resolution(module: Module, depth: int = DEFAULT_DEPTH,
                    style: str = "minimal", seed: int = 0) -> Resolution:
    """Resolution extended through the given depth."""
    res = resolution(module, style, seed)
    res.ensure(depth)
    return res


# -- hom cochains and ext -----------------------------------------------------


def _hom_block_matrix(target: Module, coeffs: np.ndarray) -> np.ndarray:
    """Matrix of shape (n*out, n*in) with block (l, j) = action of coeffs[l, j].

    coeffs has shape (out, in, d); blocks act on column stacks of
    target-components.
    """
    out_count, in_count = coeffs.shape[0], coeffs.shape[1]
    n = target.vdim
    mat = np.zeros((n * out_count, n * in_count), dtype=np.int64)
    for l in range(out_count):
        for j in range(in_count):
            if coeffs[l, j].any():
                mat[l * n:(l + 1) * n, j * n:(j + 1) * n] = \
                    target.action_of(coeffs[l, j])
    return mat


class HomCochain:
    """The cochain complex Hom_R(F_., N) for one resolution and target.

    C^k is identified with N^{r_k}; the differential into degree k is
    precomposition with the boundary d_k, i.e. the block matrix of its
    ring entries acting on N-components.
    """

    def __init__(self, res: BaseResolution, target: Module):
        self.res = res
        self.target = target
        self._modules: dict[int, Module] = {}
        self._diffs: dict[int, np.ndarray] = {}

    def module(self, k: int) -> Module:
        if k not in self._modules:
            r = self.res.rank(k)
            n = self.target.vdim
            acts = np.stack([np.kron(gfmat.identity(r), a)
                             for a in self.target.actions]) if r * n else \
                np.zeros((self.target.ring.dim, r * n, r * n), dtype=np.int64)
            self._modules[k] = Module(self.target.ring, acts, check=False)
        return self._modules[k]

    def diff_matrix(self, k: int) -> np.ndarray:
        """Matrix of C^{k-1} -> C^k (k >= 1)."""
        if k not in self._diffs:
            g = self.res.ring_matrix(k)  # (r_{k-1}, r_k, d)
            self._diffs[k] = _hom_block_matrix(self.target, g.transpose(1, 0, 2))
        return self._diffs[k]


@dataclass
class ExtResult:
    """Ext^n together with enough cocycle data to push maps through it.

    module is the Ext value as an R-module; reps holds one cocycle
    representative per basis vector (columns, in C^n coordinates);
    class_of sends any cocycle to its class in module coordinates.
    """

    n: int
    source: Module
    target: Module
    module: Module
    cochain: HomCochain
    cycle_basis: np.ndarray
    proj: np.ndarray
    reps: np.ndarray

    @property
    def dim(self) -> int:
        return self.module.vdim

    def class_of(self, vec: np.ndarray) -> np.ndarray:
        coords = gfmat.solve(self.cycle_basis, vec, self.module.ring.p)
        if coords is None:
            raise InternalInvariantViolation("vector is not a cocycle")
        return (self.proj @ coords) % self.module.ring.p


def ext_from_cochain(hc: HomCochain, n: int) -> ExtResult:
    p = hc.target.ring.p
    cn = hc.module(n)
    d_next = hc.diff_matrix(n + 1)
    cycles = gfmat.nullspace(d_next, p)
    z_mod, _ = submodule_from_columns(cn, cycles)
    if n == 0:
        boundaries = gfmat.zeros(cn.vdim, 0)
    else:
        boundaries = hc.diff_matrix(n)
    in_z = gfmat.solve(cycles, boundaries, p)
    if in_z is None:
        raise InternalInvariantViolation("boundaries are not cocycles")
    q_mod, proj_map, section = quotient_by_columns(z_mod, in_z)
    reps = (cycles @ section) % p
    return ExtResult(n, hc.res.module, hc.target, q_mod, hc,
                     cycles, proj_map.matrix, reps)


def ext(source: Module, target: Module, n: int, style: str = "minimal",
        seed: int = 0) -> ExtResult:
    """Ext^n_R(source, target) via a cached free resolution of source."""
    if n < 0:
        raise InputError("ext degree must be nonnegative")
    res = resolution(source, style, seed)
    res.ensure(n + 1)
    return ext_from_cochain(HomCochain(res, target), n)


def ext_with_resolution(res: BaseResolution, target: Module, n: int) -> ExtResult:
    res.ensure(n + 1)
    return ext_from_cochain(HomCochain(res, target), n)


# -- functoriality ------------------------------------------------------------


def ext_map_on_target(src_ext: ExtResult, tgt_ext: ExtResult,
                      h: ModuleMap) -> ModuleMap:
    """Induced map Ext^k(M, N) -> Ext^k(M, N') from h: N -> N'.

    Both Ext results must come from the same resolution of M.
    """
    if src_ext.cochain.res is not tgt_ext.cochain.res or src_ext.n != tgt_ext.n:
        raise InputError("ext results must share a resolution and degree")
    p = h.ring.p
    r = src_ext.cochain.res.rank(src_ext.n)
    big = np.kron(gfmat.identity(r), h.matrix)
    cols = [tgt_ext.class_of((big @ src_ext.reps[:, j]) % p)
            for j in range(src_ext.dim)]
    mat = np.stack(cols, axis=1) if cols else gfmat.zeros(tgt_ext.dim, 0)
    return ModuleMap(src_ext.module, tgt_ext.module, mat)


def chain_lift(h: ModuleMap, res_src: BaseResolution, res_tgt: BaseResolution,
               depth: int) -> list[ModuleMap]:
    """Lift h: X -> Y to a chain map between resolutions of X and Y.

    Returns maps h_k: F^X_k -> F^Y_k for k <= depth with
    aug_Y . h_0 = h . aug_X and d^Y_k . h_k = h_{k-1} . d^X_k.  Each
    generator image is a particular solution of a consistent linear
    system, so the lift is deterministic.
    """
    res_src.ensure(depth)
    res_tgt.ensure(depth)
    ring = h.ring
    lifts: list[ModuleMap] = []
    for k in range(depth + 1):
        r_k = res_src.rank(k)
        if k == 0:
            need = (h.matrix @ res_src.augmentation.matrix) % ring.p
            sys_mat = res_tgt.augmentation.matrix
        else:
            need = (lifts[k - 1].matrix @ res_src.boundary(k).matrix) % ring.p
            sys_mat = res_tgt.boundary(k).matrix
        gens = np.stack([generator_vector(ring, r_k, j) for j in range(r_k)],
                        axis=1) if r_k else gfmat.zeros(res_src.frees[k].vdim, 0)
        images = gfmat.solve(sys_mat, (need @ gens) % ring.p, ring.p)
        if images is None:
            raise InternalInvariantViolation("chain lift system inconsistent")
        lifts.append(free_map_from_generator_images(
            res_src.frees[k], res_tgt.frees[k], images))
    return lifts


def ext_map_on_source(lift_k: ModuleMap, src_ext: ExtResult,
                      tgt_ext: ExtResult) -> ModuleMap:
    """Induced map Ext^k(Y, N) -> Ext^k(X, N) from a chain lift of h: X -> Y.

    lift_k is the degree-k component F^X_k -> F^Y_k of the lift of h;
    src_ext is over the resolution of Y, tgt_ext over the resolution of X.
    """
    if src_ext.n != tgt_ext.n:
        raise InputError("degree mismatch")
    p = src_ext.target.ring.p
    hmat = ring_matrix_of_free_map(lift_k)  # (r^Y_k, r^X_k, d)
    u = _hom_block_matrix(src_ext.target, hmat.transpose(1, 0, 2))
    cols = [tgt_ext.class_of((u @ src_ext.reps[:, j]) % p)
            for j in range(src_ext.dim)]
    mat = np.stack(cols, axis=1) if cols else gfmat.zeros(tgt_ext.dim, 0)
    return ModuleMap(src_ext.module, tgt_ext.module, mat)


def comparison_isomorphisms(res_a: BaseResolution, res_b: BaseResolution,
                            target: Module, n: int
                            ) -> tuple[ExtResult, ExtResult, ModuleMap, ModuleMap]:
    """Canonical mutually inverse isos between Ext computed two ways.

    Lifting the identity both ways gives chain maps whose composites are
    homotopic to the identity, hence act as the identity on cohomology;
    the returned maps are exact inverses.
    """
    if res_a.module is not res_b.module and res_a.module.vdim != res_b.module.vdim:
        raise InputError("resolutions of different modules")
    ide = ModuleMap.identity(res_a.module)
    lift_ab = chain_lift(ide, res_a, res_b, n)
    lift_ba = chain_lift(ide, res_b, res_a, n)
    ext_a = ext_with_resolution(res_a, target, n)
    ext_b = ext_with_resolution(res_b, target, n)
    a_to_b = ext_map_on_source(lift_ba[n], ext_a, ext_b)
    b_to_a = ext_map_on_source(lift_ab[n], ext_b, ext_a)
    return ext_a, ext_b, a_to_b, b_to_a


# -- horseshoe ----------------------------------------------------------------


def horseshoe(incl: ModuleMap, proj: ModuleMap, res_sub: Resolution,
              res_quot: Resolution, depth: int
              ) -> tuple[AssembledResolution, list[ModuleMap]]:
    """Resolution of the middle of an exact 0 -> A -> B -> C -> 0.

    Levelwise F^A_k + F^C_k with boundary [[a_k, tau_k], [0, c_k]]; the
    correction maps tau_k: F^C_k -> F^A_{k-1} are solved level by level so
    composites vanish.  Returns the assembled resolution and the taus
    (tau_k at list index k, index 0 unused).
    """
    ring = incl.ring
    p = ring.p
    mid = incl.target
    res_sub.ensure(depth)
    res_quot.ensure(depth)
    # sigma_0 lifts the quotient augmentation through proj
    r_q0 = res_quot.rank(0)
    gens0 = np.stack([generator_vector(ring, r_q0, j) for j in range(r_q0)],
                     axis=1) if r_q0 else gfmat.zeros(res_quot.frees[0].vdim, 0)
    lifted = gfmat.solve(proj.matrix,
                         (res_quot.augmentation.matrix @ gens0) % p, p)
    if lifted is None:
        raise InternalInvariantViolation("projection is not surjective")
    sigma0 = free_map_from_generator_images(res_quot.frees[0], mid, lifted)
    taus: list[ModuleMap | None] = [None]
    maps: list[ModuleMap] = []
    frees: list[Module] = []
    for k in range(depth + 1):
        r_a, r_c = res_sub.rank(k), res_quot.rank(k)
        free_b = free_module(ring, r_a + r_c)
        frees.append(free_b)
        if k == 0:
            aug_mat = np.hstack([
                (incl.matrix @ res_sub.augmentation.matrix) % p,
                sigma0.matrix,
            ])
            maps.append(ModuleMap(free_b, mid, aug_mat))
            continue
        # solve tau_k on generators of F^C_k
        gens = np.stack([generator_vector(ring, r_c, j) for j in range(r_c)],
                        axis=1) if r_c else gfmat.zeros(res_quot.frees[k].vdim, 0)
        if k == 1:
            rhs = (-(sigma0.matrix @ res_quot.boundary(1).matrix @ gens)) % p
            sys_mat = (incl.matrix @ res_sub.augmentation.matrix) % p
        else:
            rhs = (-(taus[k - 1].matrix @ res_quot.boundary(k).matrix @ gens)) % p
            sys_mat = res_sub.boundary(k - 1).matrix
        images = gfmat.solve(sys_mat, rhs, p)
        if images is None:
            raise InternalInvariantViolation("horseshoe correction inconsistent")
        tau_k = free_map_from_generator_images(res_quot.frees[k],
                                               res_sub.frees[k - 1], images)
        taus.append(tau_k)
        top = np.hstack([res_sub.boundary(k).matrix, tau_k.matrix])
        bottom = np.hstack([
            gfmat.zeros(res_quot.frees[k - 1].vdim, res_sub.frees[k].vdim),
            res_quot.boundary(k).matrix,
        ])
        maps.append(ModuleMap(frees[k], frees[k - 1], np.vstack([top, bottom])))
    assembled = AssembledResolution(mid, maps)
    return assembled, taus


# -- connecting maps and the long sequence ------------------------------------


def _connecting_on_target(hc_mid: HomCochain, incl: ModuleMap,
                          proj: ModuleMap, ext_quot_k: ExtResult,
                          ext_sub_k1: ExtResult) -> ModuleMap:
    """Snake map Ext^k(L, C'') -> Ext^{k+1}(L, A') for exact 0->A'->B->C''->0.

    All three cochains share one resolution of L.  Each representative is
    lifted componentwise through proj, pushed through the differential of
    the middle complex, and pulled back along incl.
    """
    p = incl.ring.p
    k = ext_quot_k.n
    r_k = hc_mid.res.rank(k)
    r_k1 = hc_mid.res.rank(k + 1)
    lift_block = np.kron(gfmat.identity(r_k), proj.matrix)
    pull_block = np.kron(gfmat.identity(r_k1), incl.matrix)
    cols = []
    for j in range(ext_quot_k.dim):
        z = ext_quot_k.reps[:, j]
        w = gfmat.solve(lift_block, z, p)
        if w is None:
            raise InternalInvariantViolation("cochain lift through projection failed")
        dw = (hc_mid.diff_matrix(k + 1) @ w) % p
        y = gfmat.solve(pull_block, dw, p)
        if y is None:
            raise InternalInvariantViolation("connecting pullback failed")
        cols.append(ext_sub_k1.class_of(y))
    mat = np.stack(cols, axis=1) if cols else gfmat.zeros(ext_sub_k1.dim, 0)
    return ModuleMap(ext_quot_k.module, ext_sub_k1.module, mat)


@dataclass
class ConnectingData:
    """Assembled long sequence in Ext with its S-exactness verdict.

    modules and chain_maps give the capped chain 0 -> X_0 -> X_1 -> ...;
    delta_indices locates the connecting maps inside chain_maps.  The
    correctors record the S-isomorphisms splicing the exact core of the
    input back to its stated end terms, with their inverse witnesses.
    """

    variance: str
    degree: int
    modules: list[Module]
    chain_maps: list[ModuleMap]
    delta_indices: list[int]
    report: SExactReport
    correctors: dict

    @property
    def ok(self) -> bool:
        return self.report.ok

    def delta(self, k: int) -> ModuleMap:
        """The connecting map landing in degree k (1-based)."""
        return self.chain_maps[self.delta_indices[k - 1]]


def _exact_core(f: ModuleMap, g: ModuleMap, s_set: MultSet, s_mid: RingElement):
    """Split an S-exact 0->A->B->C->0 into its exact core and correctors.

    The core is 0 -> Ker g -> B -> Im g -> 0, genuinely exact.  The
    corrector into Ker g is the corestriction of (s_mid . f), which lands
    there because s_mid squeezes Im f into Ker g; the corrector out of
    Im g is the inclusion into C.  Both are S-isomorphisms and get
    inverse witnesses.
    """
    mid = f.target
    p = f.ring.p
    ker_g, incl_k = subquotient(g, "kernel")
    img_g, incl_i, cores_g = image_factorization(g)
    t1_mat = gfmat.solve(incl_k.matrix,
                         (mid.action_of(s_mid) @ f.matrix) % p, p)
    if t1_mat is None:
        raise InternalInvariantViolation("scaled map does not land in the kernel")
    t1 = ModuleMap(f.source, ker_g, t1_mat)
    if not is_s_isomorphism(t1, s_set).verdict:
        raise InternalInvariantViolation("kernel corrector is not an S-iso")
    t1_inv, s1 = s_iso_inverse(t1, s_set)
    t2 = incl_i
    if not is_s_isomorphism(t2, s_set).verdict:
        raise InternalInvariantViolation("image corrector is not an S-iso")
    t2_inv, s2 = s_iso_inverse(t2, s_set)
    return {
        "kernel": ker_g, "kernel_inclusion": incl_k,
        "image": img_g, "image_inclusion": incl_i, "corestriction": cores_g,
        "t1": t1, "t1_inv": t1_inv, "t1_witness": s1,
        "t2": t2, "t2_inv": t2_inv, "t2_witness": s2,
    }


def long_ext_sequence(short: tuple[ModuleMap, ModuleMap], other: Module,
                      n: int, variance: str, s_set: MultSet) -> ConnectingData:
    """The long S-exact Ext sequence of an S-exact 0 -> A -> B -> C -> 0.

    variance "covariant" applies Hom(other, -): the chain runs
    0 -> Ext^0(L,A) -> Ext^0(L,B) -> Ext^0(L,C) -> Ext^1(L,A) -> ...
    through degree n.  variance "contravariant" applies Hom(-, other) and
    runs 0 -> Ext^0(C,N) -> Ext^0(B,N) -> Ext^0(A,N) -> Ext^1(C,N) -> ...

    Connecting maps are the classical snake maps of the exact core,
    corrected on both sides by the induced maps of the inverse
    S-isomorphisms, exactly as the construction of the sequence dictates.
    The returned report checks S-exactness at every interior position.
    """
    f, g = short
    if variance not in ("covariant", "contravariant"):
        raise InputError("variance must be 'covariant' or 'contravariant'")
    if n < 0:
        raise InputError("degree must be nonnegative")
    base = s_exactness_check(cap_chain([f, g]), s_set)
    if not base.ok:
        bad = [pos.index for pos in base.positions if pos.witness is None]
        raise NotSExact("input sequence is not S-exact; first failure at "
                        "position %d" % bad[0])
    s_mid = base.positions[1].witness
    core = _exact_core(f, g, s_set, s_mid)
    ker_g, incl_k = core["kernel"], core["kernel_inclusion"]
    img_g = core["image"]
    cores_g = core["corestriction"]
    if variance == "covariant":
        res = resolution(other, "minimal")
        res.ensure(n + 1)
        cochains = {name: HomCochain(res, mod) for name, mod in
                    (("A", f.source), ("B", f.target), ("C", g.target),
                     ("K", ker_g), ("I", img_g))}
        exts = {name: [ext_from_cochain(cochains[name], k) for k in range(n + 1)]
                for name in ("A", "B", "C", "I")}
        ext_k_next = [ext_from_cochain(cochains["K"], k) for k in range(n + 2)]
        chain: list[ModuleMap] = []
        deltas: list[int] = []
        for k in range(n + 1):
            chain.append(ext_map_on_target(exts["A"][k], exts["B"][k], f))
            chain.append(ext_map_on_target(exts["B"][k], exts["C"][k], g))
            if k < n:
                to_img = ext_map_on_target(exts["C"][k], exts["I"][k],
                                           core["t2_inv"])
                snake = _connecting_on_target(cochains["B"], incl_k, cores_g,
                                              exts["I"][k], ext_k_next[k + 1])
                fix = ext_map_on_target(ext_k_next[k + 1], exts["A"][k + 1],
                                        core["t1_inv"])
                deltas.append(len(chain))
                chain.append(fix.compose(snake).compose(to_img))
    else:
        res_a = resolution(f.source, "minimal")
        res_c = resolution(g.target, "minimal")
        res_k = resolution(ker_g, "minimal")
        res_i = resolution(img_g, "minimal")
        for r in (res_a, res_c, res_k, res_i):
            r.ensure(n + 1)
        res_b, taus = horseshoe(incl_k, cores_g, res_k, res_i, n + 1)
        lift_f = chain_lift(f, res_a, res_b, n + 1)
        lift_g = chain_lift(g, res_b, res_c, n + 1)
        lift_t1i = chain_lift(core["t1_inv"], res_k, res_a, n + 1)
        lift_t2i = chain_lift(core["t2_inv"], res_c, res_i, n + 1)
        hcs = {"A": HomCochain(res_a, other), "B": HomCochain(res_b, other),
               "C": HomCochain(res_c, other), "K": HomCochain(res_k, other),
               "I": HomCochain(res_i, other)}
        exts = {name: [ext_from_cochain(hcs[name], k) for k in range(n + 1)]
                for name in ("A", "B", "C", "K")}
        ext_i_next = [ext_from_cochain(hcs["I"], k) for k in range(n + 2)]
        chain = []
        deltas = []
        for k in range(n + 1):
            chain.append(ext_map_on_source(lift_g[k], exts["C"][k], exts["B"][k]))
            chain.append(ext_map_on_source(lift_f[k], exts["B"][k], exts["A"][k]))
            if k < n:
                to_ker = ext_map_on_source(lift_t1i[k], exts["A"][k], exts["K"][k])
                # snake: precompose a representative with tau_{k+1}
                tau_ring = ring_matrix_of_free_map(taus[k + 1])
                u = _hom_block_matrix(other, tau_ring.transpose(1, 0, 2))
                cols = [ext_i_next[k + 1].class_of((u @ exts["K"][k].reps[:, j])
                                                   % f.ring.p)
                        for j in range(exts["K"][k].dim)]
                mat = (np.stack(cols, axis=1) if cols
                       else gfmat.zeros(ext_i_next[k + 1].dim, 0))
                snake = ModuleMap(exts["K"][k].module,
                                  ext_i_next[k + 1].module, mat)
                fix = ext_map_on_source(lift_t2i[k + 1], ext_i_next[k + 1],
                                        exts["C"][k + 1])
                deltas.append(len(chain))
                chain.append(fix.compose(snake).compose(to_ker))
    z = zero_module(f.ring)
    full = [ModuleMap.zero(z, chain[0].source)] + chain
    deltas = [i + 1 for i in deltas]
    report = s_exactness_check(full, s_set)
    modules = [z] + [m.target for m in full]
    return ConnectingData(variance, n, modules, full, deltas, report, core)


# -- injective side ------------------------------------------------------------


def injective_cocover(module: Module) -> ModuleMap:
    """An embedding of the module into an injective module.

    Dualize a minimal free cover of the character dual: the double dual
    is the identity in these coordinates, so transposing the cover matrix
    embeds the module into the dual of a free module, which is injective.
    """
    dual = character_dual(module)
    res = resolution(dual, "minimal")
    res.ensure(0)
    cover = res.augmentation
    env = character_dual(cover.source)
    iota = ModuleMap(module, env, cover.matrix.T.copy())
    if gfmat.rank(iota.matrix, module.ring.p) != module.vdim:
        raise InternalInvariantViolation("cocover is not injective")
    return iota


# -- resolution wire format ----------------------------------------------------


def resolution_to_spec(res: BaseResolution, depth: int) -> dict:
    res.ensure(depth)
    return {
        "kind": "resolution",
        "module": module_to_spec(res.module),
        "depth": depth,
        "ranks": [res.rank(k) for k in range(depth + 1)],
        "augmentation": map_to_spec(res.augmentation),
        "boundaries": [map_to_spec(res.boundary(k)) for k in range(1, depth + 1)],
    }


def resolution_from_spec(ring: FiniteAlgebra, doc: dict,
                         where: str = "resolution") -> AssembledResolution:
    if not isinstance(doc, dict) or doc.get("kind") != "resolution":
        raise InputError("%s/kind: expected 'resolution'" % where)
    for key in ("module", "depth", "ranks", "augmentation", "boundaries"):
        if key not in doc:
            raise InputError("%s/%s: missing" % (where, key))
    module = module_from_spec(ring, doc["module"], "%s/module" % where)
    ranks = doc["ranks"]
    if not isinstance(ranks, list) or not all(isinstance(r, int) for r in ranks):
        raise InputError("%s/ranks: expected a list of integers" % where)
    frees = [free_module(ring, r) for r in ranks]
    maps = [map_from_spec(frees[0], module, doc["augmentation"],
                          "%s/augmentation" % where)]
    bdocs = doc["boundaries"]
    if not isinstance(bdocs, list) or len(bdocs) != len(ranks) - 1:
        raise InputError("%s/boundaries: expected %d entries"
                         % (where, len(ranks) - 1))
    for k, bdoc in enumerate(bdocs, start=1):
        maps.append(map_from_spec(frees[k], frees[k - 1], bdoc,
                                  "%s/boundaries/%d" % (where, k - 1)))
    return AssembledResolution(module, maps)
