import math
import random

import pytest

from conftest import product_ring

from srelhom import intmat
from srelhom.dimensions import DimValue
from srelhom.errors import (
    DividesS,
    InputError,
    RingMismatch,
    UnsupportedPair,
)
from srelhom.modules import regular_module
from srelhom.rings import enumerate_ideals, mult_closure, quotient_algebra
from srelhom.zmodules import (
    FactorRingReport,
    ZMod,
    ZMultSet,
    change_of_rings_check,
    factor_ring_check,
    z_cyclic,
    z_direct_sum,
    z_ext,
    z_free,
    z_module,
    z_module_from_factors,
    z_module_from_spec,
    z_module_to_spec,
    z_multset,
    z_multset_from_spec,
    z_multset_to_spec,
    z_s_pd,
    z_uniform_torsion,
)


def random_int_matrix(rng, rows, cols, lo=-20, hi=20):
    return [[rng.randrange(lo, hi + 1) for _ in range(cols)] for _ in range(rows)]


def random_zmod(rng, ring="Z", m=None, max_gens=3, max_rels=3, span=6):
    g = rng.randrange(1, max_gens + 1)
    a = rng.randrange(0, max_rels + 1)
    rows = [[rng.randrange(-span, span + 1) for _ in range(a)] for _ in range(g)]
    return z_module(ring, rows, m=m)


# -- integer matrix layer -----------------------------------------------------


def test_smith_frozen_examples():
    _, d, _ = intmat.smith_normal_form([[1, 0], [0, 1]])
    assert d == [[1, 0], [0, 1]]
    _, d, _ = intmat.smith_normal_form([[2, 0], [0, 3]])
    assert intmat.diagonal_of(d) == [1, 6]
    _, d, _ = intmat.smith_normal_form([[0, 0], [0, 0]])
    assert d == [[0, 0], [0, 0]]


def test_smith_randomized_properties():
    rng = random.Random(20260815)
    for _ in range(120):
        rows = rng.randrange(0, 9)
        cols = rng.randrange(0, 9)
        a = random_int_matrix(rng, rows, cols)
        u, d, v = intmat.smith_normal_form(a)
        assert intmat.matmul(intmat.matmul(u, a), v) == d
        assert abs(intmat.det(u)) == 1
        assert abs(intmat.det(v)) == 1
        diag = intmat.diagonal_of(d)
        for i in range(rows):
            for j in range(cols):
                if i != j:
                    assert d[i][j] == 0
        for x, y in zip(diag, diag[1:]):
            assert x >= 0
            if x == 0:
                assert y == 0
            else:
                assert y % x == 0


def test_solve_and_kernel():
    rng = random.Random(7)
    for _ in range(60):
        a = random_int_matrix(rng, rng.randrange(1, 5), rng.randrange(1, 5), -9, 9)
        x = random_int_matrix(rng, len(a[0]), 2, -9, 9)
        b = intmat.matmul(a, x)
        found = intmat.solve(a, b)
        assert found is not None
        assert intmat.matmul(a, found) == b
        ker = intmat.kernel_basis(a)
        kcols = intmat.shape(ker)[1]
        zero = intmat.zeros(len(a), kcols)
        assert intmat.matmul(a, ker) == zero if kcols else True
    assert intmat.solve([[2]], [[3]]) is None
    assert intmat.solve([[2, 4], [0, 6]], [[6], [6]]) == [[1], [1]]


def test_lattice_helpers():
    basis = intmat.column_lattice_basis([[2, 4, 3], [0, 0, 0]])
    assert basis == [[1], [0]]
    # {x : 2x in 4Z} = 2Z
    assert intmat.solution_lattice([[2]], [[4]]) == [[2]]
    free, tors = intmat.quotient_invariants(intmat.identity(2), [[2, 0], [0, 6]])
    assert (free, tors) == (0, (2, 6))
    free, tors = intmat.quotient_invariants(intmat.identity(3), [[2, 0], [0, 6], [0, 0]])
    assert (free, tors) == (1, (2, 6))
    with pytest.raises(InputError):
        intmat.quotient_invariants([[2]], [[3]])


# -- presentations ------------------------------------------------------------


def test_structure_frozen():
    assert z_cyclic(6).structure() == (0, (6,))
    assert z_cyclic(0).structure() == (1, ())
    assert z_module("Z", [[2, 0], [0, 3]]).structure() == (0, (6,))
    assert z_free("Z", 2).structure() == (2, ())
    assert str(z_module("Z", [[2, 0], [0, 4]])) == "Z/2 + Z/4"
    zm = z_module("Z_mod", [[2]], m=4)
    assert zm.structure() == (0, (2,))
    assert zm.exponent() == 2
    assert z_free("Z_mod", 1, m=4).structure() == (0, (4,))
    assert z_free("Z", 1).exponent() is None
    assert z_module("Z", [[1]]).is_zero()


def test_structure_order_matches_lattice_index():
    # for finite modules the group order equals the index of the relation
    # lattice, i.e. the absolute determinant of a square basis
    rng = random.Random(11)
    for _ in range(40):
        g = rng.randrange(1, 4)
        rows = [[rng.randrange(-6, 7) for _ in range(g)] for _ in range(g)]
        mod = z_module("Z", rows)
        free, tors = mod.structure()
        det = intmat.det(rows)
        if det == 0:
            assert free > 0
        else:
            assert free == 0
            assert math.prod(tors) == abs(det)


def test_presentation_validation():
    with pytest.raises(InputError):
        z_module("Z", [[1, 2], [3]])
    with pytest.raises(InputError):
        ZMod("Z", 4, ((2,),))
    with pytest.raises(InputError):
        ZMod("Z_mod", None, ((2,),))
    with pytest.raises(InputError):
        ZMod("Q", None, ())
    with pytest.raises(InputError):
        z_free("Z", -1)


def test_multset_validation():
    s = z_multset("Z_mod", [7, 3], m=4)
    assert s.generators == (3, 3)
    with pytest.raises(InputError):
        z_multset("Z", [2, 0])
    with pytest.raises(InputError):
        z_multset("Z_mod", [4], m=4)
    assert str(z_multset("Z", [2, 3])) == "<2, 3>"


def test_direct_sum_structure():
    a = z_cyclic(4)
    b = z_module("Z", [[2, 0], [0, 3]])
    total = z_direct_sum(a, b, z_free("Z", 1))
    free, tors = total.structure()
    assert free == 1
    assert math.prod(tors) == 24
    with pytest.raises(RingMismatch):
        z_direct_sum(a, z_free("Z_mod", 1, m=4))
    with pytest.raises(InputError):
        z_direct_sum()


# -- uniform torsion ----------------------------------------------------------


def test_torsion_frozen_examples():
    s2 = z_multset("Z", [2])
    report = z_uniform_torsion(z_cyclic(3), s2)
    assert not report.verdict
    assert "0 mod 3" in report.reason
    report = z_uniform_torsion(z_cyclic(8), s2)
    assert report.verdict
    assert report.witness == 8
    assert report.expression == "2^3"
    report = z_uniform_torsion(z_module("Z", [[1]]), s2)
    assert report.verdict and report.witness == 1 and report.expression == "1"
    report = z_uniform_torsion(z_free("Z", 1), s2)
    assert not report.verdict
    assert "free summand" in report.reason


def test_torsion_matches_exhaustive_products():
    rng = random.Random(404)
    for _ in range(80):
        mod = random_zmod(rng, max_gens=2, max_rels=3, span=5)
        gens = tuple(rng.choice([2, 3, 5, 6, 7]) for _ in range(rng.randrange(1, 3)))
        s = z_multset("Z", gens)
        report = z_uniform_torsion(mod, s)
        free, _ = mod.structure()
        if free:
            assert not report.verdict
            continue
        e = mod.exponent()
        seen = {1 % e}
        frontier = set(seen)
        for _ in range(e + 1):
            frontier = {(v * g) % e for v in frontier for g in gens} - seen
            seen |= frontier
        assert report.verdict == (0 in seen)
        if report.verdict:
            assert report.witness % e == 0


def test_torsion_ring_mismatch():
    with pytest.raises(RingMismatch):
        z_uniform_torsion(z_cyclic(4), z_multset("Z_mod", [3], m=4))


# -- S-projective dimension ---------------------------------------------------


def test_spd_over_z_frozen():
    s2 = z_multset("Z", [2])
    res = z_s_pd(z_cyclic(2), s2)
    assert res.value == DimValue.exact(0)
    assert res.certificate.s == 2
    assert res.certificate.section == ((0,),)  # 2*id factors through the zero map
    res = z_s_pd(z_cyclic(3), s2)
    assert res.value == DimValue.exact(1)
    assert res.levels[0].attempted == (1, 2)
    assert res.certificate.s == 1 and res.certificate.expression == "1"
    res = z_s_pd(z_free("Z", 2), s2)
    assert res.value == DimValue.exact(0)
    assert res.certificate.s == 1
    assert res.certificate.section == ((1, 0), (0, 1))
    assert str(res) == "S-pd = 0 (bound 8)"


def test_spd_over_z_is_at_most_one():
    rng = random.Random(31)
    for _ in range(60):
        mod = random_zmod(rng)
        gens = tuple(rng.choice([2, 3, 5, 7]) for _ in range(rng.randrange(1, 3)))
        res = z_s_pd(mod, z_multset("Z", gens))
        assert res.value.known
        assert res.value.value <= 1


def test_spd_section_is_verifiable():
    # the returned section must satisfy phi@Q = 0 exactly over Z
    rng = random.Random(92)
    for _ in range(30):
        mod = random_zmod(rng, max_gens=2)
        res = z_s_pd(mod, z_multset("Z", [2, 3]))
        if res.value == DimValue.exact(0) and mod.generators:
            from srelhom.zmodules import _relation_lattice
            phi = [list(row) for row in res.certificate.section]
            lat = _relation_lattice(mod)
            if intmat.shape(lat)[1]:
                prod = intmat.matmul(phi, lat)
                assert all(x == 0 for row in prod for x in row)


def test_spd_over_zmod_frozen():
    res = z_s_pd(z_module("Z_mod", [[2]], m=4), z_multset("Z_mod", [3], m=4))
    assert res.value == DimValue.over(8)
    assert len(res.levels) == 9
    assert all(not lvl.verdict for lvl in res.levels)
    assert res.levels[0].attempted == (1, 3)
    res = z_s_pd(z_free("Z_mod", 1, m=4), z_multset("Z_mod", [3], m=4))
    assert res.value == DimValue.exact(0)
    # once some product of the generators hits 0 mod m everything splits
    res = z_s_pd(z_module("Z_mod", [[2]], m=8), z_multset("Z_mod", [2], m=8))
    assert res.value == DimValue.exact(0)


def test_spd_over_prime_modulus_is_zero():
    # Z/p is a field, so every module splits at level zero
    rng = random.Random(55)
    for p in (2, 3, 5):
        for _ in range(10):
            mod = random_zmod(rng, ring="Z_mod", m=p, span=p)
            res = z_s_pd(mod, z_multset("Z_mod", [p - 1], m=p), bound=3)
            assert res.value == DimValue.exact(0)


def test_spd_input_errors():
    with pytest.raises(InputError):
        z_s_pd(z_cyclic(2), z_multset("Z", [2]), bound=-1)
    with pytest.raises(RingMismatch):
        z_s_pd(z_cyclic(2), z_multset("Z_mod", [3], m=4))


# -- Ext ----------------------------------------------------------------------


def primary_parts(structure):
    free, tors = structure
    parts = []
    for d in tors:
        left = d
        q = 2
        while q * q <= left:
            while left % q == 0:
                power = q
                while left % (power * q) == 0:
                    power *= q
                parts.append(power)
                left //= power
            q += 1
        if left > 1:
            parts.append(left)
    return free, sorted(parts)


def test_ext_gcd_grid():
    for d in range(2, 13):
        for e in range(2, 13):
            g = math.gcd(d, e)
            want = (0, (g,)) if g > 1 else (0, ())
            assert z_ext(z_cyclic(d), z_cyclic(e), 0).structure() == want
            assert z_ext(z_cyclic(d), z_cyclic(e), 1).structure() == want


def test_ext_z_frozen():
    assert z_ext(z_cyclic(4), z_cyclic(6), 1).structure() == (0, (2,))
    assert z_ext(z_free("Z", 1), z_cyclic(5), 1).is_zero()
    assert z_ext(z_cyclic(4), z_cyclic(6), 2).is_zero()
    assert z_ext(z_free("Z", 2), z_free("Z", 3), 0).structure() == (6, ())
    # Hom(Z/d, Z) = 0 but Hom(Z, Z/d) = Z/d
    assert z_ext(z_cyclic(4), z_free("Z", 1), 0).is_zero()
    assert z_ext(z_free("Z", 1), z_cyclic(4), 0).structure() == (0, (4,))


def test_ext_zmod_periodic():
    half = z_module("Z_mod", [[2]], m=4)
    for n in range(6):
        assert z_ext(half, half, n).structure() == (0, (2,))
    result = z_ext(half, half, 2)
    assert result.ring == "Z_mod" and result.m == 4


def test_ext_over_prime_modulus():
    # semisimple case: higher Ext vanishes, Hom has order p^(dim*dim)
    v = z_free("Z_mod", 2, m=3)
    w = z_free("Z_mod", 1, m=3)
    assert z_ext(v, w, 1).is_zero()
    assert z_ext(v, w, 3).is_zero()
    assert z_ext(v, w, 0).structure() == (0, (3, 3))


def test_ext_additive_in_first_argument():
    rng = random.Random(606)
    for _ in range(25):
        a = random_zmod(rng, max_gens=2, max_rels=2, span=4)
        b = random_zmod(rng, max_gens=2, max_rels=2, span=4)
        c = random_zmod(rng, max_gens=2, max_rels=2, span=4)
        for n in (0, 1):
            whole = z_ext(z_direct_sum(a, b), c, n).structure()
            left = z_ext(a, c, n).structure()
            right = z_ext(b, c, n).structure()
            merged = (left[0] + right[0], tuple(sorted(left[1] + right[1])))
            assert primary_parts(whole) == primary_parts(merged)


def test_ext_errors():
    with pytest.raises(RingMismatch):
        z_ext(z_cyclic(2), z_free("Z_mod", 1, m=4), 1)
    with pytest.raises(InputError):
        z_ext(z_cyclic(2), z_cyclic(2), -1)


# -- factor ring comparison ---------------------------------------------------


def test_factor_ring_frozen_examples():
    report = factor_ring_check(3, z_free("Z_mod", 1, m=3), z_multset("Z", [2]))
    assert isinstance(report, FactorRingReport)
    assert report.verdict == "pass"
    assert report.z_result.value == DimValue.exact(1)
    assert report.bar_result.value == DimValue.exact(0)
    report = factor_ring_check(5, z_free("Z_mod", 2, m=5), z_multset("Z", [2, 3]))
    assert report.verdict == "pass"
    report = factor_ring_check(4, z_module("Z_mod", [[2]], m=4), z_multset("Z", [3]))
    assert report.verdict == "vacuous"
    assert not report.bar_result.value.known
    assert report.ok


def test_factor_ring_divides_errors():
    with pytest.raises(DividesS):
        factor_ring_check(4, z_module("Z_mod", [[2]], m=4), z_multset("Z", [2]))
    # no single generator is divisible by 6, but the product 2*3 is
    with pytest.raises(DividesS):
        factor_ring_check(6, z_module("Z_mod", [[2]], m=6), z_multset("Z", [2, 3]))
    with pytest.raises(InputError):
        factor_ring_check(1, z_module("Z_mod", [[2]], m=4), z_multset("Z", [3]))
    with pytest.raises(RingMismatch):
        factor_ring_check(3, z_module("Z_mod", [[2]], m=4), z_multset("Z", [2]))
    with pytest.raises(RingMismatch):
        factor_ring_check(4, z_module("Z_mod", [[2]], m=4),
                          z_multset("Z_mod", [3], m=4))


def test_factor_ring_sweep():
    rng = random.Random(777)
    for a in (3, 5, 7):
        for gens in ((2,), (2, 3)):
            if any(g % a == 0 for g in gens):
                continue
            for _ in range(12):
                mod = random_zmod(rng, ring="Z_mod", m=a, span=a)
                report = factor_ring_check(a, mod, z_multset("Z", gens))
                if mod.is_zero():
                    assert report.verdict == "inapplicable"
                else:
                    assert report.verdict == "pass", report.statement


# -- change of rings ----------------------------------------------------------


def test_change_of_rings_z_to_zmod():
    report = change_of_rings_check(3, z_free("Z_mod", 1, m=3), z_multset("Z", [2]))
    assert report.verdict == "pass"
    assert report.pair == "Z->Z/3"
    assert report.lhs.value == DimValue.exact(1)
    assert report.mid.value == DimValue.exact(0)
    assert report.rhs.value == DimValue.exact(1)
    rng = random.Random(13)
    for a in (3, 4, 5, 9):
        for _ in range(8):
            mod = random_zmod(rng, ring="Z_mod", m=a, span=a)
            gens = tuple(rng.choice([g for g in (2, 3, 5, 7) if g % a])
                         for _ in range(rng.randrange(1, 3)))
            report = change_of_rings_check(a, mod, z_multset("Z", gens), bound=4)
            assert report.verdict in ("pass", "vacuous"), report.statement


def test_change_of_rings_finite_quotient():
    ring = product_ring()
    ideals = enumerate_ideals(ring).ideals
    kill = next(i for i in ideals if i.label() == "(e2, f)")
    data = quotient_algebra(ring, kill)
    s = mult_closure(ring, [ring.element([1, 0, 0])])
    report = change_of_rings_check(data, regular_module(data.algebra), s)
    assert report.pair == "finite-quotient"
    assert report.verdict == "pass"
    assert report.lhs.value == DimValue.exact(0)
    assert report.mid.value == DimValue.exact(0)
    assert report.rhs.value == DimValue.exact(0)
    # quotient by the zero ideal is the identity map
    zero = next(i for i in ideals if i.fdim == 0)
    data0 = quotient_algebra(ring, zero)
    report = change_of_rings_check(data0, regular_module(data0.algebra), s, bound=4)
    assert report.verdict == "pass"


def test_change_of_rings_errors():
    with pytest.raises(UnsupportedPair):
        change_of_rings_check("Z->Q", z_cyclic(2), z_multset("Z", [2]))
    with pytest.raises(UnsupportedPair):
        change_of_rings_check(True, z_cyclic(2), z_multset("Z", [2]))
    with pytest.raises(DividesS):
        change_of_rings_check(4, z_module("Z_mod", [[2]], m=4), z_multset("Z", [4]))
    with pytest.raises(RingMismatch):
        change_of_rings_check(3, z_module("Z_mod", [[2]], m=4), z_multset("Z", [2]))
    # a product of generators may die in the quotient without blocking the
    # comparison: the induced set then reaches 0 and the middle term drops to 0
    report = change_of_rings_check(4, z_module("Z_mod", [[2]], m=4), z_multset("Z", [2]))
    assert report.verdict == "pass"
    assert report.mid.value == DimValue.exact(0)
    ring = product_ring()
    zero = next(i for i in enumerate_ideals(ring).ideals if i.fdim == 0)
    data = quotient_algebra(ring, zero)
    with pytest.raises(UnsupportedPair):
        change_of_rings_check(data, z_cyclic(2), z_multset("Z", [2]))


# -- wire format --------------------------------------------------------------


def test_zmod_spec_roundtrip():
    mod = z_module("Z_mod", [[2, 0], [1, 3]], m=6)
    doc = z_module_to_spec(mod)
    assert doc == {"kind": "z_presentation", "ring": "Z_mod", "m": 6,
                   "matrix": [[2, 0], [1, 3]]}
    assert z_module_from_spec(doc) == mod
    free = z_module_to_spec(z_free("Z", 2))
    assert free["m"] is None
    assert z_module_from_spec(free) == z_free("Z", 2)


def test_zmod_spec_errors():
    with pytest.raises(InputError, match="kind"):
        z_module_from_spec({"kind": "matrix"})
    with pytest.raises(InputError, match="ring"):
        z_module_from_spec({"kind": "z_presentation", "ring": "Q", "m": None,
                            "matrix": []})
    with pytest.raises(InputError, match=r"matrix\[0\]\[1\]"):
        z_module_from_spec({"kind": "z_presentation", "ring": "Z", "m": None,
                            "matrix": [[1, True]]})
    with pytest.raises(InputError, match="module"):
        z_module_from_spec({"kind": "z_presentation", "ring": "Z", "m": None,
                            "matrix": [[1], [2, 3]]})


def test_multset_spec_roundtrip():
    s = z_multset("Z", [2, 3])
    assert z_multset_to_spec(s) == {"generators": [2, 3]}
    assert z_multset_from_spec({"generators": [2, 3]}) == s
    back = z_multset_from_spec({"generators": [3]}, ring="Z_mod", m=4)
    assert back == z_multset("Z_mod", [3], m=4)
    with pytest.raises(InputError, match="generators"):
        z_multset_from_spec({})
    with pytest.raises(InputError, match=r"generators\[0\]"):
        z_multset_from_spec({"generators": ["2"]})
