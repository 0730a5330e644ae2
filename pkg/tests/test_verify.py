import json

import pytest

import srelhom.homology
from srelhom import gfmat
from srelhom.errors import InputError, UnknownTheorem
from srelhom.modules import ModuleMap
from srelhom.rings import prime_field
import srelhom.checks as checks_mod
from srelhom.checks import (
    REGISTRY,
    TheoremCase,
    TrialOutcome,
    full_suite,
    generate_instance,
    replay,
    verify,
)

IN_SCOPE = [
    "lemma-1.1", "lemma-1.2", "theorem-1.3", "cor-1.4",
    "lemma-2.3", "prop-2.5", "prop-2.6", "cor-2.7",
    "prop-2.9", "prop-2.10", "prop-2.12",
    "prop-3.2", "cor-3.3", "cor-3.5", "example-3.6",
    "prop-4.1", "prop-4.3",
]


def test_registry_covers_exactly_the_checked_statements():
    assert list(REGISTRY) == IN_SCOPE


def test_unknown_theorem_rejected():
    with pytest.raises(UnknownTheorem):
        verify(TheoremCase("lemma-9.9"))
    with pytest.raises(UnknownTheorem):
        replay({"theorem": "nope", "trial": 0, "seed": 0,
                "bound": 4, "max_rank": 1})
    with pytest.raises(InputError):
        replay({"theorem": "lemma-1.1"})


def test_case_overrides_and_validation():
    rep = verify(TheoremCase("lemma-1.1", trials=7, seed=3, bound=5))
    assert (rep.trials, rep.seed, rep.bound) == (7, 3, 5)
    with pytest.raises(InputError):
        verify(TheoremCase("lemma-1.1", trials=-1))
    with pytest.raises(InputError):
        verify(TheoremCase("lemma-1.1", max_rank=0))


def test_report_json_schema():
    rep = verify(TheoremCase("cor-2.7", trials=5))
    doc = rep.to_json()
    assert sorted(doc) == ["counterexamples", "failures", "passes",
                           "seed", "theorem", "trials", "vacuous"]
    assert doc["trials"] == doc["passes"] + doc["failures"] + doc["vacuous"]
    json.dumps(doc)  # must be serializable as-is


@pytest.mark.parametrize("theorem", IN_SCOPE)
def test_entry_has_no_failures_on_seeded_sample(theorem):
    rep = verify(TheoremCase(theorem, trials=12))
    assert rep.failures == 0, rep.counterexamples
    assert rep.passes + rep.vacuous == 12


def test_sampled_entries_actually_decide_something():
    # vacuous-only sweeps prove nothing; every entry must pass at least
    # once in a modest sample
    for theorem in IN_SCOPE:
        rep = verify(TheoremCase(theorem, trials=25))
        assert rep.passes > 0, theorem


def test_verify_deterministic_same_process():
    a = verify(TheoremCase("prop-2.9", trials=15))
    b = verify(TheoremCase("prop-2.9", trials=15))
    assert json.dumps(a.to_json()) == json.dumps(b.to_json())


def test_full_suite_shape_and_determinism():
    a = full_suite(seed=0, trials=3)
    b = full_suite(seed=0, trials=3)
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)
    assert [r["theorem"] for r in a["reports"]] == IN_SCOPE
    assert a["failures"] == 0
    assert a["ok"]


def test_different_seeds_change_the_stream():
    a = verify(TheoremCase("lemma-1.1", trials=10, seed=0))
    b = verify(TheoremCase("lemma-1.1", trials=10, seed=1))
    # same verdict totals are possible, but the underlying draws differ;
    # compare through a failure-free proxy: rerun with a sabotage-free
    # entry and check dump seeds would differ
    assert a.seed != b.seed


def _zeroed_connecting(real):
    def sabotaged(hc_mid, incl, proj, ext_quot_k, ext_sub_k1):
        f = real(hc_mid, incl, proj, ext_quot_k, ext_sub_k1)
        return ModuleMap(f.source, f.target,
                         gfmat.zeros(f.target.vdim, f.source.vdim))
    return sabotaged


def test_mutation_zeroed_connecting_map_is_caught(monkeypatch):
    # sanity first: the honest engine passes
    honest = verify(TheoremCase("theorem-1.3", trials=60))
    assert honest.failures == 0
    monkeypatch.setattr(
        srelhom.homology, "_connecting_on_target",
        _zeroed_connecting(srelhom.homology._connecting_on_target))
    broken = verify(TheoremCase("theorem-1.3", trials=60))
    assert broken.failures > 0
    dump = broken.counterexamples[0]
    assert dump["theorem"] == "theorem-1.3"
    assert dump["trial_seed"] == "0:theorem-1.3:%d" % dump["trial"]
    # the dump replays to the same verdict while the defect is present
    assert replay(dump).verdict == "fail"
    monkeypatch.undo()
    # and passes once the engine is repaired
    assert replay(dump).verdict == "pass"


def test_mutation_lying_dimension_walk_is_caught(monkeypatch):
    # claim S-pd 0 whenever the walk actually exhausted its bound; the
    # trial re-verifies the terminating witness independently and must
    # reject the fabricated level
    import dataclasses
    from srelhom.dimensions import DimValue
    real = checks_mod.s_pd

    def lying(module, s_set, bound):
        res = real(module, s_set, bound)
        if not res.value.known:
            res = dataclasses.replace(res, value=DimValue.exact(0))
        return res

    monkeypatch.setattr(checks_mod, "s_pd", lying)
    broken = verify(TheoremCase("prop-2.5", trials=80))
    assert broken.failures > 0
    assert any("witness" in c["detail"] or "torsion" in c["detail"]
               for c in broken.counterexamples)
    monkeypatch.undo()
    assert replay(broken.counterexamples[0]).verdict in ("pass", "vacuous")


def test_counterexample_dump_is_json_ready():
    import srelhom.homology as H
    real = H._connecting_on_target
    try:
        H._connecting_on_target = _zeroed_connecting(real)
        broken = verify(TheoremCase("theorem-1.3", trials=60))
    finally:
        H._connecting_on_target = real
    assert broken.counterexamples
    text = json.dumps(broken.to_json())
    assert "theorem-1.3" in text


def test_generate_instance_kinds_and_determinism():
    ring = prime_field(3)
    m1 = generate_instance("module", ring, seed=5)
    m2 = generate_instance("module", ring, seed=5)
    assert (m1.vdim == m2.vdim
            and all((a == b).all() for a, b in zip(m1.actions, m2.actions)))
    f, g = generate_instance("s-exact-triple", ring, seed=1)
    assert f.target is g.source
    h, s = generate_instance("s-iso-pair", ring, seed=1)
    assert h.ring is ring and not s.is_zero()
    small, large = generate_instance("nested-multsets", ring, seed=2)
    assert set(small.labels()) <= set(large.labels())
    with pytest.raises(InputError):
        generate_instance("widget", ring)


def test_trial_outcome_verdicts_are_typed():
    rep = verify(TheoremCase("prop-4.3", trials=10))
    assert rep.passes + rep.vacuous == 10
    out = TrialOutcome("pass")
    assert out.dump is None
