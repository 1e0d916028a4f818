"""Witness constructions: RIS, averages, exact pairs, dependent
sequences, the basic inequality, and the indecomposability probe."""

from fractions import Fraction

import pytest

from bdspace.analysis import (CarrierSource, DependentSequenceRecord,
                              alternating_report, basic_inequality_witness,
                              check_ris, classify_local_weight, hi_probe,
                              lower_estimate_witness, make_dependent_sequence,
                              make_exact_pair, make_l1_average,
                              ris_average_report, split_by_local_weight,
                              suggested_js)
from bdspace.errors import (CutTooSmall, NotBlockSequence, NotCertifiedRIS,
                            NotSkippedBlock, SearchExhausted)
from bdspace.norms import sup_norm_interval


def escalating_blocks(forge_arena, n=3, gap=2):
    registry, engine = forge_arena()
    source = CarrierSource(registry, engine, companions=False, gap=gap)
    return registry, engine, source, [source.next_block() for _ in range(n)]


def test_carrier_source_blocks_are_skipped_and_escalating(forge_arena):
    registry, engine, source, xs = escalating_blocks(forge_arena)
    rans = [engine.ran(x) for x in xs]
    for a, b in zip(rans, rans[1:]):
        assert a[1] + 2 <= b[0]          # at least one skipped rank
    ws = [source.carrier_weight(x) for x in xs]
    assert all(w0 < w1 for w0, w1 in zip(ws, ws[1:]))


def test_ris_certificate(forge_arena):
    registry, engine, source, xs = escalating_blocks(forge_arena, n=4)
    js = suggested_js(engine, xs)
    cert = check_ris(engine, xs, Fraction(2), js, registry.max_rank())
    assert cert.passed
    assert cert.cond2_ok and not cert.cond3_violations
    data = cert.to_json()
    assert data["passed"] and data["js"] == js


def test_ris_rejects_overlapping_blocks(forge_arena):
    registry, engine, source, xs = escalating_blocks(forge_arena)
    with pytest.raises(NotBlockSequence):
        check_ris(engine, [xs[0], xs[0]], Fraction(2), [2, 4],
                  registry.max_rank())


def test_split_by_local_weight_is_exact(forge_arena):
    registry, engine, source, xs = escalating_blocks(forge_arena)
    x = xs[0] + xs[1].scaled(Fraction(1, 2))
    w_thresh = source.carrier_weight(xs[0])
    y, z = split_by_local_weight(engine, x, w_thresh)
    q = engine.ran(x)[1]
    for gid in registry.gammas_up_to(q):
        assert engine.value(y, gid) + engine.value(z, gid) == \
            engine.value(x, gid)
        w = registry.records[gid].weight_index
        if engine.value(y, gid):
            assert w is None or w <= w_thresh
        if engine.value(z, gid):
            assert w is not None and w > w_thresh


def test_classify_local_weight(forge_arena):
    registry, engine, source, xs = escalating_blocks(forge_arena, n=3)
    out = classify_local_weight(engine, xs)
    assert out["class"] == "rapidly_increasing"
    assert out["stage_truncated"]
    # a constant-weight sequence classifies as bounded
    registry2, engine2 = forge_arena()
    fixed = CarrierSource(registry2, engine2, weight_j=1, companions=False,
                          gap=2)
    ys = [fixed.next_block() for _ in range(3)]
    out2 = classify_local_weight(engine2, ys)
    assert out2["class"] == "bounded"
    assert out2["j1"] >= 2


def test_lower_estimate_identity(forge_arena):
    registry, engine, source, xs = escalating_blocks(forge_arena, n=3)
    xs = [x.scaled(c) for x, c in zip(xs, (1, Fraction(-1, 2), 2))]
    gamma, report = lower_estimate_witness(engine, xs, 1)
    assert report["identity_ok"]
    beta = registry.schedule.weight_value(2)
    assert report["lhs"] == beta * sum(report["maxima"])
    assert registry.records[gamma].weight_index == 2
    assert registry.records[gamma].age == 3


def test_lower_estimate_needs_skipping(forge_arena):
    registry, engine = forge_arena()
    source = CarrierSource(registry, engine, companions=False, gap=2)
    x1 = source.next_block()
    # forge an adjacent block with no skipped rank in between
    from bdspace.spaces import forge_even
    from bdspace.funcs import Func
    nxt = forge_even(registry, registry.max_rank() // 2,
                     [registry.max_rank() + 1],
                     [Func.unit(registry.base(), role="net")])
    x2 = engine.point_from_d({nxt: Fraction(1)})
    with pytest.raises(NotSkippedBlock):
        lower_estimate_witness(engine, [x1, x2], 1)


def test_lower_estimate_cut_too_small(forge_arena):
    registry, engine, source, xs = escalating_blocks(forge_arena)
    with pytest.raises(CutTooSmall):
        lower_estimate_witness(engine, xs, max(engine.ran(xs[1])))


def test_l1_average(forge_arena):
    registry, engine = forge_arena()
    source = CarrierSource(registry, engine, companions=False, gap=2)
    avg = make_l1_average(engine, source, 4, Fraction(5))
    stage = engine.ran(avg)[1]
    ni = sup_norm_interval(engine, avg, registry.max_rank())
    assert ni.lower == 1  # exactly normalized at the witnessed stage
    assert len(avg.d_coords) == 4


def test_exact_pair_eps1(forge_arena):
    registry, engine, source, xs = escalating_blocks(forge_arena, n=3)
    theta, x, gamma, report = make_exact_pair(engine, xs, 1, 1, Fraction(2))
    assert report.value_at_gamma == 1
    assert engine.value(x, gamma) == 1
    assert report.passed
    assert report.pair_constant == 44
    assert report.theta_ok


def test_exact_pair_eps0(forge_arena):
    registry, engine = forge_arena()
    source = CarrierSource(registry, engine, companions=True)  # gap 3
    xs = [source.next_block() for _ in range(3)]
    theta, z, gamma, report = make_exact_pair(engine, xs, 1, 0, Fraction(2))
    assert engine.value(z, gamma) == 0
    assert report.passed
    assert report.pair_constant == 24
    assert theta == 1
    assert any("middle index" in note for note in report.notes)


def test_dependent_sequence_partial_sums(forge_arena):
    registry, engine = forge_arena()
    sources = [CarrierSource(registry, engine, companions=False, gap=2)]
    rec = make_dependent_sequence(engine, 1, sources, 1, Fraction(45), 3,
                                  blocks_per_pair=2)
    rows = rec.partial_sums(engine)
    beta = Fraction(1, 4)
    for s, lhs, rhs, ok in rows:
        assert ok and lhs == s * beta
    assert rec.validate(engine)
    # chain weights follow the coding rule
    assert registry.records[rec.etas[0]].weight_index == 2
    for i in range(1, rec.length):
        assert registry.records[rec.etas[i]].weight_index == \
            4 * registry.sigma(rec.xis[i - 1])


def test_dependent_sequence_eps0(forge_arena):
    registry, engine = forge_arena()
    sources = [CarrierSource(registry, engine, companions=True)]
    rec = make_dependent_sequence(engine, 1, sources, 0, Fraction(45), 2,
                                  blocks_per_pair=2)
    for s, lhs, rhs, ok in rec.partial_sums(engine):
        assert ok and lhs == 0


def test_alternating_report(forge_arena):
    registry, engine = forge_arena()
    sources = [CarrierSource(registry, engine, companions=False, gap=2)]
    rec = make_dependent_sequence(engine, 1, sources, 1, Fraction(45), 3,
                                  blocks_per_pair=2)
    out = alternating_report(engine, rec, registry.max_rank())
    assert out["rows"]
    assert all(r["verdict"] in ("verified", "reported", "violated")
               for r in out["rows"])
    assert not any(r["verdict"] == "violated" for r in out["rows"])


def test_hi_probe_strict(forge_arena):
    registry, engine = forge_arena(8192)
    Y = CarrierSource(registry, engine, companions=False, gap=2)
    Z = CarrierSource(registry, engine, companions=False, gap=2)
    probe = hi_probe(engine, Y, Z, j0=1, length=5)
    assert probe["witness_value"] == Fraction(5, 4)
    assert probe["plus"].lower >= Fraction(5, 4)
    assert probe["strict"]
    assert probe["paper_bound"]["verdict"] == "reported"


def test_basic_inequality(forge_arena):
    registry, engine = forge_arena()
    source = CarrierSource(registry, engine, companions=False, gap=2)
    xs = [source.next_block() for _ in range(4)]
    js = suggested_js(engine, xs)
    cert = check_ris(engine, xs, Fraction(2), js, registry.max_rank())
    gamma, _ = lower_estimate_witness(engine, xs, 1)
    lams = [Fraction(1), Fraction(-1, 2), Fraction(2), Fraction(1, 3)]
    k0, gstar, wit = basic_inequality_witness(engine, xs, lams, 0, gamma,
                                              cert)
    assert wit["passed"]
    assert wit["inequality_ok"] and wit["tree_ok"]
    if gstar is not None:
        assert wit["supp_ok"] and wit["weight_ok"]


def test_basic_inequality_requires_certificate(forge_arena):
    registry, engine = forge_arena()
    source = CarrierSource(registry, engine, companions=False, gap=2)
    xs = [source.next_block() for _ in range(2)]
    js = suggested_js(engine, xs)
    bad = check_ris(engine, xs, Fraction(0), js, registry.max_rank())
    assert not bad.passed  # C = 0 fails condition (1)
    gamma, _ = lower_estimate_witness(engine, xs, 1)
    with pytest.raises(NotCertifiedRIS):
        basic_inequality_witness(engine, xs, [1, 1], 0, gamma, bad)


def test_ris_average_report(forge_arena):
    registry, engine = forge_arena()
    source = CarrierSource(registry, engine, companions=False, gap=2)
    xs = [source.next_block() for _ in range(3)]
    js = suggested_js(engine, xs)
    cert = check_ris(engine, xs, Fraction(2), js, registry.max_rank())
    out = ris_average_report(engine, xs, js[0], cert)
    assert out["rows"]
    # toy scale: rows are reports, never violations
    assert all(r["verdict"] == "reported" for r in out["rows"])
    assert out["norm_bound"]["verdict"] == "reported"


def test_search_exhausted_past_schedule(forge_arena):
    registry, engine = forge_arena(16)
    source = CarrierSource(registry, engine, companions=False, gap=2)
    with pytest.raises(SearchExhausted):
        for _ in range(20):
            source.next_block()
