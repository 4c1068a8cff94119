import json

from regretlab.reproduce import FAIL, PASS, REPORTED, build_manifest, run_manifest


def test_every_claim_has_a_unique_id_and_a_kind():
    manifest = build_manifest()
    ids = [c.id for c in manifest]
    assert len(ids) == len(set(ids))
    assert {c.kind for c in manifest} == {"paper", "reported", "derived"}


def test_cheap_paper_claims_pass():
    wanted = {
        "td-p2-pure",
        "bertrand-pure",
        "hawk-dove",
        "pd-dominant",
        "sd-vs-rm",
        "gencoord-risk-dominance",
        "mixed-matching-pennies",
        "mixed-asym-matching-pennies",
        "mixed-rps",
    }
    claims = [c for c in build_manifest() if c.id in wanted]
    assert len(claims) == len(wanted)
    rows = run_manifest(claims)
    assert all(row.verdict == PASS for row in rows), [
        (r.claim_id, r.computed, r.expected) for r in rows if r.verdict != PASS
    ]


def test_reported_claims_carry_both_sides():
    claims = [c for c in build_manifest() if c.id == "td-p50-pure"]
    (row,) = run_manifest(claims)
    assert row.verdict == REPORTED
    assert row.computed["computed_round1"] == [["3"], ["3"]]
    assert row.computed["quoted"] == [["2"], ["2"]]
    json.dumps(row.to_json())


def test_derived_claims_record_then_check():
    claims = [c for c in build_manifest() if c.kind == "derived"]
    store = {}
    recorded = run_manifest(claims, derived_store=store, record=True)
    assert all(r.verdict == "RECORDED" for r in recorded)
    checked = run_manifest(claims, derived_store=store)
    assert all(r.verdict == PASS for r in checked)
    broken = run_manifest(claims, derived_store={})
    assert all(r.verdict == "UNRECORDED" for r in broken)


def test_full_manifest_never_fails():
    rows = run_manifest()
    bad = [r for r in rows if r.verdict == FAIL]
    assert bad == [], [(r.claim_id, r.computed, r.expected) for r in bad]
    verdicts = {r.verdict for r in rows}
    assert PASS in verdicts and REPORTED in verdicts
