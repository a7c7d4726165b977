import json

import pytest

from diffgenus import groups as gr
from diffgenus.catalog import builtin_catalog
from diffgenus.embeddings import certificate_from_json, verify_certificate
from diffgenus.harness import (
    CONSISTENT,
    ClassificationRecord,
    export_report,
    verify_group,
    verify_sweep,
)


def test_verify_group_z18():
    record = verify_group(gr.build_group("Z18"), name="Z18")
    assert record.status == CONSISTENT
    assert record.predicted_genus.value == 1
    assert record.computed_genus.exact and record.computed_genus.value == 1
    assert record.predicted_crosscap.value == 2
    assert record.computed_crosscap.exact and record.computed_crosscap.value == 2


def test_verify_group_p_group_trivial_row(q8):
    record = verify_group(q8, name="Q8")
    assert record.status == CONSISTENT
    assert record.computed_genus.value == 0


def test_verify_group_ge3_lower_bound():
    record = verify_group(gr.build_group("Z2 x Z2 x Z13"), name="Z2 x Z2 x Z13")
    assert record.status == CONSISTENT
    assert record.predicted_genus.label == "GE3"
    assert record.computed_genus.lower >= 3
    assert record.computed_crosscap.lower >= 3


def test_verify_group_rejects_non_nilpotent(s3):
    with pytest.raises(gr.NotNilpotentError):
        verify_group(s3)


def test_sweep_small_order():
    records, summary = verify_sweep(12)
    assert summary.contradictions == 0
    assert summary.total == len(records)
    by_name = {r.group_name: r for r in records}
    assert by_name["Z12"].predicted_genus.value == 0
    # all non-p-groups up to order 12 are planar
    for r in records:
        assert r.status == CONSISTENT


def test_sweep_records_sorted_and_reproducible():
    a, _ = verify_sweep(20)
    b, _ = verify_sweep(20)
    keys = [(r.order, r.group_name) for r in a]
    assert keys == sorted(keys)
    for ra, rb in zip(a, b):
        assert ra.group_name == rb.group_name
        assert _numeric_view(ra) == _numeric_view(rb)


def _numeric_view(r: ClassificationRecord):
    def res_view(res):
        return None if res is None else (res.lower, res.upper, res.exact)

    return (
        r.predicted_genus.value,
        r.predicted_crosscap.value,
        res_view(r.computed_genus),
        res_view(r.computed_crosscap),
        r.status,
    )


def test_sweep_covers_catalog():
    records, _ = verify_sweep(24)
    names = {r.group_name for r in records}
    expected = {e.name for e in builtin_catalog(24)}
    assert names == expected


def test_export_report_round_trip():
    records, _ = verify_sweep(18)
    doc, table = export_report(records)
    parsed = json.loads(doc)
    assert len(parsed) == len(records)
    assert list(parsed[0]) == [
        "group", "order", "predicted_genus", "predicted_crosscap",
        "computed_genus", "computed_crosscap", "status", "timings_ms",
    ]
    assert "contradictions: 0" in table


def test_export_report_empty():
    doc, table = export_report([])
    assert json.loads(doc) == []
    assert "contradictions: 0" in table


def test_record_certificates_reverify():
    record = verify_group(gr.build_group("Z20"), name="Z20")
    doc = record.to_json_dict()
    for key in ("computed_genus", "computed_crosscap"):
        cert_doc = doc[key].get("certificate")
        assert cert_doc is not None
        scheme, surface, value = certificate_from_json(json.dumps(cert_doc))
        res = record.computed_genus if key == "computed_genus" else record.computed_crosscap
        assert verify_certificate(res.certificate_graph, scheme, surface, value)


def test_status_logic_direct():
    from diffgenus.classify import GenusClass
    from diffgenus.genus import GenusResult, ORIENTABLE
    from diffgenus.harness import CONTRADICTION, INCONCLUSIVE, _status_against

    exact = lambda v: GenusResult(ORIENTABLE, v, v, True)
    bounds = lambda lo, hi: GenusResult(ORIENTABLE, lo, hi, False)
    one = GenusClass(1, "x")
    ge3 = GenusClass(3, "x", witness="w")
    assert _status_against(one, exact(1)) == CONSISTENT
    assert _status_against(one, exact(2)) == CONTRADICTION
    assert _status_against(one, bounds(1, 2)) == INCONCLUSIVE
    assert _status_against(one, bounds(2, None)) == CONTRADICTION
    assert _status_against(one, bounds(0, 0)) == CONTRADICTION
    assert _status_against(ge3, bounds(3, None)) == CONSISTENT
    assert _status_against(ge3, bounds(2, None)) == INCONCLUSIVE
    assert _status_against(ge3, exact(2)) == CONTRADICTION
