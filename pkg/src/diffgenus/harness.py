"""End-to-end verification: for each catalog group, compare the structural
classification of the difference graph's genus and crosscap against values
computed independently by the embedding machinery, and report consistency."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Optional

from .catalog import builtin_catalog
from .classify import GE3, GenusClass, classify_crosscap, classify_genus
from .genus import (
    DEFAULT_BUDGET,
    GenusResult,
    NONORIENTABLE,
    ORIENTABLE,
    SearchBudget,
    genus_of_graph,
)
from .groupgraphs import difference_graph
from .groups import GroupTable, NotNilpotentError, is_p_group

CONSISTENT = "consistent"
CONTRADICTION = "contradiction"
INCONCLUSIVE = "inconclusive"


@dataclass
class ClassificationRecord:
    group_name: str
    order: int
    predicted_genus: GenusClass
    predicted_crosscap: GenusClass
    computed_genus: Optional[GenusResult]
    computed_crosscap: Optional[GenusResult]
    status: str
    timings_ms: dict[str, float] = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        return {
            "group": self.group_name,
            "order": self.order,
            "predicted_genus": _class_dict(self.predicted_genus),
            "predicted_crosscap": _class_dict(self.predicted_crosscap),
            "computed_genus": _result_dict(self.computed_genus),
            "computed_crosscap": _result_dict(self.computed_crosscap),
            "status": self.status,
            "timings_ms": {k: round(v, 1) for k, v in self.timings_ms.items()},
        }


def _class_dict(c: GenusClass) -> dict:
    return {"class": c.label, "basis": c.basis, "witness": c.witness}


def _result_dict(r: Optional[GenusResult]) -> Optional[dict]:
    if r is None:
        return None
    out = {
        "surface": r.surface,
        "lower": r.lower,
        "upper": r.upper,
        "exact": r.exact,
        "provenance": list(r.provenance),
    }
    if r.certificate is not None and r.certificate_graph is not None:
        value = r.lower if r.exact else (r.upper if r.upper is not None else r.lower)
        out["certificate"] = r.certificate.to_json_dict(r.surface, value)
    return out


def _status_against(predicted: GenusClass, computed: GenusResult) -> str:
    if predicted.value < GE3:
        want = predicted.value
        if computed.exact:
            return CONSISTENT if computed.value == want else CONTRADICTION
        if computed.lower > want:
            return CONTRADICTION
        if computed.upper is not None and computed.upper < want:
            return CONTRADICTION
        return INCONCLUSIVE
    # predicted >= 3
    if computed.lower >= 3:
        return CONSISTENT
    if computed.exact and computed.value < 3:
        return CONTRADICTION
    if computed.upper is not None and computed.upper < 3:
        return CONTRADICTION
    return INCONCLUSIVE


def _combine(*statuses: str) -> str:
    if CONTRADICTION in statuses:
        return CONTRADICTION
    if INCONCLUSIVE in statuses:
        return INCONCLUSIVE
    return CONSISTENT


def verify_group(
    g: GroupTable,
    budget: Optional[SearchBudget] = None,
    name: str = "",
) -> ClassificationRecord:
    """Classify the group, compute genus and crosscap of its difference
    graph, and compare. p-groups come back as trivial consistent rows with
    an empty graph; non-nilpotent input raises NotNilpotentError."""
    budget = budget or DEFAULT_BUDGET
    label = name or g.source or f"order-{g.order} group"
    t_start = time.perf_counter()
    predicted_genus = classify_genus(g)  # raises NotNilpotentError if needed
    predicted_crosscap = classify_crosscap(g)
    t_classify = time.perf_counter()

    if is_p_group(g):
        graph = difference_graph(g).graph
        empty_ok = graph.n == 0
        trivial = GenusResult(ORIENTABLE, 0, 0, True, provenance=["empty difference graph"])
        trivial_n = GenusResult(NONORIENTABLE, 0, 0, True, provenance=["empty difference graph"])
        return ClassificationRecord(
            label, g.order, predicted_genus, predicted_crosscap,
            trivial, trivial_n,
            CONSISTENT if empty_ok else CONTRADICTION,
            {"classify": (t_classify - t_start) * 1e3,
             "total": (time.perf_counter() - t_start) * 1e3},
        )

    graph = difference_graph(g).graph
    t_build = time.perf_counter()

    genus_budget = _budget_for(predicted_genus, budget)
    computed_genus = genus_of_graph(graph, genus_budget, surface=ORIENTABLE)
    t_genus = time.perf_counter()

    crosscap_budget = _budget_for(predicted_crosscap, budget)
    computed_crosscap = genus_of_graph(graph, crosscap_budget, surface=NONORIENTABLE)
    t_crosscap = time.perf_counter()

    status = _combine(
        _status_against(predicted_genus, computed_genus),
        _status_against(predicted_crosscap, computed_crosscap),
    )
    return ClassificationRecord(
        label, g.order, predicted_genus, predicted_crosscap,
        computed_genus, computed_crosscap, status,
        {
            "classify": (t_classify - t_start) * 1e3,
            "build_graph": (t_build - t_classify) * 1e3,
            "genus": (t_genus - t_build) * 1e3,
            "crosscap": (t_crosscap - t_genus) * 1e3,
            "total": (t_crosscap - t_start) * 1e3,
        },
    )


def _budget_for(predicted: GenusClass, budget: SearchBudget) -> SearchBudget:
    """Predicted >=3 classes only need a lower bound of 3; exact classes get
    the full search budget."""
    if predicted.value < GE3:
        return budget
    return SearchBudget(
        exhaustive_cap=budget.exhaustive_cap,
        node_cap=budget.node_cap,
        restarts=budget.restarts,
        moves_per_restart=budget.moves_per_restart,
        seed=budget.seed,
        lower_stop=3,
    )


@dataclass
class SweepSummary:
    total: int
    consistent: int
    contradictions: int
    inconclusive: int

    @property
    def ok(self) -> bool:
        return self.contradictions == 0


def verify_sweep(
    max_order: int,
    budget: Optional[SearchBudget] = None,
    include_p_groups: bool = True,
) -> tuple[list[ClassificationRecord], SweepSummary]:
    """Run verify_group over every catalog group of order <= max_order.
    p-groups appear as trivial rows exercising the empty-graph claim."""
    budget = budget or DEFAULT_BUDGET
    records: list[ClassificationRecord] = []
    for entry in builtin_catalog(max_order):
        if is_p_group(entry.group) and not include_p_groups:
            continue
        records.append(verify_group(entry.group, budget, name=entry.name))
    records.sort(key=lambda r: (r.order, r.group_name))
    summary = SweepSummary(
        total=len(records),
        consistent=sum(1 for r in records if r.status == CONSISTENT),
        contradictions=sum(1 for r in records if r.status == CONTRADICTION),
        inconclusive=sum(1 for r in records if r.status == INCONCLUSIVE),
    )
    return records, summary


def export_report(records: list[ClassificationRecord]) -> tuple[str, str]:
    """JSON array plus a fixed-width table; field order is stable."""
    doc = json.dumps([r.to_json_dict() for r in records], indent=2)
    header = f"{'group':<24} {'order':>5} {'genus':>10} {'crosscap':>10} {'computed':>18} {'status':<13}"
    lines = [header, "-" * len(header)]
    for r in records:
        cg = _fmt_result(r.computed_genus)
        cc = _fmt_result(r.computed_crosscap)
        lines.append(
            f"{r.group_name:<24} {r.order:>5} {r.predicted_genus.label:>10}"
            f" {r.predicted_crosscap.label:>10} {cg + '/' + cc:>18} {r.status:<13}"
        )
    contradictions = sum(1 for r in records if r.status == CONTRADICTION)
    lines.append(f"contradictions: {contradictions}")
    return doc, "\n".join(lines)


def _fmt_result(r: Optional[GenusResult]) -> str:
    if r is None:
        return "-"
    if r.exact:
        return str(r.value)
    hi = r.upper if r.upper is not None else "?"
    return f"[{r.lower},{hi}]"
