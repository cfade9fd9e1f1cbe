"""Human-readable traces and machine-readable JSON for subgroup reports."""

from __future__ import annotations

import json

from .hoare import SubgroupReport
from .permutation import format_cycles
from .signature import format_signature, format_word


def _set(points) -> str:
    return "{" + ",".join(map(str, points)) + "}"


def render_text(report: SubgroupReport, trace: bool = False) -> str:
    if not trace:
        return format_signature(report.signature)
    action = report.action
    sig = action.signature
    out = [f"Γ = {format_signature(sig)} acting on {action.degree} cosets; Λ = stabiliser of 1"]
    out.append(f"validation: {report.validation.summary()}")
    for w in report.warnings:
        out.append(f"warning: {w}")

    out.append("Step 1. induced reflections: "
               + (", ".join(map(str, report.induced_reflections)) or "none"))

    out.append("Step 2. links of Γ:")
    for i, cyc in enumerate(sig.period_cycles, 1):
        for j, n in enumerate(cyc, 1):
            c, d = f"c{i}.{j - 1}", f"c{i}.{j}"
            cd = action[c] * action[d]
            out.append(f"  {c} ~ {d} period {n}; {c} {d} = {format_cycles(cd)}")
        s = len(cyc)
        out.append(f"  e{i} c{i}.0 e{i}^-1 ~ c{i}.{s} period 1")

    out.append("Step 3-4. dihedral orbits:")
    for a in report.orbit_analyses:
        c, d = a.generators
        head = f"  <{c},{d}> ≅ D{a.n}, orbit {_set(a.orbit)}: m = {a.m}, "
        if a.kind == "elliptic":
            out.append(head + f"no fixed cosets, elliptic period {a.n}/{a.m} = {a.period}")
        else:
            e1, e2 = a.endpoints
            out.append(head + f"link {e1} ~ {e2} period {a.n}/{a.m} = {a.period}")

    out.append("Step 5. closing links:")
    closing = [l for l in report.links if l.source.startswith("e")]
    for link in closing:
        out.append(f"  {link}")
    if not closing:
        out.append("  none")

    out.append("proper periods:")
    for p in report.elliptic_periods:
        out.append(f"  {p.period} from {p.source} on {_set(p.orbit)}")
    if not report.elliptic_periods:
        out.append("  none")

    out.append("chains:")
    for ch in report.chains:
        cycle = "(" + ",".join(map(str, ch.cycle)) + ")"
        out.append(f"  {ch} -> period cycle {cycle}")
    if not report.chains:
        out.append("  none")

    v = report.orientability
    line = f"orientability: {v.kind.value} ({v.reflection_loops} reflection loops removed)"
    if v.witness is not None:
        line += f"; negative circuit {v.witness}"
    out.append(line)

    ar = report.area
    out.append(f"area: A(Γ) = {ar.parent_area}, N = {ar.index}, "
               f"A(Λ) = {ar.index} x {ar.parent_area} = {ar.subgroup_area}, genus g = {ar.genus}")
    out.append(f"Fuchsian check: Γ+ = {ar.parent_fuchsian}, Λ+ = {ar.subgroup_fuchsian}, "
               f"index {ar.fuchsian_index}: {ar.subgroup_fuchsian.area()} = "
               f"{ar.fuchsian_index} x {ar.parent_fuchsian.area()}")
    out.append(f"signature: {format_signature(report.signature)}")
    return "\n".join(out)


def report_to_dict(report: SubgroupReport) -> dict:
    sig = report.signature
    v = report.orientability
    ar = report.area
    witness = None
    if v.witness is not None:
        witness = {"start": v.witness.start, "word": format_word(v.witness.word),
                   "vertices": list(v.witness.vertices)}
    return {
        "signature": format_signature(sig),
        "genus": sig.genus,
        "sign": sig.sign.value,
        "proper_periods": list(sig.proper_periods),
        "period_cycles": [list(c) for c in sig.period_cycles],
        "input": {
            "signature": format_signature(report.action.signature),
            "degree": report.action.degree,
            "generators": {n: format_cycles(p) for n, p in report.action.images.items()},
        },
        "unverified": report.unverified,
        "warnings": list(report.warnings),
        "orientability": {"kind": v.kind.value, "reflection_loops": v.reflection_loops,
                          "witness": witness},
        "area": {
            "parent": str(ar.parent_area),
            "index": ar.index,
            "subgroup": str(ar.subgroup_area),
            "genus": ar.genus,
            "parent_fuchsian": str(ar.parent_fuchsian),
            "subgroup_fuchsian": str(ar.subgroup_fuchsian),
            "fuchsian_index": ar.fuchsian_index,
        },
        "induced_reflections": [str(r) for r in report.induced_reflections],
        "proper_period_sources": [
            {"period": p.period, "source": p.source, "orbit": list(p.orbit)}
            for p in report.elliptic_periods],
        "orbit_analyses": [
            {"pair": list(a.generators), "n": a.n, "orbit": list(a.orbit), "m": a.m,
             "kind": a.kind, "period": a.period,
             "endpoints": [str(e) for e in a.endpoints] if a.endpoints else None}
            for a in report.orbit_analyses],
        "links": [{"end1": str(l.end1), "end2": str(l.end2), "period": l.period,
                   "source": l.source} for l in report.links],
        "chains": [{"vertices": [str(x) for x in ch.vertices], "periods": list(ch.periods),
                    "cycle": list(ch.cycle)} for ch in report.chains],
    }


def render_machine(report: SubgroupReport) -> str:
    return json.dumps(report_to_dict(report), indent=2, ensure_ascii=False)
