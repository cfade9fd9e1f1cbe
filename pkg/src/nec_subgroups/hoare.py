"""Signature of a finite-index subgroup from the permutation action on its cosets.

The subgroup is the stabiliser of coset 1. The pipeline:

1. induced reflections: fixed cosets of each reflection generator;
2-4. for each linked pair ``(ci.j-1, ci.j)`` with link period ``n``, the orbits
   of the dihedral group they generate, each giving either an elliptic period
   ``n/m`` (no fixed cosets, orbit of size ``2m``) or a link of period ``n/m``
   between two induced reflections (orbit of size ``m``);
5. closing links from ``e_i ci.0 e_i^-1 = ci.s_i``: a coset ``K`` fixed by
   ``ci.s_i`` links to ``ci.0`` at ``K e_i`` with period 1.

The links form a 2-regular multigraph on induced reflections; its cycles are
the period cycles of the subgroup. Orientability comes from the augmented
Schreier graph and the genus from multiplicativity of the reduced area.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .permutation import orbits
from .representation import (
    ActionError,
    CosetAction,
    OrientabilityKind,
    OrientabilityVerdict,
    ValidationReport,
    orientability,
    validate_action,
)
from .signature import (
    FuchsianSignature,
    GeneratorKind,
    InconsistentAnalysis,
    NecSignature,
    Sign,
    as_fuchsian,
    canonical_fuchsian,
    check_signature,
    cycle_sort_key,
    genus_from_area,
    normalize,
    normalize_cycles,
    parse_reflection_name,
    reduced_area,
    reflection_name,
    validate_signature,
)


class InconsistentAction(InconsistentAnalysis):
    """The permutations contradict the structure forced by the relators."""


class InconsistentLinks(InconsistentAnalysis):
    """Some induced reflection is not incident to exactly two link ends."""


class InvalidAction(ActionError):
    def __init__(self, report: ValidationReport) -> None:
        super().__init__(report.summary())
        self.report = report


@dataclass(frozen=True, order=True)
class InducedReflection:
    """The conjugate of reflection ``c{cycle}.{position}`` by the coset ``coset``."""

    cycle: int
    position: int
    coset: int

    @property
    def generator(self) -> str:
        return reflection_name(self.cycle, self.position)

    def __str__(self) -> str:
        return f"{self.generator}@{self.coset}"


@dataclass(frozen=True)
class OrbitAnalysis:
    generators: tuple[str, str]
    n: int
    orbit: tuple[int, ...]
    m: int
    kind: str  # "elliptic" or "link"
    endpoints: tuple[InducedReflection, InducedReflection] | None = None

    @property
    def period(self) -> int:
        return self.n // self.m


@dataclass(frozen=True)
class Link:
    end1: InducedReflection
    end2: InducedReflection
    period: int
    source: str = ""

    def __str__(self) -> str:
        return f"{self.end1} ~ {self.end2} (period {self.period})"


@dataclass(frozen=True)
class Chain:
    """A closed sequence of links; ``periods[i]`` joins ``vertices[i]`` to the next vertex."""

    vertices: tuple[InducedReflection, ...]
    periods: tuple[int, ...]

    @property
    def cycle(self) -> tuple[int, ...]:
        return normalize_cycles([[p for p in self.periods if p != 1]])[0]

    def __str__(self) -> str:
        parts = [str(self.vertices[0])]
        for i, p in enumerate(self.periods):
            nxt = self.vertices[(i + 1) % len(self.vertices)]
            parts.append(f"~[{p}]~ {nxt}")
        return " ".join(parts)


@dataclass(frozen=True)
class ProperPeriod:
    period: int
    source: str
    orbit: tuple[int, ...]


@dataclass(frozen=True)
class AreaDerivation:
    parent_area: Fraction
    index: int
    subgroup_area: Fraction
    genus: int
    parent_fuchsian: FuchsianSignature
    subgroup_fuchsian: FuchsianSignature
    fuchsian_index: int

    @property
    def fuchsian_consistent(self) -> bool:
        return (self.subgroup_fuchsian.area()
                == self.fuchsian_index * self.parent_fuchsian.area())


@dataclass(frozen=True)
class SubgroupReport:
    action: CosetAction
    validation: ValidationReport
    induced_reflections: tuple[InducedReflection, ...]
    elliptic_periods: tuple[ProperPeriod, ...]
    orbit_analyses: tuple[OrbitAnalysis, ...]
    links: tuple[Link, ...]
    chains: tuple[Chain, ...]
    orientability: OrientabilityVerdict
    area: AreaDerivation
    signature: NecSignature
    unverified: bool = False
    warnings: tuple[str, ...] = field(default=())

    @property
    def proper_periods(self) -> tuple[int, ...]:
        return self.signature.proper_periods

    @property
    def period_cycles(self) -> tuple[tuple[int, ...], ...]:
        return self.signature.period_cycles


def _is_fuchsian(sig: NecSignature) -> bool:
    return sig.sign is Sign.PLUS and not sig.period_cycles


def _reflections(action: CosetAction) -> list[tuple[int, int, str]]:
    out = []
    for name, kind in action.presentation.generators:
        if kind is GeneratorKind.REFLECTION:
            i, j = parse_reflection_name(name)
            out.append((i, j, name))
    return out


def induced_reflections(action: CosetAction) -> list[InducedReflection]:
    out = []
    for i, j, name in _reflections(action):
        out.extend(InducedReflection(i, j, k) for k in action[name].fixed_points())
    return sorted(out)


def proper_periods_from_elliptics(action: CosetAction) -> list[ProperPeriod]:
    out = []
    for j, n in enumerate(action.signature.proper_periods, 1):
        name = f"x{j}"
        for cyc in action[name].cycles():
            m = len(cyc)
            if n % m:
                raise InconsistentAction(
                    f"{name} of order {n} has a cycle of length {m}: {tuple(cyc)}")
            if n // m > 1:
                out.append(ProperPeriod(n // m, name, tuple(cyc)))
    return out


def analyze_dihedral_pair(c: str, d: str, n: int, action: CosetAction) -> list[OrbitAnalysis]:
    """Classify the orbits of the dihedral group generated by reflections ``c``, ``d``."""
    pc, pd = action[c], action[d]
    cd = pc * pd
    if not (cd ** n).is_identity():
        raise InconsistentAction(f"({c} {d})^{n} is not the identity")
    ci, cj = parse_reflection_name(c)
    di, dj = parse_reflection_name(d)
    out = []
    for orbit in orbits([pc, pd], action.degree):
        lengths = {len(cd.cycle_of(k)) for k in orbit}
        if len(lengths) != 1:
            raise InconsistentAction(
                f"<{c},{d}> orbit {orbit}: ({c} {d})-cycles of unequal lengths {sorted(lengths)}")
        m = lengths.pop()
        if n % m:
            raise InconsistentAction(
                f"<{c},{d}> orbit {orbit}: cycle length {m} does not divide {n}")
        fixed_c = [InducedReflection(ci, cj, k) for k in orbit if pc(k) == k]
        fixed_d = [InducedReflection(di, dj, k) for k in orbit if pd(k) == k]
        incidences = fixed_c + fixed_d
        if not incidences:
            if len(orbit) != 2 * m:
                raise InconsistentAction(
                    f"<{c},{d}> orbit {orbit} without fixed cosets has size {len(orbit)} != 2*{m}")
            out.append(OrbitAnalysis((c, d), n, tuple(orbit), m, "elliptic"))
            continue
        parity_ok = (len(fixed_c) == len(fixed_d) == 1) if m % 2 else (
            len(fixed_c) in (0, 2) and len(fixed_d) in (0, 2))
        if len(incidences) != 2 or len(orbit) != m or not parity_ok:
            raise InconsistentAction(
                f"<{c},{d}> orbit {orbit}: {len(fixed_c)} cosets fixed by {c}, "
                f"{len(fixed_d)} by {d}, m = {m}")
        out.append(OrbitAnalysis((c, d), n, tuple(orbit), m, "link",
                                 (incidences[0], incidences[1])))
    return out


def closing_links(cycle_index: int, action: CosetAction) -> list[Link]:
    """Links of period 1 coming from ``e_i ci.0 e_i^-1 = ci.s_i``.

    If ``ci.s_i`` fixes ``K`` then ``ci.0`` fixes ``K e_i``.
    """
    s = len(action.signature.period_cycles[cycle_index - 1])
    first, last = reflection_name(cycle_index, 0), reflection_name(cycle_index, s)
    e = action[f"e{cycle_index}"]
    out = []
    for k in action[last].fixed_points():
        ke = e(k)
        if action[first](ke) != ke:
            raise InconsistentAction(f"{last} fixes {k} but {first} does not fix {k}e{cycle_index} = {ke}")
        out.append(Link(InducedReflection(cycle_index, s, k), InducedReflection(cycle_index, 0, ke),
                        1, f"e{cycle_index} {first} e{cycle_index}^-1 = {last}"))
    return out


def dihedral_links(analyses: Sequence[OrbitAnalysis]) -> list[Link]:
    out = []
    for a in analyses:
        if a.kind == "link":
            src = f"<{a.generators[0]},{a.generators[1]}> orbit {{{','.join(map(str, a.orbit))}}}"
            out.append(Link(a.endpoints[0], a.endpoints[1], a.period, src))
    return out


def assemble_chains(links: Sequence[Link]) -> list[Chain]:
    """Split the 2-regular link multigraph into closed chains."""
    adj: dict[InducedReflection, list[tuple[int, InducedReflection]]] = {}
    for idx, link in enumerate(links):
        adj.setdefault(link.end1, []).append((idx, link.end2))
        adj.setdefault(link.end2, []).append((idx, link.end1))
    for v, edges in adj.items():
        if len(edges) != 2:
            raise InconsistentLinks(f"induced reflection {v} has {len(edges)} link ends, expected 2")
    seen: set[InducedReflection] = set()
    chains = []
    for start in sorted(adj):
        if start in seen:
            continue
        verts, periods = [start], []
        seen.add(start)
        cur, used = start, None
        while True:
            idx, nxt = next((e for e in adj[cur] if e[0] != used), adj[cur][0])
            periods.append(links[idx].period)
            if nxt == start:
                break
            verts.append(nxt)
            seen.add(nxt)
            cur, used = nxt, idx
        chains.append(Chain(tuple(verts), tuple(periods)))
    chains.sort(key=lambda ch: (cycle_sort_key(ch.cycle), ch.vertices[0]))
    return chains


def subgroup_signature(sig: NecSignature, action: CosetAction, *,
                       allow_invalid_relators: bool = False,
                       seed: int | None = None) -> SubgroupReport:
    """Run the full pipeline for the stabiliser of coset 1.

    With ``allow_invalid_relators`` an action failing only the long relator is
    accepted and the report is marked unverified.
    """
    check_signature(sig)
    if action.signature != sig:
        raise ActionError(f"action is for {action.signature}, not {sig}")
    validation = validate_action(action)
    unverified = False
    if not validation.transitive:
        raise InvalidAction(validation)
    if validation.failures:
        if not (allow_invalid_relators and validation.only_long_relator_fails):
            raise InvalidAction(validation)
        unverified = True
    warnings = []
    if unverified:
        warnings.append("unverified input: long relator fails; "
                        + "; ".join(str(f) for f in validation.failures))

    induced = induced_reflections(action)
    elliptic = proper_periods_from_elliptics(action)
    analyses: list[OrbitAnalysis] = []
    links: list[Link] = []
    for i, cyc in enumerate(sig.period_cycles, 1):
        for j, n in enumerate(cyc, 1):
            pair = analyze_dihedral_pair(reflection_name(i, j - 1), reflection_name(i, j), n, action)
            analyses.extend(pair)
    links.extend(dihedral_links(analyses))
    for i in range(1, sig.k + 1):
        links.extend(closing_links(i, action))
    for a in analyses:
        if a.kind == "elliptic" and a.period > 1:
            elliptic.append(ProperPeriod(a.period, f"<{a.generators[0]},{a.generators[1]}>", a.orbit))
    chains = assemble_chains(links)
    for ch in chains:
        if len(ch.vertices) == 1 and ch.periods[0] > 1:
            warnings.append(f"self-link with period {ch.periods[0]} at {ch.vertices[0]}")

    verdict = orientability(action, seed=seed)
    sign = Sign.MINUS if verdict.kind is OrientabilityKind.NONORIENTABLE else Sign.PLUS
    periods = tuple(sorted(p.period for p in elliptic))
    cycles = tuple(ch.cycle for ch in chains)
    n = action.degree
    parent_area = reduced_area(sig)
    target = n * parent_area
    genus = genus_from_area(target, sign, periods, cycles)
    final = normalize(NecSignature(genus, sign, periods, cycles))
    violations = validate_signature(final)
    if violations:
        raise InconsistentAnalysis(f"computed signature {final} is invalid: "
                                   + "; ".join(map(str, violations)))
    if _is_fuchsian(sig):
        parent_fuchsian, sub_fuchsian, fuchsian_index = as_fuchsian(sig), as_fuchsian(final), n
    elif verdict.kind is OrientabilityKind.FUCHSIAN:
        # the subgroup lies in the orientation-preserving half, with half the index
        parent_fuchsian, sub_fuchsian = canonical_fuchsian(sig), as_fuchsian(final)
        if n % 2:
            raise InconsistentAnalysis(f"Fuchsian subgroup of odd index {n} in a proper NEC group")
        fuchsian_index = n // 2
    else:
        parent_fuchsian, sub_fuchsian, fuchsian_index = canonical_fuchsian(sig), canonical_fuchsian(final), n
    area = AreaDerivation(parent_area, n, target, genus, parent_fuchsian, sub_fuchsian,
                          fuchsian_index)
    if not area.fuchsian_consistent:
        raise InconsistentAnalysis(
            f"Fuchsian areas disagree: {sub_fuchsian} vs {fuchsian_index} x {parent_fuchsian}")
    return SubgroupReport(action, validation, tuple(induced), tuple(elliptic), tuple(analyses),
                          tuple(links), tuple(chains), verdict, area, final, unverified,
                          tuple(warnings))
