"""Permutation actions of an NEC group on the cosets of a subgroup."""

from __future__ import annotations

import enum
import random
from collections import deque
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .permutation import Permutation, orbits
from .signature import (
    GeneratorKind,
    Letter,
    NecSignature,
    Presentation,
    Relator,
    canonical_presentation,
    format_word,
)
from .signature import orientation_sign as _signature_orientation_sign


class ActionError(ValueError):
    """A coset action is structurally wrong (names, degrees, transitivity)."""


@dataclass(frozen=True)
class CosetAction:
    """Images of the canonical generators of ``signature`` acting on {1..degree}."""

    signature: NecSignature
    degree: int
    images: Mapping[str, Permutation]
    presentation: Presentation = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        pres = canonical_presentation(self.signature)
        object.__setattr__(self, "presentation", pres)
        expected = pres.names
        missing = [n for n in expected if n not in self.images]
        unknown = sorted(n for n in self.images if n not in pres.kinds)
        if missing or unknown:
            parts = []
            if missing:
                parts.append("missing generators " + ", ".join(missing))
            if unknown:
                parts.append("unknown generators " + ", ".join(unknown))
            raise ActionError("; ".join(parts) + "; expected exactly " + ", ".join(expected))
        for name in expected:
            if self.images[name].degree != self.degree:
                raise ActionError(
                    f"image of {name} has degree {self.images[name].degree}, expected {self.degree}")
        object.__setattr__(self, "images", {n: self.images[n] for n in expected})

    def __getitem__(self, name: str) -> Permutation:
        return self.images[name]

    def evaluate(self, word: Sequence[Letter], power: int = 1) -> Permutation:
        result = Permutation.identity(self.degree)
        for name, exp in word:
            result = result * self.images[name] ** exp
        return result ** power

    def sign_of(self, name: str) -> int:
        kind = self.presentation.kinds[name]
        return -1 if kind in (GeneratorKind.REFLECTION, GeneratorKind.GLIDE) else 1

    def key(self) -> tuple:
        return (self.signature, self.degree, tuple(self.images[n].images for n in self.images))


def trivial_action(sig: NecSignature) -> CosetAction:
    pres = canonical_presentation(sig)
    return CosetAction(sig, 1, {n: Permutation.identity(1) for n in pres.names})


@dataclass(frozen=True)
class RelatorFailure:
    relator: Relator
    image: Permutation

    def __str__(self) -> str:
        return f"{self.relator} -> {self.image}"


@dataclass(frozen=True)
class ValidationReport:
    degree: int
    relators_checked: int
    failures: tuple[RelatorFailure, ...]
    orbits: tuple[tuple[int, ...], ...]

    @property
    def transitive(self) -> bool:
        return len(self.orbits) == 1

    @property
    def ok(self) -> bool:
        return not self.failures and self.transitive

    @property
    def only_long_relator_fails(self) -> bool:
        return bool(self.failures) and all(f.relator.role == "long" for f in self.failures)

    def summary(self) -> str:
        if self.ok:
            return (f"ok: {self.relators_checked} relators verified, transitive, "
                    f"degree {self.degree}")
        lines = []
        for f in self.failures:
            lines.append(f"relator {f.relator} fails: evaluates to {f.image}")
        if not self.transitive:
            lines.append("intransitive: orbits "
                         + " ".join("{" + ",".join(map(str, o)) + "}" for o in self.orbits))
        return "\n".join(lines)


def validate_action(action: CosetAction) -> ValidationReport:
    """Evaluate every defining relator and check transitivity; collects all failures."""
    failures = []
    rels = action.presentation.relators
    for rel in rels:
        image = action.evaluate(rel.word, rel.power)
        if not image.is_identity():
            failures.append(RelatorFailure(rel, image))
    parts = orbits(list(action.images.values()), action.degree)
    return ValidationReport(action.degree, len(rels), tuple(failures),
                            tuple(tuple(o) for o in parts))


def orientation_sign(action_or_sig: CosetAction | NecSignature, name: str) -> int:
    sig = action_or_sig.signature if isinstance(action_or_sig, CosetAction) else action_or_sig
    return _signature_orientation_sign(sig, name)


def point_stabilizer_index(action: CosetAction) -> int:
    parts = orbits(list(action.images.values()), action.degree)
    if len(parts) != 1:
        raise ActionError(f"action is intransitive; orbits {parts}")
    return action.degree


def restrict_to_orbit(action: CosetAction, point: int) -> CosetAction:
    """Re-base an action on the orbit of ``point``, relabelled so that ``point`` becomes 1."""
    if not 1 <= point <= action.degree:
        raise ActionError(f"point {point} outside 1..{action.degree}")
    orbit = next(o for o in orbits(list(action.images.values()), action.degree) if point in o)
    order = [point] + [p for p in orbit if p != point]
    relabel = {p: i for i, p in enumerate(order, 1)}
    images = {}
    for name, perm in action.images.items():
        images[name] = Permutation.from_images([relabel[perm(p)] for p in order])
    return CosetAction(action.signature, len(order), images)


# Orientability ---------------------------------------------------------------

class OrientabilityKind(enum.Enum):
    FUCHSIAN = "fuchsian"
    ORIENTABLE_NEC = "orientable_nec"
    NONORIENTABLE = "nonorientable"


@dataclass(frozen=True)
class Circuit:
    """A closed path in the Schreier graph starting and ending at ``start``."""

    start: int
    word: tuple[Letter, ...]
    vertices: tuple[int, ...]

    def __str__(self) -> str:
        return f"{format_word(self.word)} at coset {self.start}: " + " -> ".join(
            map(str, self.vertices))


@dataclass(frozen=True)
class OrientabilityVerdict:
    kind: OrientabilityKind
    witness: Circuit | None = None
    reflection_loops: int = 0

    @property
    def orientable(self) -> bool:
        return self.kind is not OrientabilityKind.NONORIENTABLE


def word_sign(action: CosetAction, word: Sequence[Letter]) -> int:
    s = 1
    for name, exp in word:
        if exp % 2:
            s *= action.sign_of(name)
    return s


def orientability(action: CosetAction, seed: int | None = None) -> OrientabilityVerdict:
    """Decide whether all circuits of the augmented Schreier graph are positive.

    Edges ``K -> K g`` are taken for every vertex and generator, except loops
    of reflections at cosets they fix. Signs are propagated over a spanning
    tree; any edge contradicting the propagated signs closes a negative
    circuit. ``seed`` shuffles the exploration order.
    """
    n = action.degree
    names = list(action.images)
    sign = {g: action.sign_of(g) for g in names}
    # adjacency: (neighbour, generator, exponent)
    adj: list[list[tuple[int, str, int]]] = [[] for _ in range(n + 1)]
    loops = 0
    for g in names:
        perm = action.images[g]
        for v in range(1, n + 1):
            w = perm(v)
            if w == v and action.presentation.kinds[g] is GeneratorKind.REFLECTION:
                loops += 1
                continue
            adj[v].append((w, g, 1))
            if w != v:
                adj[w].append((v, g, -1))
    rng = random.Random(seed) if seed is not None else None
    roots = list(range(1, n + 1))
    if rng:
        rng.shuffle(roots)
        for edges in adj:
            rng.shuffle(edges)
    vsign: dict[int, int] = {}
    parent: dict[int, tuple[int, str, int] | None] = {}
    for root in roots:
        if root in vsign:
            continue
        vsign[root] = 1
        parent[root] = None
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for w, g, exp in adj[v]:
                expected = vsign[v] * sign[g]
                if w not in vsign:
                    vsign[w] = expected
                    parent[w] = (v, g, exp)
                    queue.append(w)
                elif vsign[w] != expected:
                    witness = _circuit(parent, v, w, g, exp)
                    return OrientabilityVerdict(OrientabilityKind.NONORIENTABLE, witness, loops)
    kind = OrientabilityKind.ORIENTABLE_NEC if loops else OrientabilityKind.FUCHSIAN
    return OrientabilityVerdict(kind, None, loops)


def _path_to_root(parent, v):
    path = [v]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]][0])
    return path


def _circuit(parent, v: int, w: int, g: str, exp: int) -> Circuit:
    # tree path a -> v, edge v -> w, tree path w -> a, where a is the lowest common ancestor
    pv = _path_to_root(parent, v)
    pw = _path_to_root(parent, w)
    common = set(pv) & set(pw)
    a = next(x for x in pv if x in common)
    down_v = pv[: pv.index(a) + 1][::-1]
    down_w = pw[: pw.index(a) + 1][::-1]
    word: list[Letter] = []
    verts = [a]
    for x in down_v[1:]:
        _, h, e = parent[x]
        word.append((h, e))
        verts.append(x)
    word.append((g, exp))
    verts.append(w)
    for x in reversed(down_w[1:]):
        _, h, e = parent[x]
        word.append((h, -e))
        verts.append(parent[x][0])
    return Circuit(a, tuple(word), tuple(verts))
