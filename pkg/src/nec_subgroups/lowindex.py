"""Small-index subgroups: index-2 sign characters and exhaustive action search.

The search is a naive depth-first backtrack over generator images in the
symmetric group. It is meant as an oracle for the subgroup pipeline at small
degree, not as a low-index-subgroups algorithm.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .hoare import SubgroupReport, subgroup_signature
from .permutation import Permutation, tuple_compose, tuple_inverse, tuple_power
from .representation import CosetAction
from .signature import NecSignature, canonical_presentation, check_signature

MAX_SEARCH_DEGREE = 6


@dataclass(frozen=True)
class IndexTwoSubgroup:
    assignment: dict[str, int]
    action: CosetAction
    report: SubgroupReport


@dataclass(frozen=True)
class SearchResult:
    actions: list[CosetAction]
    complete: bool
    leaves: int = 0

    def __iter__(self):
        return iter(self.actions)

    def __len__(self) -> int:
        return len(self.actions)


def sign_characters(sig: NecSignature) -> list[dict[str, int]]:
    """All nontrivial homomorphisms to {+1, -1}, as generator -> sign maps.

    Solved as a linear system over GF(2); one equation per relator.
    """
    pres = canonical_presentation(sig)
    names = pres.names
    index = {n: i for i, n in enumerate(names)}
    rows = []
    for rel in pres.relators:
        row = 0
        for name, exp in rel.word:
            if (exp * rel.power) % 2:
                row ^= 1 << index[name]
        if row:
            rows.append(row)
    # reduced row echelon form, pivots on lowest set bit
    pivots: dict[int, int] = {}
    for row in rows:
        for bit, prow in pivots.items():
            if row >> bit & 1:
                row ^= prow
        if not row:
            continue
        bit = (row & -row).bit_length() - 1
        for b, prow in list(pivots.items()):
            if prow >> bit & 1:
                pivots[b] = prow ^ row
        pivots[bit] = row
    free = [i for i in range(len(names)) if i not in pivots]
    solutions = []
    for values in itertools.product((0, 1), repeat=len(free)):
        x = 0
        for i, v in zip(free, values):
            x |= v << i
        for bit, prow in pivots.items():
            # pivot variable equals the sum of the other variables in its row
            if bin(prow & x & ~(1 << bit)).count("1") % 2:
                x |= 1 << bit
        if x:
            solutions.append(tuple(x >> i & 1 for i in range(len(names))))
    solutions.sort()
    return [{n: -1 if bits[i] else 1 for i, n in enumerate(names)} for bits in solutions]


def index_two_subgroups(sig: NecSignature) -> list[IndexTwoSubgroup]:
    check_signature(sig)
    out = []
    swap = Permutation((1, 0))
    ident = Permutation.identity(2)
    for assignment in sign_characters(sig):
        images = {n: swap if s == -1 else ident for n, s in assignment.items()}
        action = CosetAction(sig, 2, images)
        out.append(IndexTwoSubgroup(assignment, action, subgroup_signature(sig, action)))
    return out


def canonical_images(images: list[tuple[int, ...]]) -> tuple[tuple[int, ...], ...] | None:
    """Relabel points in breadth-first order from point 0; None if intransitive."""
    n = len(images[0])
    label = {0: 0}
    order = [0]
    for v in order:
        for g in images:
            w = g[v]
            if w not in label:
                label[w] = len(order)
                order.append(w)
    if len(order) != n:
        return None
    return tuple(tuple(label[g[order[i]]] for i in range(n)) for g in images)


def search_actions(sig: NecSignature, degree: int, limit: int | None = None) -> SearchResult:
    """All transitive actions of degree ``degree`` up to relabelling points fixing 1.

    Generator images are tried in lexicographic order; a generator that occurs
    once in a relator whose other generators are assigned is solved for
    instead of branched on. Results come back in order of first discovery,
    each in breadth-first canonical labelling.
    """
    check_signature(sig)
    if not 1 <= degree <= MAX_SEARCH_DEGREE:
        raise ValueError(f"search degree must be within 1..{MAX_SEARCH_DEGREE}, got {degree}")
    pres = canonical_presentation(sig)
    names = pres.names
    index = {n: i for i, n in enumerate(names)}
    rels = [(tuple((index[n], e) for n, e in r.word), r.power) for r in pres.relators]
    ngen = len(names)
    ident = tuple(range(degree))
    perms = sorted(itertools.permutations(range(degree)))

    candidates: list[list[tuple[int, ...]]] = []
    for g in range(ngen):
        cands = perms
        for word, power in rels:
            if {i for i, _ in word} == {g}:
                total = sum(e for _, e in word) * power
                cands = [p for p in cands if tuple_power(p, total) == ident]
        candidates.append(cands)

    long_word, _ = rels[-1]
    counts: dict[int, int] = {}
    for i, _ in long_word:
        counts[i] = counts.get(i, 0) + 1
    solvable = [i for i, e in long_word if counts[i] == 1 and abs(e) == 1]
    deferred = solvable[-1] if solvable else None
    priority = _priority(sig, index)
    if deferred is not None:
        priority.remove(deferred)
        priority.append(deferred)

    found: dict[tuple, None] = {}
    leaves = 0
    complete = True

    def evaluate(word, power, assign):
        acc = ident
        for i, e in word:
            acc = tuple_compose(acc, tuple_power(assign[i], e) if e != 1 else assign[i])
        return tuple_power(acc, power) if power != 1 else acc

    def propagate(assign, checked):
        progress = True
        while progress:
            progress = False
            for r, (word, power) in enumerate(rels):
                if checked[r]:
                    continue
                missing = {i for i, _ in word if assign[i] is None}
                if not missing:
                    if evaluate(word, power, assign) != ident:
                        return False
                    checked[r] = True
                    progress = True
                elif len(missing) == 1 and power == 1:
                    g = missing.pop()
                    pos = [p for p, (i, _) in enumerate(word) if i == g]
                    if len(pos) != 1 or abs(word[pos[0]][1]) != 1:
                        continue
                    p = pos[0]
                    left = evaluate(word[:p], 1, assign)
                    right = evaluate(word[p + 1:], 1, assign)
                    value = tuple_compose(tuple_inverse(left), tuple_inverse(right))
                    if word[p][1] == -1:
                        value = tuple_inverse(value)
                    assign[g] = value
                    progress = True
        return True

    def dfs(assign, checked):
        nonlocal leaves, complete
        if not complete:
            return
        if not propagate(assign, checked):
            return
        g = next((i for i in priority if assign[i] is None), None)
        if g is None:
            leaves += 1
            form = canonical_images(assign)
            if form is not None and form not in found:
                if limit is not None and len(found) >= limit:
                    complete = False
                    return
                found[form] = None
            return
        for p in candidates[g]:
            child = list(assign)
            child[g] = p
            dfs(child, list(checked))

    dfs([None] * ngen, [False] * len(rels))
    actions = [CosetAction(sig, degree, {n: Permutation(form[i]) for i, n in enumerate(names)})
               for form in found]
    return SearchResult(actions, complete, leaves)


def _priority(sig: NecSignature, index: dict[str, int]) -> list[int]:
    order = []
    for i, cyc in enumerate(sig.period_cycles, 1):
        order.append(f"c{i}.0")
        order.append(f"e{i}")
        order.extend(f"c{i}.{j}" for j in range(1, len(cyc) + 1))
    order.extend(f"x{j}" for j in range(1, sig.r + 1))
    order.extend(n for n in index if n[0] in "ab")
    return [index[n] for n in order]
