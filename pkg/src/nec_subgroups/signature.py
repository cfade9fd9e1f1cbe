"""NEC and Fuchsian signatures, their areas and canonical presentations.

A signature ``(g; ±; [m_1, ..., m_r]; {(n_11, ..., n_1s_1), ..., (n_k1, ...)})``
is stored with period-1 entries removed. All area arithmetic uses
``fractions.Fraction``.

Canonical generator names are fixed:

* ``x1 .. xr``    elliptic generators, ``x_j`` of order ``m_j``
* ``ci.j``        reflections of period cycle ``i`` (1-based), ``j = 0 .. s_i``
* ``e1 .. ek``    connecting generators, ``e_i ci.0 e_i^-1 = ci.s_i``
* ``a1, b1, ..``  hyperbolic pairs (sign ``+``) or glide reflections ``a1 ..`` (sign ``-``)
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence


class SignatureError(ValueError):
    """A signature is malformed or violates an invariant."""

    def __init__(self, message: str, violations: Sequence[Violation] = ()) -> None:
        super().__init__(message)
        self.violations = list(violations)


class SignatureParseError(SignatureError):
    def __init__(self, message: str, offset: int | None = None) -> None:
        super().__init__(message)
        self.offset = offset


class InconsistentAnalysis(ArithmeticError):
    """The genus residual is not an admissible integer.

    Raised when an area does not match any genus; this means either a bug or
    a permutation action that does not define a subgroup.
    """


class Sign(enum.Enum):
    PLUS = "+"
    MINUS = "-"

    @property
    def alpha(self) -> int:
        return 2 if self is Sign.PLUS else 1

    @classmethod
    def coerce(cls, value: Sign | str) -> Sign:
        if isinstance(value, Sign):
            return value
        value = value.strip().replace("−", "-")
        return cls(value)


def _drop_ones(values: Iterable[int]) -> tuple[int, ...]:
    return tuple(int(v) for v in values if v != 1)


@dataclass(frozen=True)
class NecSignature:
    genus: int
    sign: Sign
    proper_periods: tuple[int, ...] = ()
    period_cycles: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "sign", Sign.coerce(self.sign))
        object.__setattr__(self, "genus", int(self.genus))
        object.__setattr__(self, "proper_periods", _drop_ones(self.proper_periods))
        object.__setattr__(
            self, "period_cycles", tuple(_drop_ones(c) for c in self.period_cycles))

    @property
    def k(self) -> int:
        return len(self.period_cycles)

    @property
    def r(self) -> int:
        return len(self.proper_periods)

    def __str__(self) -> str:
        return format_signature(self)


@dataclass(frozen=True)
class FuchsianSignature:
    genus: int
    periods: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "periods", tuple(int(p) for p in self.periods))

    def area(self) -> Fraction:
        """``2g - 2 + sum(1 - 1/m)``, i.e. the hyperbolic area divided by 2*pi."""
        return 2 * self.genus - 2 + sum((1 - Fraction(1, m) for m in self.periods), Fraction(0))

    def __str__(self) -> str:
        return f"({self.genus}; {','.join(map(str, self.periods))})"


@dataclass(frozen=True)
class Violation:
    invariant: str
    field: str
    detail: str

    def __str__(self) -> str:
        return f"{self.field}: {self.detail}"


def reduced_area(sig: NecSignature) -> Fraction:
    """Area of a fundamental region divided by 2*pi.

    Multiplicative in the index of a subgroup.
    """
    area = Fraction(sig.sign.alpha * sig.genus + sig.k - 2)
    for m in sig.proper_periods:
        area += 1 - Fraction(1, m)
    for cyc in sig.period_cycles:
        for n in cyc:
            area += (1 - Fraction(1, n)) / 2
    return area


def validate_signature(sig: NecSignature) -> list[Violation]:
    """Return every violated invariant; an empty list means the signature is valid."""
    out = []
    if sig.genus < 0:
        out.append(Violation("genus >= 0", "genus", f"negative genus {sig.genus}"))
    if sig.sign is Sign.MINUS and sig.genus < 1:
        out.append(Violation("sign minus requires genus >= 1", "sign",
                             "sign minus requires genus >= 1"))
    for idx, m in enumerate(sig.proper_periods):
        if m < 2:
            out.append(Violation("proper period >= 2", f"proper_periods[{idx}]",
                                 f"proper period {m} < 2"))
    for i, cyc in enumerate(sig.period_cycles):
        for j, n in enumerate(cyc):
            if n < 2:
                out.append(Violation("link period >= 2", f"period_cycles[{i}][{j}]",
                                     f"link period {n} < 2"))
    if not out:
        area = reduced_area(sig)
        if area <= 0:
            kind = "Euclidean" if area == 0 else "spherical"
            out.append(Violation("reduced area > 0", "signature",
                                 f"reduced area = {area} ({kind})"))
    return out


def check_signature(sig: NecSignature, *, require_hyperbolic: bool = True) -> NecSignature:
    violations = validate_signature(sig)
    if not require_hyperbolic:
        violations = [v for v in violations if v.invariant != "reduced area > 0"]
    if violations:
        raise SignatureError(
            f"invalid signature {format_signature(sig)}: "
            + "; ".join(str(v) for v in violations), violations)
    return sig


def canonical_fuchsian(sig: NecSignature) -> FuchsianSignature:
    """Signature of the orientation-preserving subgroup of index two.

    For a Fuchsian ``sig`` (sign ``+``, no period cycles) this is the index-2
    double of the orbifold, not ``sig`` itself; see ``as_fuchsian``.
    """
    check_signature(sig)
    genus = sig.sign.alpha * sig.genus + sig.k - 1
    periods = [m for m in sig.proper_periods for _ in range(2)]
    periods += [n for cyc in sig.period_cycles for n in cyc]
    return FuchsianSignature(genus, tuple(periods))


def as_fuchsian(sig: NecSignature) -> FuchsianSignature:
    """Read an NEC signature without reflections or glides as a Fuchsian one."""
    if sig.sign is not Sign.PLUS or sig.period_cycles:
        raise SignatureError(f"{format_signature(sig)} is not a Fuchsian signature")
    return FuchsianSignature(sig.genus, sig.proper_periods)


def genus_from_area(target: Fraction, sign: Sign | str, proper_periods: Sequence[int],
                    period_cycles: Sequence[Sequence[int]]) -> int:
    """Solve ``reduced_area((g; sign; periods; cycles)) == target`` for ``g``."""
    sign = Sign.coerce(sign)
    target = Fraction(target)
    if target <= 0:
        raise InconsistentAnalysis(f"target area {target} is not positive")
    rest = reduced_area(NecSignature(0, Sign.PLUS, tuple(proper_periods),
                                     tuple(tuple(c) for c in period_cycles)))
    residual = target - rest
    if residual.denominator != 1:
        raise InconsistentAnalysis(
            f"genus residual {residual} is not an integer (target {target})")
    residual_int = residual.numerator
    if sign is Sign.PLUS:
        if residual_int < 0 or residual_int % 2:
            raise InconsistentAnalysis(
                f"orientable genus residual {residual_int} is not an even nonnegative integer")
        return residual_int // 2
    if residual_int < 1:
        raise InconsistentAnalysis(
            f"non-orientable genus residual {residual_int} is not a positive integer")
    return residual_int


def _min_dihedral_form(cycle: Sequence[int]) -> tuple[int, ...]:
    cycle = tuple(cycle)
    if not cycle:
        return ()
    candidates = []
    for seq in (cycle, cycle[::-1]):
        for i in range(len(seq)):
            candidates.append(seq[i:] + seq[:i])
    return min(candidates)


def cycle_sort_key(cycle: Sequence[int]) -> tuple[bool, tuple[int, ...]]:
    # Nonempty cycles first, lexicographically; empty cycles last.
    return (len(cycle) == 0, tuple(cycle))


def normalize_cycles(cycles: Iterable[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    return tuple(sorted((_min_dihedral_form(c) for c in cycles), key=cycle_sort_key))


def normalize(sig: NecSignature) -> NecSignature:
    """Canonical comparison form: sorted periods, minimal rotation/reversal of cycles.

    This is a comparison key for equal outputs, not a decision procedure for
    isomorphism of NEC groups.
    """
    return NecSignature(sig.genus, sig.sign, tuple(sorted(sig.proper_periods)),
                        normalize_cycles(sig.period_cycles))


# Presentations ---------------------------------------------------------------

class GeneratorKind(enum.Enum):
    REFLECTION = "reflection"
    ELLIPTIC = "elliptic"
    CONNECTING = "connecting"
    HYPERBOLIC = "hyperbolic-pair-member"
    GLIDE = "glide"


Letter = tuple[str, int]


def format_word(word: Sequence[Letter]) -> str:
    parts = []
    for name, exp in word:
        parts.append(name if exp == 1 else f"{name}^{exp}")
    return " ".join(parts)


@dataclass(frozen=True)
class Relator:
    """``word ** power == 1``; ``role`` is one of elliptic, reflection, dihedral, closing, long."""

    word: tuple[Letter, ...]
    power: int = 1
    role: str = ""

    def generators(self) -> set[str]:
        return {name for name, _ in self.word}

    def __str__(self) -> str:
        if self.power == 1:
            return format_word(self.word)
        if len(self.word) == 1 and self.word[0][1] == 1:
            return f"{self.word[0][0]}^{self.power}"
        return f"({format_word(self.word)})^{self.power}"


@dataclass(frozen=True)
class Presentation:
    generators: tuple[tuple[str, GeneratorKind], ...]
    relators: tuple[Relator, ...]
    kinds: dict[str, GeneratorKind] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "kinds", dict(self.generators))

    @property
    def names(self) -> list[str]:
        return [name for name, _ in self.generators]

    def long_relator(self) -> Relator:
        return self.relators[-1]


def reflection_name(cycle: int, position: int) -> str:
    return f"c{cycle}.{position}"


_REFLECTION = re.compile(r"c(\d+)\.(\d+)$")


def parse_reflection_name(name: str) -> tuple[int, int] | None:
    m = _REFLECTION.match(name)
    return (int(m.group(1)), int(m.group(2))) if m else None


def canonical_presentation(sig: NecSignature) -> Presentation:
    """Generators and defining relators of an NEC group with signature ``sig``.

    Only the structural invariants are required; the area may be nonpositive.
    """
    check_signature(sig, require_hyperbolic=False)
    gens: list[tuple[str, GeneratorKind]] = []
    rels: list[Relator] = []
    for j, m in enumerate(sig.proper_periods, 1):
        gens.append((f"x{j}", GeneratorKind.ELLIPTIC))
        rels.append(Relator(((f"x{j}", 1),), m, "elliptic"))
    for i, cyc in enumerate(sig.period_cycles, 1):
        names = [reflection_name(i, j) for j in range(len(cyc) + 1)]
        gens.extend((name, GeneratorKind.REFLECTION) for name in names)
        rels.extend(Relator(((name, 1),), 2, "reflection") for name in names)
        for j, n in enumerate(cyc, 1):
            rels.append(Relator(((names[j - 1], 1), (names[j], 1)), n, "dihedral"))
        e = f"e{i}"
        rels.append(Relator(((e, 1), (names[0], 1), (e, -1), (names[-1], 1)), 1, "closing"))
    gens.extend((f"e{i}", GeneratorKind.CONNECTING) for i in range(1, sig.k + 1))
    long: list[Letter] = [(f"x{j}", 1) for j in range(1, sig.r + 1)]
    long += [(f"e{i}", 1) for i in range(1, sig.k + 1)]
    for l in range(1, sig.genus + 1):
        if sig.sign is Sign.PLUS:
            gens.append((f"a{l}", GeneratorKind.HYPERBOLIC))
            gens.append((f"b{l}", GeneratorKind.HYPERBOLIC))
            long += [(f"a{l}", 1), (f"b{l}", 1), (f"a{l}", -1), (f"b{l}", -1)]
        else:
            gens.append((f"a{l}", GeneratorKind.GLIDE))
            long.append((f"a{l}", 2))
    rels.append(Relator(tuple(long), 1, "long"))
    return Presentation(tuple(gens), tuple(rels))


def orientation_sign(sig: NecSignature, name: str) -> int:
    """+1 for orientation-preserving canonical generators, -1 for reflections and glides."""
    kinds = canonical_presentation(sig).kinds
    if name not in kinds:
        raise KeyError(f"unknown generator {name!r}; expected one of {sorted(kinds)}")
    return -1 if kinds[name] in (GeneratorKind.REFLECTION, GeneratorKind.GLIDE) else 1


# Text syntax -----------------------------------------------------------------

def _format_list(values: Sequence[int]) -> str:
    return ",".join(map(str, values))


def format_signature(sig: NecSignature) -> str:
    """``(g; +; [m1,...]; {(n11,...),()})``; no periods print as ``[ ]``."""
    periods = f"[{_format_list(sig.proper_periods)}]" if sig.proper_periods else "[ ]"
    cycles = ",".join(f"({_format_list(c)})" for c in sig.period_cycles)
    return f"({sig.genus}; {sig.sign.value}; {periods}; {{{cycles}}})"


def parse_signature(text: str) -> NecSignature:
    """Parse ``(g; +|-; [m1,...]; {(n11,...),(),...})``; whitespace is ignored."""
    src = text.replace("−", "-")
    pos = 0

    def skip() -> None:
        nonlocal pos
        while pos < len(src) and src[pos].isspace():
            pos += 1

    def expect(ch: str) -> None:
        nonlocal pos
        skip()
        if pos >= len(src) or src[pos] != ch:
            found = repr(src[pos]) if pos < len(src) else "end of input"
            raise SignatureParseError(f"expected {ch!r} at offset {pos}, found {found}", pos)
        pos += 1

    def peek() -> str:
        skip()
        return src[pos] if pos < len(src) else ""

    def integer() -> int:
        nonlocal pos
        skip()
        start = pos
        while pos < len(src) and src[pos].isdigit():
            pos += 1
        if start == pos:
            raise SignatureParseError(f"expected an integer at offset {start}", start)
        return int(src[start:pos])

    def int_list(close: str) -> list[int]:
        nonlocal pos
        values: list[int] = []
        if peek() == close:
            pos += 1
            return values
        while True:
            values.append(integer())
            if peek() == ",":
                pos += 1
                continue
            expect(close)
            return values

    expect("(")
    genus = integer()
    expect(";")
    skip()
    if pos < len(src) and src[pos] in "+-":
        sign = Sign(src[pos])
        pos += 1
    else:
        raise SignatureParseError(f"expected '+' or '-' at offset {pos}", pos)
    expect(";")
    expect("[")
    periods = int_list("]")
    expect(";")
    expect("{")
    cycles: list[list[int]] = []
    if peek() == "}":
        pos += 1
    else:
        while True:
            expect("(")
            cycles.append(int_list(")"))
            if peek() == ",":
                pos += 1
                continue
            expect("}")
            break
    expect(")")
    skip()
    if pos != len(src):
        raise SignatureParseError(f"trailing text at offset {pos}", pos)
    return NecSignature(genus, sign, tuple(periods), tuple(tuple(c) for c in cycles))
