from pathlib import Path

import pytest

from nec_subgroups.files import load_action
from nec_subgroups.permutation import parse_cycles
from nec_subgroups.representation import CosetAction
from nec_subgroups.signature import parse_signature

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def make_action(signature: str, degree: int, generators: dict[str, str]) -> CosetAction:
    sig = parse_signature(signature)
    return CosetAction(sig, degree, {n: parse_cycles(t, degree) for n, t in generators.items()})


def triangle_action(periods, reflected) -> CosetAction:
    """Degree-2 action of the extended triangle group; ``reflected`` lists c1.0..c1.2 sent to (1,2)."""
    gens = {f"c1.{j}": "(1,2)" if j in reflected else "" for j in range(3)}
    gens["c1.3"] = gens["c1.0"]
    gens["e1"] = ""
    return make_action("(0;+;[];{(%d,%d,%d)})" % tuple(periods), 2, gens)


@pytest.fixture
def example2():
    return load_action(FIXTURES / "example2.yaml")


@pytest.fixture
def example3():
    return load_action(FIXTURES / "example3_corrected.yaml")


@pytest.fixture
def example3_printed():
    return load_action(FIXTURES / "example3_printed.yaml")
