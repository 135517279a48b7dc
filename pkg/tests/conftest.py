import json
from pathlib import Path

import pytest

from surfjump.generators import blowup_build, curve_sequences

INSTANCES = Path(__file__).resolve().parent.parent / "instances"


def load_instance(name):
    from surfjump.jumping import PairData
    return PairData.from_json(json.loads((INSTANCES / name).read_text()))


@pytest.fixture(scope="session")
def curves():
    seqs = curve_sequences()
    return {
        "x13_y5": blowup_build(seqs["x^13-y^5"]),
        "two_cusps": blowup_build(seqs["(x^3-y^2)(x^2-y^3)"]),
        "parabola_cusp": blowup_build(seqs["(y-x^2)(y^2-x^5)"]),
        "cusp_pair": blowup_build(seqs["(y^2-x^5)(y^2-x^3)"]),
    }


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
