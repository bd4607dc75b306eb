import pytest

from projalg.ringspec import parse_ring

# finite involutive rings with at most 16 elements
FINITE_RINGS = [
    ("F2", None),
    ("F3", None),
    ("F5", None),
    ("F7", None),
    ("Fq(2,2)", None),
    ("Fq(2,2)", "conj"),
    ("Fq(3,2)", "conj"),
    ("Fq(2,4)", "conj"),
    ("Zmod(4)", None),
    ("Zmod(6)", None),
    ("Zmod(8)", None),
    ("Zmod(9)", None),
    ("Dual(F2)", None),
    ("Dual(F3)", None),
    ("Dual(F3)", "dualflip"),
    ("Func(2,F2)", None),
    ("Func(2,F3)", None),
    ("Mat(2,F2)", "transpose"),
]


def ring_id(spec):
    text, inv = spec
    return text if inv is None else f"{text}[{inv}]"


@pytest.fixture(params=FINITE_RINGS, ids=[ring_id(s) for s in FINITE_RINGS])
def finite_ring(request):
    return parse_ring(*request.param)


def pytest_terminal_summary(terminalreporter):
    import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(test_acceptance.RESULTS):
            terminalreporter.write_line(test_acceptance.RESULTS[n])
