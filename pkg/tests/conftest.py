import pytest

from corpus import RUNNING_EXAMPLE
from rle_repeats import rlbwt
from rle_repeats.alphabet import encode_text
from rle_repeats.index import RepeatIndex
from rle_repeats.mapping import build_baseline, build_move, sample_sa_at_run_boundaries
from rle_repeats.range_distinct import build_rd


@pytest.fixture(scope="session")
def example_text():
    return encode_text(RUNNING_EXAMPLE)


@pytest.fixture(scope="session")
def example_rl(example_text):
    rl, _ = rlbwt.from_text(example_text)
    return rl


@pytest.fixture(scope="session", params=["move", "baseline"])
def example_parts(request, example_rl):
    """(rlbwt, mapper, rd index, boundary samples) on both back-ends."""
    mapper = build_move(example_rl) if request.param == "move" else build_baseline(example_rl)
    return example_rl, mapper, build_rd(example_rl), sample_sa_at_run_boundaries(example_rl, mapper)


@pytest.fixture(scope="session")
def example_index():
    return RepeatIndex.from_text(RUNNING_EXAMPLE, with_nocc=True)


def sym(text, s):
    """Encode a short ASCII string into symbols of ``text``'s alphabet."""
    return text.encode_pattern(s.encode())


def pytest_terminal_summary(terminalreporter):
    try:
        import test_acceptance as acc
    except ImportError:
        return
    if not acc.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, title in acc.CRITERIA.items():
        if number not in acc.RESULTS:
            terminalreporter.write_line(f"criterion {number} ({title}): NOT RUN")
            continue
        ok, detail = acc.RESULTS[number]
        terminalreporter.write_line(f"criterion {number} ({title}): {'PASS' if ok else 'FAIL'} | {detail}")
