from __future__ import annotations

from hypothesis import settings, strategies as st

from tangle_tqft.ring import LaurentPoly, RingMatrix

settings.register_profile("repo", max_examples=60, deadline=None, derandomize=True)
settings.load_profile("repo")


def polys(variable: str = "q", max_terms: int = 4) -> st.SearchStrategy[LaurentPoly]:
    terms = st.dictionaries(st.integers(-6, 6), st.integers(-5, 5), max_size=max_terms)
    return terms.map(lambda t: LaurentPoly(t, variable))


def matrices(rows: int, cols: int, variable: str = "q") -> st.SearchStrategy[RingMatrix]:
    return st.lists(polys(variable, 2), min_size=rows * cols, max_size=rows * cols).map(
        lambda xs: RingMatrix(rows, cols, xs, variable)
    )


# acceptance lines collected by tests/test_acceptance.py
ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[k])
