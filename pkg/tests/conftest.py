"""Shared hypothesis strategies and small independent oracles."""

from __future__ import annotations

import os
import sys

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from cylcalc.polycore import Polynomial

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", deadline=None, max_examples=100,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("CYLCALC_HYPOTHESIS", "default"))


def monomials(nvars: int, max_deg: int):
    @st.composite
    def build(draw):
        exps = draw(st.lists(st.integers(0, max_deg), min_size=nvars, max_size=nvars))
        while sum(exps) > max_deg:
            i = exps.index(max(exps))
            exps[i] -= 1
        return tuple((v, e) for v, e in enumerate(exps) if e)
    return build()


coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4)
small_ints = st.integers(-3, 3)


def polys(nvars: int = 3, max_deg: int = 2, max_terms: int = 4, integral: bool = False):
    c = small_ints if integral else coeffs
    return st.dictionaries(monomials(nvars, max_deg), c, max_size=max_terms).map(Polynomial)


def nonzero_polys(nvars=3, max_deg=2, max_terms=4, integral=True):
    return polys(nvars, max_deg, max_terms, integral).filter(lambda p: bool(p) and not p.is_constant())


@pytest.fixture(params=["python", "cython"])
def backend(request):
    from cylcalc import _backend
    if request.param not in _backend.available():
        pytest.skip(f"{request.param} backend not built")
    prev = _backend.current()
    _backend.use(request.param)
    yield request.param
    _backend.use(prev)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not getattr(mod, "RESULTS", None):
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
