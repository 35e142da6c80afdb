import random

import pytest
from hypothesis import given, settings, strategies as st

from props import ALGEBRAS, PROPERTIES, run_property


@pytest.mark.parametrize("name", list(PROPERTIES))
def test_property_hundred_cases(name):
    assert run_property(name, cases=100, seed=0) == []


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 2**32), which=st.integers(0, len(ALGEBRAS) - 1),
       name=st.sampled_from(["shift sign law", "K0 of a shift is negated", "minimize is idempotent",
                             "formats round trip"]))
def test_properties_under_hypothesis(seed, which, name):
    PROPERTIES[name](ALGEBRAS[which], random.Random(seed))
