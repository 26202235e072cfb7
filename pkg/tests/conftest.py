from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from affinemod import Ring

settings.register_profile(
    "repo",
    max_examples=200,
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("repo")

R3 = Ring(["x", "y", "z"])


@st.composite
def polynomials(draw, ring=R3, max_terms=4, max_degree=3, allow_zero=True):
    n = draw(st.integers(0 if allow_zero else 1, max_terms))
    terms = {}
    for _ in range(n):
        e = [0] * ring.ngens
        for _ in range(draw(st.integers(0, max_degree))):
            e[draw(st.integers(0, ring.ngens - 1))] += 1
        e = tuple(e)
        c = draw(st.sampled_from([-5, -4, -3, -2, -1, 1, 2, 3, 4, 5]))
        terms[e] = terms.get(e, 0) + Fraction(c)
    from affinemod import Polynomial

    p = Polynomial(ring, terms)
    if not allow_zero and p.is_zero():
        p = ring.one()
    return p
