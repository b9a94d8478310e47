from fractions import Fraction

from hypothesis import strategies as st

from kkw.coeffs import C0, HP, N, OMEGA, OPAQUE, PI, T, CoeffPoly, GaussianRational

fractions = st.builds(Fraction, st.integers(-40, 40), st.integers(1, 12))
gaussians = st.builds(GaussianRational, fractions, fractions)
nonzero_gaussians = gaussians.filter(bool)

SYMBOLS = [HP, PI, OMEGA(2), OMEGA(3), OMEGA(4), T, N, C0, OPAQUE("dd")]

monomials = st.lists(
    st.tuples(st.sampled_from(SYMBOLS), st.integers(1, 3)), max_size=3
)


@st.composite
def polys(draw, max_terms=4):
    out = CoeffPoly()
    for _ in range(draw(st.integers(0, max_terms))):
        out = out + CoeffPoly.monomial(draw(monomials), draw(gaussians))
    return out
