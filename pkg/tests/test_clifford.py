import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kkw.clifford import (
    BOUNDARY,
    DXIP,
    DXN,
    TRACE_ID,
    XIP,
    CliffordExpr,
    OpaqueFactor,
    OpaqueTraceError,
    PairingTable,
    c,
    cliff_trace,
    flagged_symbols,
    opaque_trace_rule,
    trace,
    trace_word,
)
from kkw.coeffs import C0, HP, CoeffPoly, GaussianRational
from kkw.oracle import build_rep, matrix_trace_word, raw_matrix_trace_word

DIMS = (3, 4, 6)
hp = CoeffPoly.symbol(HP)


def test_identity_times_vector():
    assert CliffordExpr.identity() * c(XIP) == c(XIP)


def test_product_is_concatenation():
    e = c(DXN, coeff=hp * 2) * c(XIP)
    assert dict(e.items()) == {(DXN, XIP): hp * 2}


@pytest.mark.parametrize("dim", DIMS)
def test_square_traces_to_minus_identity(dim):
    assert trace_word((XIP, XIP), dim) == CoeffPoly.const(-TRACE_ID[dim])


def test_boundary_trace_identities():
    assert trace_word((XIP, XIP), 3) == CoeffPoly.const(-2)
    assert trace_word((XIP, DXN), 4) == CoeffPoly()
    assert trace_word((DXN, XIP, DXN, DXIP), 4) == hp * -2
    assert trace_word((XIP, XIP, DXN, DXIP), 4) == CoeffPoly()


def test_empty_word_is_trace_of_identity():
    for dim, t in TRACE_ID.items():
        assert trace_word((), dim) == CoeffPoly.const(t)


def test_opaque_factor_rejected_by_plain_trace():
    with pytest.raises(OpaqueTraceError):
        cliff_trace(CliffordExpr.word(OpaqueFactor("A(Y)")), 4)


def test_p0_rule_gives_c0():
    # c(xi') p0 c(xi') with p0 -> c0 c(dx_n): tr = c0 * tr[c(xi') c(dx_n) c(xi')] = 0,
    # and c(dx_n) p0 = c0 c(dx_n)^2 traces to -4 c0
    w = CliffordExpr.word(DXN, OpaqueFactor("p0"))
    assert trace(w, 4) == CoeffPoly.symbol(C0, coeff=-4)


def test_unknown_opaque_word_is_flagged():
    out = opaque_trace_rule(CliffordExpr.word(OpaqueFactor("A(Y)")), 4)
    assert flagged_symbols(out) == ["trace:A(Y)"]


def test_empty_rule_table_flags_everything():
    out = opaque_trace_rule(CliffordExpr.word(OpaqueFactor("p0")), 4, rules={})
    assert flagged_symbols(out) == ["trace:p0"]


def test_self_pairing_of_normal_derivative_stays_opaque():
    out = trace_word((DXIP, DXIP), 4)
    assert flagged_symbols(out) == ["dd"]


vec = st.lists(st.integers(-3, 3), min_size=6, max_size=6)


@st.composite
def numeric_words(draw, dim, max_len=6):
    length = draw(st.integers(0, max_len))
    vecs = [draw(vec)[:dim] for _ in range(length)]
    return vecs


def _table(vecs):
    names = [f"AUX{k}" for k in range(len(vecs))]
    entries = {(a, b): sum(x * y for x, y in zip(va, vb))
               for a, va in zip(names, vecs) for b, vb in zip(names, vecs)}
    return tuple(names), PairingTable(entries)


@pytest.mark.parametrize("dim", DIMS)
@given(data=st.data())
@settings(max_examples=60, deadline=None)
def test_trace_matches_matrix_oracle(dim, data):
    vecs = data.draw(numeric_words(dim))
    names, table = _table(vecs)
    assert trace_word(names, dim, table) == CoeffPoly.const(matrix_trace_word(build_rep(dim), vecs))


@pytest.mark.parametrize("dim", DIMS)
@given(data=st.data())
@settings(max_examples=40, deadline=None)
def test_odd_words_vanish(dim, data):
    length = data.draw(st.sampled_from([1, 3, 5]))
    vecs = [data.draw(vec)[:dim] for _ in range(length)]
    names, table = _table(vecs)
    assert trace_word(names, dim, table) == CoeffPoly()


@pytest.mark.parametrize("dim", DIMS)
@given(data=st.data())
@settings(max_examples=40, deadline=None)
def test_cyclic_invariance(dim, data):
    vecs = data.draw(numeric_words(dim))
    names, table = _table(vecs)
    base = trace_word(names, dim, table)
    for r in range(1, len(names)):
        assert trace_word(names[r:] + names[:r], dim, table) == base


def test_three_dimensional_irrep_has_volume_trace():
    # the 2x2 irreducible representation gives odd words a nonzero trace;
    # the oracle averages the two inequivalent representations instead
    rep = build_rep(3)
    e = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    assert raw_matrix_trace_word(rep, e) != GaussianRational(0)
    assert matrix_trace_word(rep, e) == GaussianRational(0)
