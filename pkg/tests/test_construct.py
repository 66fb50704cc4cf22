import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weierfano.bundle import BundleSpec
from weierfano.catalog import builtin_table, record
from weierfano.chowtower import exceptional_divisor, integrate_on_xprime
from weierfano.construct import (
    FamilyInput,
    abar4,
    anticanonical_xprime,
    full_report,
    k2c2,
    k4_closed,
    k4_oracle,
    nd_zeta,
    normal_bundle_identity,
    pullback_fourth_powers,
    tower,
    validate,
    zeta_cubed,
)
from weierfano.errors import DomainError
from weierfano.surface import surface

from oracles import sympy_tower_integral

P2, Q = surface("P2"), surface("P1xP1")
H = P2.divisor(1)


def inp(S, B):
    return FamilyInput(S, B)


def test_input_surface_mismatch():
    with pytest.raises(DomainError):
        FamilyInput(Q, BundleSpec.trivial(P2))


def test_validate_examples():
    f = validate(inp(P2, BundleSpec.split(P2.zero(), H)))
    assert f.gg_ok is True and f.adjoint_ample_ok and f.adjoint_gg_ok is True and f.all_ok
    f = validate(inp(P2, BundleSpec.split(P2.zero(), 3 * H)))
    assert f.adjoint_ample_ok is False and not f.all_ok
    S1 = surface("S1")
    f = validate(inp(S1, BundleSpec.trivial(S1)))
    assert f.adjoint_gg_ok is False and f.adjoint_ample_ok is True
    assert any("base point" in n for n in f.notes)


@pytest.mark.parametrize("rec", builtin_table(), ids=lambda r: f"row{r.id}")
def test_catalog_inputs_are_valid(rec):
    flags = validate(rec.input)
    assert flags.gg_ok is True
    assert flags.adjoint_ample_ok


def test_anticanonical_xprime():
    i = inp(P2, BundleSpec.split(P2.zero(), H))
    R = tower(i.bundle)
    assert anticanonical_xprime(i) == R.taut(0) + R.divisor(2 * H)
    i = inp(Q, BundleSpec.trivial(Q))
    assert anticanonical_xprime(i) == tower(i.bundle).taut(0) + Q.divisor(2, 2)


@pytest.mark.parametrize("id,k4", [(1, 18), (2, 33), (3, 54), (5, 32), (13, 20), (14, 27)])
def test_k4_examples(id, k4):
    i = record(id).input
    assert k4_closed(i) == k4
    assert k4_oracle(i) == k4


def test_k4_matches_groebner_oracle():
    # row 12, F = O(1,0) + O(0,1); -K_X' + E = zT + (1,1) + zW/3
    i = record(12).input
    expected = sympy_tower_integral(
        "P1xP1", (1, 1), 1,
        lambda s: (s["zT"] + s["a"] + s["b"] + s["zW"] / 3) ** 4 * (3 * s["zW"] + 6 * s["zT"]),
    )
    assert k4_oracle(i) == expected == 21


def test_k2c2_examples():
    assert k2c2(record(13).input) == 80
    assert k2c2(record(3).input) == 120
    assert k2c2(record(8).input) == 68


@pytest.mark.parametrize("id,nd", [(1, 3), (3, 1), (5, 2), (8, 2), (10, 1), (11, 2), (16, 2), (20, 1)])
def test_nd_zeta_examples(id, nd):
    assert nd_zeta(record(id).input) == nd


@pytest.mark.parametrize("id,value", [(7, 1), (6, 2), (12, 1), (1, 4), (2, 1), (4, 3), (9, 2), (14, 1)])
def test_abar4_examples(id, value):
    assert abar4(record(id).input) == value


def test_abar4_needs_birational():
    with pytest.raises(DomainError):
        abar4(record(5).input)


@pytest.mark.parametrize("d", range(2, 8))
def test_trivial_bundle_closed_forms(d):
    S = surface(f"S{d}")
    i = inp(S, BundleSpec.trivial(S))
    r = full_report(i)
    assert (r.k4, r.h0, r.k2c2) == (6 * d, 2 * (d + 1), 12 * (d + 1))
    assert r.nd_zeta == 1 and r.abar4 is None and zeta_cubed(i) == 0


def test_degree_one_trivial():
    S = surface("S1")
    r = full_report(inp(S, BundleSpec.trivial(S)))
    assert (r.k4, r.h0, r.k2c2) == (6, 4, 24)
    assert r.adjoint_gg_ok is False


@pytest.mark.parametrize("rec", builtin_table(), ids=lambda r: f"row{r.id}")
def test_identities_per_row(rec):
    for b, lhs, rhs in normal_bundle_identity(rec.input):
        assert lhs == rhs, str(b)
    for name, value in pullback_fourth_powers(rec.input):
        assert value == 0, name


def test_report_json_and_labels():
    r = full_report(record(13).input)
    js = r.to_json()
    assert js["k4"] == 20 and js["h0"] == 11 and js["k2c2"] == 80
    assert js["h0_label"] == "cross-checked"
    r4 = full_report(record(4).input)
    assert r4.h0_routes == {"chi": 12, "split": 12} and r4.h0_label == "cross-checked"
    assert full_report(record(1).input).to_json()["abar4"] == 4


split_inputs = st.one_of(
    st.tuples(st.just("P2"), st.integers(0, 2), st.integers(0, 2)).map(
        lambda t: inp(P2, BundleSpec.split(P2.divisor(t[1]), P2.divisor(t[2])))
    ),
    st.tuples(st.integers(0, 1), st.integers(0, 1), st.integers(0, 1), st.integers(0, 1)).map(
        lambda t: inp(Q, BundleSpec.split(Q.divisor(t[0], t[1]), Q.divisor(t[2], t[3])))
    ),
    st.tuples(st.sampled_from(["F1", "S7", "S5", "S3"]), st.integers(0, 1)).map(
        lambda t: inp(surface(t[0]), BundleSpec.split(surface(t[0]).zero(),
                                                      t[1] * surface(t[0]).basis()[0]))
    ),
)


@settings(max_examples=40, deadline=None)
@given(split_inputs)
def test_tower_k4_equals_closed_formula(i):
    R = tower(i.bundle)
    value = integrate_on_xprime(R, (anticanonical_xprime(i) + exceptional_divisor(R)) ** 4)
    assert value == k4_closed(i)
