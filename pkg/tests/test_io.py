import json

import pytest
from hypothesis import given, strategies as st

from rsw_calculus.catalog import builtin_catalog, k3
from rsw_calculus.charclass import VirtualBundle
from rsw_calculus.engine import elliptic_chain, self_sum
from rsw_calculus.io import (
    InputError, dumps, int_from_json, int_to_json, load, manifold_from_json, manifold_to_json, mod2_from_json,
    mod2_to_json, save,
)
from rsw_calculus.model import Chamber, RealFourManifold, RealSpinC
from rsw_calculus.ring import IntClass, Mod2Class, UpToSignClass


@st.composite
def records(draw):
    beta = draw(st.integers(0, 3))
    b1 = beta + draw(st.integers(0, 2))
    d = draw(st.integers(-2, 4))
    bpm = draw(st.integers(0, 3))
    sig = draw(st.integers(-4, 4)) * 8
    masks = st.sets(st.integers(0, (1 << beta) - 1))
    chambers = [Chamber.UNIQUE] if bpm != 1 else [Chamber.POSITIVE, Chamber.NEGATIVE]
    sw = {(draw(st.sampled_from(chambers)), draw(st.integers(0, 6))): Mod2Class(beta, frozenset(draw(masks)))
          for _ in range(draw(st.integers(0, 4)))}
    total = Mod2Class(beta, frozenset(draw(masks) | {0}))
    coeffs = st.dictionaries(st.integers(0, (1 << beta) - 1), st.integers(-9, 9), max_size=3)
    s = RealSpinC(
        name=draw(st.text(min_size=1, max_size=6)), c_squared=8 * d + sig, d=d,
        is_spin=draw(st.booleans()), w1_dr_zero=draw(st.booleans()), minus_dr=VirtualBundle(-d, total),
        sw_mod2=sw,
        sw_int=draw(st.none() | coeffs.map(lambda c: UpToSignClass(IntClass(beta, c)))),
        deg_r=draw(st.none() | coeffs.map(lambda c: UpToSignClass(IntClass(beta, c)))),
        ordinary_sw_mod2=draw(st.none() | st.just({0: Mod2Class.one(b1)})),
        ordinary_sw_int=draw(st.none() | st.integers(-5, 5)),
    )
    flags = [draw(st.booleans()) for _ in range(5)]
    return RealFourManifold(draw(st.text(min_size=1, max_size=8)), b1, bpm + draw(st.integers(0, 3)), sig,
                            beta, bpm, *flags, spinc=(s,))


def test_class_json_shape():
    c = Mod2Class.from_subsets(3, [(), (1, 3)])
    doc = mod2_to_json(c)
    assert doc["beta"] == 3
    assert mod2_from_json(doc) == c
    i = IntClass.from_terms(2, [((1,), -4)])
    assert int_from_json(int_to_json(i)) == i


@pytest.mark.parametrize("m", builtin_catalog() + [elliptic_chain(k3(), 3)[0],
                                                     self_sum("X", 0, 3, -16, d=2, sw_m={0: Mod2Class.one(0)})[0]],
                         ids=lambda m: m.name)
def test_round_trip(m, tmp_path):
    path = tmp_path / "m.rswm.json"
    save(m, path)
    back = load(path)
    assert back == m
    assert dumps(back) == path.read_text(encoding="utf-8")


@given(records())
def test_round_trip_is_exact_and_deterministic(m):
    text = dumps(m)
    back = manifold_from_json(json.loads(text))
    assert back == m
    assert dumps(back) == text


def test_schema_error_has_pointer():
    doc = manifold_to_json(k3())
    doc["spinc"][0]["d"] = "two"
    with pytest.raises(InputError) as exc:
        manifold_from_json(doc)
    assert exc.value.pointer == "/spinc/0/d"


def test_unknown_field_rejected():
    doc = manifold_to_json(k3())
    doc["extra"] = 1
    with pytest.raises(InputError):
        manifold_from_json(doc)


def test_generator_out_of_range():
    doc = manifold_to_json(k3())
    doc["spinc"][0]["minus_dr"]["total"]["terms"].append({"gens": [1]})
    with pytest.raises(InputError) as exc:
        manifold_from_json(doc)
    assert exc.value.pointer.startswith("/spinc/0/minus_dr")


def test_bad_files(tmp_path):
    p = tmp_path / "bad.rswm.json"
    p.write_text("{not json", encoding="utf-8")
    with pytest.raises(InputError):
        load(p)
    p.write_bytes(b"\xff\xfe")
    with pytest.raises(InputError):
        load(p)
