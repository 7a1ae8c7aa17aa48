import json
import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, strategies as st

from ddb.cosets import (
    EnumLimit,
    group_order,
    hom_is_well_defined,
    image_index,
    is_identity,
    perm_rep,
    todd_coxeter,
    words_equal,
)
from ddb.errors import IncompleteTableError, MalformedInputError
from ddb.parser import parse_presentation
from ddb.words import GroupHom, Presentation, Word

ORDERS = [
    ("< a | a^5 >", 5),
    ("< a | >", None),
    ("< a, b | >", None),
    ("< | >", 1),
    ("< a, b | a^2, b^2, (a b)^3 >", 6),
    ("< a, b | a^2, b^3, (a b)^5 >", 60),
    ("< a, b | a^2, b^3, (a b)^4 >", 24),
    ("< s, t | s^3 = t^3 = (s t)^2 >", 24),
    ("< s, t | s^4 = t^3 = (s t)^2 >", 48),
    ("< s, t | s^5 = t^3 = (s t)^2 >", 120),
    ("< a, b | a b a^-1 b, a^2 b^-1 >", 4),
    ("< a, b | a b a^-1 b, a^4 b^-1 >", 8),
    ("< a, b | a^4, b^2 = a^2, b a b^-1 a >", 8),
    ("< a, b | [a, b], a^6, b^4 >", 24),
    ("< x, y | x^2, y^2, x y x^-1 y^-1 >", 4),
]


@pytest.mark.parametrize("text, order", ORDERS)
def test_known_orders(text, order):
    assert group_order(parse_presentation(text)) == order


def test_infinite_with_finite_h1_hits_limit():
    # Z/2 * Z/2 has finite abelianization but is infinite
    p = parse_presentation("< a, b | a^2, b^2 >")
    t = todd_coxeter(p, (), EnumLimit(500))
    assert not t.complete and t.index is None and t.rows.shape[0] == 0
    assert group_order(p, EnumLimit(500)) is None


def test_subgroup_cosets_and_action():
    # Klein bottle group, subgroup < d^2, e > has index 2
    p = parse_presentation("< d, e | d e d^-1 e >")
    t = todd_coxeter(p, [Word.gen(0, 2), Word.gen(1)])
    assert t.index == 2
    assert list(t.action(0)) == [1, 0]
    assert list(t.action(1)) == [0, 1]
    assert t.trace(Word.gen(0, 3)) == 1
    data = t.to_json()
    assert data["index"] == 2 and data["complete"]


def test_table_is_consistent():
    p = parse_presentation("< s, t | s^4 = t^3 = (s t)^2 >")
    t = todd_coxeter(p)
    n = t.index
    rows = t.rows
    for g in range(p.ngens):
        fwd, back = rows[:, 2 * g], rows[:, 2 * g + 1]
        assert sorted(fwd) == list(range(n))
        assert np.array_equal(back[fwd], np.arange(n))
    for c in range(n):
        for r in p.relators:
            assert t.trace(r, c) == c


def test_words_equal_and_identity():
    p = parse_presentation("< s, t | s^3 = t^3 = (s t)^2 >")
    s, t = Word.gen(0), Word.gen(1)
    assert words_equal(p, s**3, t**3)
    assert is_identity(p, s**6)
    assert is_identity(p, s**3) is False
    assert words_equal(parse_presentation("< a | >"), Word.gen(0), Word()) is None


def test_hom_checks():
    # Z/6 -> Z/2 x Z/3 via x -> a b is an isomorphism
    src = parse_presentation("< x | x^6 >")
    tgt = parse_presentation("< a, b | a^2, b^3, [a, b] >")
    h = GroupHom(src, tgt, (Word.of((0, 1), (1, 1)),))
    assert hom_is_well_defined(h)
    assert image_index(h) == 1
    bad = GroupHom(parse_presentation("< x | x^4 >"), tgt, (Word.gen(1),))
    assert hom_is_well_defined(bad) is False
    assert image_index(bad) == 2


def test_perm_rep():
    p = parse_presentation("< a, b | a^2, b^3, (a b)^3 >")
    g = perm_rep(todd_coxeter(p))
    assert g.degree == 12 and g.order() == 12
    with pytest.raises(IncompleteTableError):
        perm_rep(todd_coxeter(parse_presentation("< a, b | a^2, b^2 >"), (), EnumLimit(50)))


def test_bad_limit(monkeypatch):
    with pytest.raises(MalformedInputError):
        EnumLimit(-3)
    monkeypatch.setenv("DDB_COSET_LIMIT", "77")
    assert EnumLimit().max_cosets == 77
    monkeypatch.setenv("DDB_COSET_LIMIT", "many")
    with pytest.raises(MalformedInputError):
        EnumLimit()


@given(st.integers(1, 12), st.integers(1, 12))
def test_direct_product_of_cyclics(m, n):
    p = parse_presentation(f"< a, b | a^{m}, b^{n}, [a, b] >")
    assert group_order(p) == m * n


@given(st.integers(2, 30))
def test_dihedral_orders(n):
    assert group_order(parse_presentation(f"< r, f | r^{n}, f^2, f r f^-1 r >")) == 2 * n


@given(st.integers(1, 12), st.integers(1, 12))
def test_regular_action_order_equals_index(m, n):
    p = parse_presentation(f"< a, b | a^2, b^{m}, a b a^-1 b^{n} >")
    t = todd_coxeter(p)
    if t.complete and t.index <= 200:
        assert perm_rep(t).order() == t.index


_SCRIPT = """
import json, sys
from ddb._accel import backend_name
from ddb.cosets import todd_coxeter
from ddb.parser import parse_presentation
out = {"backend": backend_name(), "tables": []}
for text in json.loads(sys.argv[1]):
    t = todd_coxeter(parse_presentation(text))
    out["tables"].append(t.rows.tolist())
print(json.dumps(out))
"""


def _run_backend(flag, texts):
    env = dict(os.environ, DDB_USE_NUMBA=flag)
    res = subprocess.run(
        [sys.executable, "-c", _SCRIPT, json.dumps(texts)],
        env=env, capture_output=True, text=True, check=True,
    )
    return json.loads(res.stdout)


def test_backends_produce_identical_tables():
    texts = [t for t, n in ORDERS if n is not None and n <= 60]
    fast = _run_backend("1", texts)
    slow = _run_backend("0", texts)
    assert fast["backend"] == "numba" and slow["backend"] == "python"
    assert fast["tables"] == slow["tables"]
