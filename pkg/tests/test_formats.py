from fractions import Fraction as Q

import pytest
from hypothesis import given, strategies as st

import oracles
from infodom.errors import Degenerate, ParseError, TooLarge
from infodom.fixpoints import FinitaryInfoSystem
from infodom.formats import (dump_amap, dump_isys, dump_wts, format_element, load_any,
                             parse_amap, parse_element, parse_isys, parse_wts, resolve_system)
from infodom.infosys import InfoSystem, minimal_system, saturate
from infodom.mappings import saturate_mapping
from infodom.retractions import conjunctive_completion
from infodom.subdomains import SubSystem

F = frozenset

FLAT2 = """\
# flat domain with two atoms
tokens: a b nabla
false: nabla
entail: a b => nabla
"""
CHAIN2 = "tokens: a nabla\nfalse: nabla\n"


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return p


# .isys --------------------------------------------------------------------------

def test_parse_flat2():
    A = parse_isys(FLAT2)
    assert isinstance(A, InfoSystem)
    assert set(A.elements()) == {F(), F("a"), F("b")}


def test_finitary_kind():
    S = parse_isys("kind: finitary\ntokens: a b n\nfalse: n\nentail: a => a\nentail: b => a\n")
    assert isinstance(S, FinitaryInfoSystem)


@pytest.mark.parametrize("text,needle", [
    ("false: n\n", "missing tokens"),
    ("tokens: a n\n", "missing false"),
    ("tokens: a n\nfalse: z\n", "not declared"),
    ("tokens: a n\nfalse: n\nentail: b => a\n", "unknown token"),
    ("tokens: a n\nfalse: n\nentail: a\n", "'=>'"),
    ("tokens: a a n\nfalse: n\n", "repeated"),
    ("tokens: a n\ntokens: a n\nfalse: n\n", "duplicate"),
    ("tokens: a n\nfalse: n\nrule: a => a\n", "unknown directive"),
    ("tokens: a n\nfalse: n\nkind: weird\n", "unknown kind"),
    ("tokens: a$ n\nfalse: n\n", "bad identifier"),
    ("tokens a n\n", "directive"),
])
def test_isys_errors(text, needle):
    with pytest.raises(ParseError, match=needle):
        parse_isys(text)


def test_error_carries_line_number():
    with pytest.raises(ParseError) as exc:
        parse_isys("tokens: a n\n\n# note\nfalse: n\nentail: q => a\n")
    assert "5" in str(exc.value)


@given(st.integers(0, 10 ** 6), st.integers(1, 5))
def test_isys_round_trip(seed, n):
    tokens, gens = oracles.random_generators(oracles.rng(seed), n)
    try:
        A = saturate(tokens, "n", gens)
    except Degenerate:
        return
    B = parse_isys(dump_isys(A))
    assert B.tokens == A.tokens
    assert set(B.pairs()) == set(A.pairs())


def test_dump_renames_structured_tokens():
    S = conjunctive_completion(minimal_system(["a", "n"], "n"))
    text = dump_isys(S)
    assert text.startswith("# t0 = ")
    B = parse_isys(text)
    assert len(B.elements()) == len(S.elements())


def test_dump_limit():
    A = minimal_system([f"t{i}" for i in range(13)] + ["n"], "n")
    with pytest.raises(TooLarge):
        dump_isys(A)


# .amap --------------------------------------------------------------------------

def test_parse_amap(tmp_path):
    write(tmp_path, "c.isys", CHAIN2)
    f = parse_amap("map: c.isys -> c.isys\npair: {} => a\n", str(tmp_path))
    assert f.apply(set()) == F("a")
    assert load_any(write(tmp_path, "m.amap", "map: c.isys -> c.isys\n")).apply({"a"}) == F()


def test_amap_top_and_sub_targets(tmp_path):
    write(tmp_path, "c.isys", CHAIN2)
    f = parse_amap("map: c.isys -> c.isys+top\npair: a => nabla\n", str(tmp_path))
    assert f.dst.nabla != "nabla" and f.out_mask(f.src.mask({"a"})) >> f.dst.tokens.index("nabla") & 1
    S = resolve_system("sub(c.isys)", str(tmp_path)).sys
    assert isinstance(S, SubSystem)
    g = parse_amap("map: c.isys -> sub(c.isys)\npair: {} => t0\n", str(tmp_path))
    assert g.dst is not None


@pytest.mark.parametrize("text,needle", [
    ("pair: a => a\n", "missing map"),
    ("map: c.isys\n", "SRC -> DST"),
    ("map: c.isys -> c.isys\nmap: c.isys -> c.isys\n", "duplicate"),
    ("map: c.isys -> c.isys\npair: z => a\n", "z"),
    ("map: c.isys -> nope.isys\n", "cannot read"),
    ("map: c.isys -> sub(c.isys)\npair: {} => q9\n", "Sub"),
])
def test_amap_errors(tmp_path, text, needle):
    write(tmp_path, "c.isys", CHAIN2)
    with pytest.raises(ParseError, match=needle):
        parse_amap(text, str(tmp_path))


def test_amap_round_trip(tmp_path):
    write(tmp_path, "f.isys", FLAT2)
    A = parse_isys(FLAT2)
    for gens in ([], [({"a"}, {"b"})], [(set(), {"a"})], list(A.pairs())):
        try:
            f = saturate_mapping(A, A, gens)
        except Exception:
            continue
        g = parse_amap(dump_amap(f, "f.isys", "f.isys"), str(tmp_path))
        assert g == f


# .wts ---------------------------------------------------------------------------

def test_parse_wts():
    w = parse_wts("weight: {} 0\nweight: {a} 1/2  # half\nweight: {a, b} 1/2\n")
    assert w == {F(): 0, F("a"): Q(1, 2), F("ab"): Q(1, 2)}


@pytest.mark.parametrize("text,needle", [
    ("weight: {a} 0.5\n", "p/q"),
    ("weight: a 1/2\n", "p/q"),
    ("weight: {a} 1/0\n", "denominator"),
    ("weight: {a} 1/2\nweight: {a} 1/2\n", "duplicate"),
    ("mass: {a} 1\n", "unknown directive"),
])
def test_wts_errors(text, needle):
    with pytest.raises(ParseError, match=needle):
        parse_wts(text)


def test_wts_round_trip():
    r = oracles.rng(4)
    for _ in range(20):
        els = oracles.subsets(["a", "b", "c"])
        w = oracles.random_weights(r, els, F())
        assert parse_wts(dump_wts(w)) == w


def test_element_literals():
    assert parse_element("{b, a}") == F("ab") == parse_element("{a b}")
    assert format_element(F("ba")) == "{a,b}"
    with pytest.raises(ParseError):
        parse_element("a,b")


def test_load_any_rejects_extension(tmp_path):
    with pytest.raises(ParseError):
        load_any(write(tmp_path, "x.txt", ""))
