"""Catalog loading, parameter binding, entry verification, report records."""

import json
import textwrap
from fractions import Fraction

import pytest

from lieverify.errors import CatalogError, DuplicateId, UnsatisfiableConstraint
from lieverify.catalog import (
    CatalogEntry,
    entry_records,
    instantiate_params,
    load_catalog,
    mutate_expression,
    mutated_pairs,
    summarize,
    verify_entry,
    with_added_term,
)
from lieverify.parser import parse_expr


def write_catalog(tmp_path, body):
    p = tmp_path / "cat.lcat"
    p.write_text(textwrap.dedent(body))
    return str(p)


GOOD = """\
    count = 2

    [entry demo^1]
    algebra=A3.3
    gen1=u*d_u
    gen2=d_t + d_x
    gen3=x*u*d_u
    F=-u^(-1)*ux^2 + u*G(x - t)
    omega=x - t
    expected=pass

    [entry demo^2]
    # a parametrised family
    algebra=A3.7
    gen1=d_t
    gen2=d_x
    gen3=t*d_t + x*d_x
    F=u^(-1)*ux^2
    param q 0<|q|<1
    param m != 0, q+1
    domain t 0.4 0.9
    expected=discrepancy: demonstration only
"""


# --- loading ---------------------------------------------------------------------


def test_load_good_catalog(tmp_path):
    entries = load_catalog(write_catalog(tmp_path, GOOD))
    assert [e.id for e in entries] == ["demo^1", "demo^2"]
    e1, e2 = entries
    assert e1.algebra == "A3.3" and e1.expected == "pass"
    assert e2.expected == "discrepancy"
    assert e2.note == "demonstration only"
    assert e2.domains == (("t", 0.4, 0.9),)
    assert [p.name for p in e2.params] == ["q", "m"]
    assert e2.params[0].kind == "absband"
    assert e2.params[1].kind == "ne"
    assert ("q", Fraction(1)) in e2.params[1].excluded


def test_count_manifest_enforced(tmp_path):
    bad = GOOD.replace("count = 2", "count = 5")
    with pytest.raises(CatalogError):
        load_catalog(write_catalog(tmp_path, bad))


def test_duplicate_ids_rejected(tmp_path):
    bad = GOOD.replace("demo^2", "demo^1")
    with pytest.raises(DuplicateId):
        load_catalog(write_catalog(tmp_path, bad))


def test_missing_field_rejected(tmp_path):
    bad = GOOD.replace("F=-u^(-1)*ux^2 + u*G(x - t)\n", "")
    with pytest.raises(CatalogError):
        load_catalog(write_catalog(tmp_path, bad))


def test_unparseable_generator_rejected(tmp_path):
    from lieverify.errors import ParseError

    bad = GOOD.replace("gen2=d_t + d_x", "gen2=d_t +")
    with pytest.raises(ParseError):
        load_catalog(write_catalog(tmp_path, bad))


def test_missing_file_raises():
    with pytest.raises(CatalogError):
        load_catalog("/no/such/file.lcat")


# --- the bundled catalog ---------------------------------------------------------


def test_bundled_catalog_shape(entries):
    assert len(entries) == 103
    ids = [e.id for e in entries]
    assert len(set(ids)) == len(ids)
    families = {e.algebra for e in entries}
    assert families == {f"A3.{i}" for i in range(3, 10)}
    for e in entries:
        assert len(e.generators) == 3
        assert e.expected in ("pass", "discrepancy")
        e.parsed_generators()
        e.parsed_F()


def test_every_discrepancy_is_annotated(entries):
    for e in entries:
        if e.expected == "discrepancy":
            assert e.note, e.id


def test_corrected_siblings_reference_printed_entries(by_id):
    for eid in by_id:
        if eid.endswith("-corrected"):
            assert eid[: -len("-corrected")] in by_id


# --- parameter binding -------------------------------------------------------------


def test_paramless_entry_binds_once(by_id):
    assert instantiate_params(by_id["A3.3^4"], 42) == [{}]


def test_bindings_satisfy_constraints(entries):
    for e in entries:
        if not e.params:
            continue
        for binding in instantiate_params(e, 42, n=3):
            assert set(binding) == {p.name for p in e.params}
            for p in e.params:
                v = binding[p.name]
                if p.kind == "absband":
                    assert 0 < abs(v) < 1
                elif p.kind == "gt":
                    assert v > p.bound
                elif p.kind == "ge":
                    assert v >= p.bound
                elif p.kind == "ne":
                    for ex in p.excluded:
                        if isinstance(ex, tuple):
                            other, off = ex
                            assert v != binding[other] + off
                        else:
                            assert v != ex


def test_bindings_do_not_depend_on_seed(by_id):
    # binding values come from fixed admissible pools; the seed only drives
    # sampling, so repeat golden runs vary the seed rather than the binding
    e = by_id["A3.7^1"]
    assert instantiate_params(e, 42) == instantiate_params(e, 43)


def test_distinct_bindings_per_entry(entries):
    for e in entries:
        if not e.params:
            continue
        bindings = instantiate_params(e, 42, n=3)
        assert len({tuple(sorted(b.items())) for b in bindings}) == 3


def test_unsatisfiable_constraint_detected(tmp_path):
    body = GOOD.replace(
        "param q 0<|q|<1",
        "param q != 3, 4, 5, -1, 1/2, -2, 5/2, 7/2, -3, 2/3",
    )
    path = write_catalog(tmp_path, body)
    entries = load_catalog(path)
    with pytest.raises(UnsatisfiableConstraint):
        instantiate_params(entries[1], 42)


# --- verification reports -----------------------------------------------------------


def test_verify_entry_golden(by_id):
    rep = verify_entry(by_id["A3.3^4"], seed=42)
    assert rep.passed and rep.status == "pass"
    (b,) = rep.bindings
    assert b.matched == "A3.3" and b.algebra_ok and not b.semisimple
    for pair in b.pairs:
        assert pair.ok and pair.agree


def test_verify_entry_known_discrepancy(by_id):
    rep = verify_entry(by_id["A3.5^5"], seed=42)
    assert not rep.passed
    assert rep.status == "known-discrepancy"


def test_verify_entry_detects_algebra_mismatch(tmp_path):
    body = GOOD.replace("algebra=A3.3", "algebra=A3.5")
    entries = load_catalog(write_catalog(tmp_path, body))
    rep = verify_entry(entries[0], seed=42)
    assert not rep.passed
    assert rep.bindings[0].matched == "A3.3"
    assert not rep.bindings[0].algebra_ok


def test_entry_records_shape(by_id):
    rep = verify_entry(by_id["A3.3^4"], seed=42)
    recs = entry_records(rep)
    checks = [r["check"] for r in recs]
    assert checks[0] == "b0/params"
    assert checks[-1] == "entry"
    assert "b0/algebra" in checks
    for g in (1, 2, 3):
        assert f"b0/eq3/g{g}" in checks
        assert f"b0/prolongation/g{g}" in checks
        assert f"b0/oracle-agreement/g{g}" in checks
    for r in recs:
        assert r["id"] == "A3.3^4"
        assert r["seed"] == 42
        json.dumps(r)  # every record is json-serializable


def test_summarize_counts(by_id):
    reports = [verify_entry(by_id[i], seed=42) for i in ("A3.3^4", "A3.5^5")]
    s = summarize(reports)
    assert s["pass"] == 1 and s["known-discrepancy"] == 1
    assert s["unexpected-fail"] == 0 and s["unexpected-pass"] == 0


# --- mutation helpers ----------------------------------------------------------------


def test_mutate_expression_kinds():
    import random

    kinds = set()
    e = parse_expr("2*x + u^3 - t")
    for i in range(60):
        out = mutate_expression(e, random.Random(i))
        assert out is not None
        kinds.add(out[1])
    assert kinds == {"sign-flip", "exponent-bump", "drop-term"}


def test_mutate_expression_no_sites():
    import random

    assert mutate_expression(parse_expr("x"), random.Random(0)) is None


def test_mutated_pairs_deterministic(entries):
    a = mutated_pairs(entries, 10, seed=1)
    b = mutated_pairs(entries, 10, seed=1)
    assert len(a) == 10
    assert [(i, k) for i, _, _, k in a] == [(i, k) for i, _, _, k in b]


def test_with_added_term(by_id):
    e = by_id["A3.3^4"]
    m = with_added_term(e, "t*x")
    assert m.id == "A3.3^4+t*x"
    assert m.expected == "discrepancy"
    assert m.F != e.F
    rep = verify_entry(m, seed=42)
    assert not rep.passed
