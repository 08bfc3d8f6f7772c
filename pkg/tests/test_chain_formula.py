from __future__ import annotations

import json

import pytest

from klbraid.chain_formula import (
    group_values,
    kl_coeff_via_chains,
    symbolic_expansion,
    term_text,
    term_value,
)
from klbraid.chains import enumerate_K
from klbraid.kl_recursion import kl_coeff


def test_base_value():
    assert kl_coeff_via_chains(2, 0) == 1


def test_small_spot_values():
    assert kl_coeff_via_chains(4, 1) == 1
    assert kl_coeff_via_chains(5, 1) == 5
    assert kl_coeff_via_chains(6, 2) == 15
    assert kl_coeff_via_chains(7, 2) == 175


@pytest.mark.parametrize("n", range(2, 11))
def test_agreement_with_recursion(n):
    for i in range((n - 2) // 2 + 1):
        assert kl_coeff_via_chains(n, i) == kl_coeff(n, i)


def test_rejects_out_of_range():
    with pytest.raises(ValueError):
        kl_coeff_via_chains(6, 3)
    with pytest.raises(ValueError):
        kl_coeff_via_chains(1, 0)


def test_term_values_sum_to_coefficient():
    total = sum(term_value(t).value for t in enumerate_K(8, 3))
    assert total == kl_coeff(8, 3)


def test_term_breakdown_audit():
    t = next(iter(enumerate_K(6, 2)))
    bd = term_value(t, audit=True)
    assert bd.triple == t
    assert len(bd.factors) == t.q
    prod = 1
    for j, fb in enumerate(bd.factors):
        # the composition target is alpha_j plus the number of blocks
        assert fb.total == t.A[j] + t.Lambda[j].length
        assert fb.compositions  # audit keeps the composition detail
        assert fb.inner_sum == sum(v for _, v in fb.compositions)
        prod *= fb.m_value * fb.inner_sum
    assert bd.value == prod


def test_group_values_six_two():
    # per-top-partition contributions; they sum to C(6,2) = 15
    got = group_values(6, 2)
    assert got == {
        (6,): 85,
        (5, 1): -60,
        (4, 2): -105,
        (3, 3): -60,
        (4, 1, 1): 15,
        (3, 2, 1): 60,
        (2, 2, 2): 15,
        (3, 1, 1, 1): 20,
        (2, 2, 1, 1): 45,
    }
    assert sum(got.values()) == 15


def test_group_values_seven_two():
    got = group_values(7, 2)
    assert got == {
        (7,): 175,
        (6, 1): -105,
        (5, 2): -231,
        (5, 1, 1): 21,
        (4, 3): -315,
        (4, 2, 1): 105,
        (3, 3, 1): 70,
        (3, 2, 2): 105,
        (4, 1, 1, 1): 35,
        (3, 2, 1, 1): 210,
        (2, 2, 2, 1): 105,
    }
    assert sum(got.values()) == 175


def test_symbolic_expansion_shape():
    exp = symbolic_expansion(6, 2)
    assert exp.n == 6 and exp.i == 2
    assert exp.total == 15
    assert [g.lambda1.blocks for g in exp.groups][0] == (6,)
    assert {g.lambda1.blocks: g.value for g in exp.groups} == group_values(6, 2)
    for g in exp.groups:
        assert g.value == sum(bd.value for bd, _ in g.terms)
        for bd, text in g.terms:
            assert term_text(bd) == text


def test_expansion_term_texts():
    exp = symbolic_expansion(4, 1)
    texts = [term_text(bd) for g in exp.groups for bd, _ in g.terms]
    assert texts == [
        "m(4)s(4,3)",
        "m(3+1)s(3,3)s(1,1)",
        "m(2+2)s(2,2)s(2,2)",
    ]


def test_expansion_merges_composition_sums():
    # a block admitting several bounded compositions renders as one
    # parenthesized sum rather than separate terms
    exp = symbolic_expansion(6, 2)
    by_shape = {g.lambda1.blocks: g for g in exp.groups}
    texts = [term_text(bd) for bd, _ in by_shape[(4, 2)].terms]
    assert texts == ["m(4+2)(s(4,3)s(2,2) + s(4,4)s(2,1))"]


def test_expansion_render_text():
    out = symbolic_expansion(4, 1).render_text()
    lines = out.splitlines()
    assert lines[0] == "C(4,1) grouped by the top partition:"
    assert lines[-1] == "total = 1"
    assert any("m(2+2)s(2,2)s(2,2) = 3" in line for line in lines)


def test_expansion_json_schema():
    obj = symbolic_expansion(4, 1).to_json_obj()
    blob = json.loads(json.dumps(obj))
    assert [g["lambda1"] for g in blob] == [[4], [3, 1], [2, 2]]
    assert sum(int(g["value"]) for g in blob) == 1
    first = blob[0]["terms"][0]
    assert first["lambda"] == [[4]]
    assert first["text"] == "m(4)s(4,3)"
    assert first["value"] == "-6"
