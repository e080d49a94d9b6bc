from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from strategies import small_class
from wittsig.decide import decide_batch, is_trivial
from wittsig.errors import SingularFormError
from wittsig.field import Embedding, zeta
from wittsig.forms import (
    HermitianForm,
    WittElement,
    direct_sum,
    extend_constant,
    make_canonical,
    make_metabolic,
    scale,
)
from wittsig.sigfunc import evaluate_class_at

CANONICAL_I = make_canonical(0, [((4, 1), 1)])


def W(form):
    return WittElement.from_form(form)


@pytest.mark.parametrize("m", [1, 3, 4, 5, 8, 12])
def test_metabolic_forms_are_trivial(m):
    for seed in range(2):
        d = is_trivial(W(make_metabolic(1 + seed, seed=seed, m=m)))
        assert d.trivial and d.witnesses == []
        assert all(s.is_zero() for s in d.step_functions.values())


def test_canonical_block_is_nontrivial():
    d = is_trivial(CANONICAL_I)
    assert not d.trivial
    assert [w.embedding for w in d.witnesses] == [Embedding(4, 1), Embedding(4, 1)]
    assert sorted(w.value for w in d.witnesses) == [-1, 1]


def test_hyperbolic_constant_form_is_trivial():
    w = W(extend_constant(HermitianForm.diagonal(1, [1, -1])))
    assert is_trivial(w).trivial


def test_constant_form_with_two_embeddings_has_opposite_witnesses():
    w = W(HermitianForm.diagonal(5, [zeta(5) + zeta(5, 4)]))
    d = is_trivial(w)
    assert not d.trivial
    assert {(wit.embedding.exponent, wit.value) for wit in d.witnesses} == {(1, 1), (2, -1)}


def test_decide_batch_examples():
    assert decide_batch([]) == []
    out = decide_batch([W(make_metabolic(1, seed=0)), CANONICAL_I])
    assert [d.trivial for d in out] == [True, False]
    one = W(HermitianForm.diagonal(1, [1]))
    (d,) = decide_batch([direct_sum(one, scale(one, -1))])
    assert d.trivial


def test_decide_batch_collects_errors():
    singular = WittElement(1, 1, [(HermitianForm(1, [[0, 0], [0, 1]]), Fraction(1))])
    out = decide_batch([singular, CANONICAL_I])
    assert isinstance(out[0].error, SingularFormError) and not out[0].trivial
    assert "error" in out[0].to_json()
    assert out[1].error is None and not out[1].trivial


def test_decision_json_shape():
    doc = is_trivial(CANONICAL_I).to_json()
    assert doc["trivial"] is False
    assert doc["witnesses"][0] == {"embedding_k": 1, "sample": {"N": 8, "j": 1}, "value": "-1"}
    assert set(doc["step_functions"]) == {"1"}
    assert "step_functions" not in is_trivial(CANONICAL_I).to_json(include_step_functions=False)


# --- properties -------------------------------------------------------------


@given(small_class(), st.integers(0, 1000))
def test_witt_stability(w, seed):
    met = W(make_metabolic(1, seed=seed, m=w.m))
    assert is_trivial(direct_sum(w, met)).trivial == is_trivial(w).trivial


@given(small_class(), st.sampled_from([Fraction(1, 2), 2, -3]))
def test_scale_invariance(w, r):
    assert is_trivial(scale(w, r)).trivial == is_trivial(w).trivial


@given(small_class())
def test_class_minus_itself_is_trivial(w):
    assert is_trivial(direct_sum(w, scale(w, -1))).trivial


@given(small_class())
def test_witnesses_revalidate(w):
    d = is_trivial(w)
    for wit in d.witnesses:
        assert evaluate_class_at(w, wit.embedding, (wit.sample.N, wit.sample.j)) == wit.value != 0
