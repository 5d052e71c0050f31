"""Structure maps and axiom checkers, including the failures that are
part of the contract (their residuals are pinned exactly)."""

from __future__ import annotations

import random

import pytest

from ccr_hopf.algebra import (
    Expr,
    Presentation,
    am,
    gen_I,
    gen_K,
    gen_Kinv,
    normal_form,
    phi,
    pi,
    random_expr,
    unit,
)
from ccr_hopf.hopf import (
    AxiomReport,
    HopfError,
    HopfSpec,
    TensorExpr,
    antipode,
    antipode_tensor,
    check_antipode,
    check_coassociativity,
    check_counit,
    check_multiplicativity,
    check_respects_relations,
    cocommutativity_probe,
    coproduct,
    counit,
    sorted_basis_words,
    swap_slots,
    tensor_normal_form,
    tensor_of,
)
from ccr_hopf.scalars import IMAG, KAPPA, ONE, S_PARAM, Scalar, ZERO

CL = HopfSpec.classical()
DF = HopfSpec.deformed()
P_UND = Presentation()
P_FREE = Presentation(idempotent_identity=False)
P_DEF = Presentation(variant="deformed-strict")
P_COL = Presentation(variant="deformed-collapsed")


def test_coproduct_generators():
    got = coproduct(phi(0), CL, P_UND)
    assert got == tensor_of(phi(0), unit()) + tensor_of(unit(), phi(0))
    got = coproduct(phi(0), DF, P_DEF)
    assert got == tensor_of(phi(0), gen_K()) + tensor_of(gen_Kinv(), phi(0))
    assert coproduct(unit(), CL, P_UND) == TensorExpr.unit(2)
    assert coproduct(gen_K(), DF, P_DEF) == tensor_of(gen_K(), gen_K())


def test_coproduct_product_word():
    e = phi(0) * pi(0)
    got = coproduct(e, DF, P_DEF)
    want = tensor_normal_form(
        coproduct(phi(0), DF, P_DEF) * coproduct(pi(0), DF, P_DEF), P_DEF
    )
    assert got == want


def test_counit_values():
    assert counit(phi(0), CL).is_zero()
    assert counit(unit(), CL).is_one()
    assert counit(phi(0) * pi(1) + Scalar.rational(3) * unit(), CL) == Scalar.rational(3)
    assert counit(gen_K(), DF).is_one()
    assert counit(gen_K() * phi(0), DF).is_zero()


def test_antipode_values():
    assert antipode(phi(0), CL, P_UND) == -phi(0)
    got = antipode(phi(0) * pi(1), CL, P_UND)
    assert got == normal_form(pi(1) * phi(0), P_UND)
    assert antipode(gen_K(), DF, P_DEF) == gen_Kinv()
    assert antipode(gen_Kinv(), DF, P_DEF) == gen_K()


def test_uncovered_generator_errors():
    with pytest.raises(HopfError):
        coproduct(gen_K(), CL, P_DEF)
    with pytest.raises(HopfError):
        coproduct(am(0), DF, P_DEF)
    with pytest.raises(HopfError):
        coproduct(phi(0), DF, P_UND)
    with pytest.raises(HopfError):
        check_coassociativity(CL, Presentation(basis="ladder"))


def test_respects_relations_classical_without_idempotent():
    rep = check_respects_relations(CL, P_FREE)
    assert rep.passed


def test_respects_relations_idempotent_residuals():
    # primitive Delta(I) against I*I = I: residuals 2 I(x)I and 2 I, exactly
    rep = check_respects_relations(CL, P_COL)
    assert not rep.passed
    by_witness = {f.witness: f.residual for f in rep.failures}
    assert set(by_witness) == {"Delta on I*I = I", "S on I*I = I"}
    two = Scalar.rational(2)
    assert by_witness["Delta on I*I = I"] == tensor_of(gen_I(), gen_I()) * two
    assert by_witness["S on I*I = I"] == two * gen_I()
    assert rep.notes


def test_respects_relations_deformed_strict_residual():
    # the kappa*I form of the commutation relation is not Delta-stable;
    # the residual telescopes to -i*kappa*(I (x) (K^2-1) + (Kinv^2-1) (x) I)
    rep = check_respects_relations(DF, P_DEF)
    fails = {f.witness: f.residual for f in rep.failures}
    key = "Delta on pi(0)*phi(0) commutation"
    assert key in fails
    mik = -IMAG * KAPPA
    want = (
        tensor_of(gen_I(), gen_K() * gen_K()) * mik
        + tensor_of(gen_Kinv() * gen_Kinv(), gen_I()) * mik
        + tensor_of(gen_I(), unit()) * (IMAG * KAPPA)
        + tensor_of(unit(), gen_I()) * (IMAG * KAPPA)
    )
    assert fails[key] == want
    # counit and antipode respect the commutation relations; with the
    # idempotent relation excluded, Delta is the sole offender
    p = Presentation(variant="deformed-strict", idempotent_identity=False)
    rep = check_respects_relations(DF, p)
    assert all(f.witness.startswith("Delta") for f in rep.failures)
    assert any(f.witness == key for f in rep.failures)


def test_coassociativity_classical_and_strict():
    assert check_coassociativity(CL, P_UND, degree=3).passed
    assert check_coassociativity(CL, P_DEF, degree=3).passed
    assert check_coassociativity(DF, P_DEF, degree=2).passed


def test_coassociativity_collapsed_residual():
    rep = check_coassociativity(DF, P_COL, degree=1)
    assert not rep.passed
    fails = {f.witness: f.residual for f in rep.failures}
    sm1 = S_PARAM - ONE
    sim1 = S_PARAM ** -1 - ONE
    want = tensor_of(phi(0), gen_I(), gen_I()) * (sm1 * sm1) + tensor_of(
        gen_I(), gen_I(), phi(0)
    ) * (-(sim1 * sim1))
    assert fails["phi(0)"] == want
    # the deformation switched off restores coassociativity
    p1 = Presentation(variant="deformed-collapsed", q=1.0, c=3.0)
    assert check_coassociativity(DF, p1, degree=2).passed


def test_counit_axiom():
    assert check_counit(CL, P_UND, degree=3).passed
    assert check_counit(DF, P_DEF, degree=2).passed
    assert check_counit(DF, P_COL, degree=2).passed


def test_antipode_axiom():
    assert check_antipode(CL, P_UND, degree=3).passed
    assert check_antipode(DF, P_DEF, degree=2).passed


def test_antipode_collapsed_residual():
    # collapsing K breaks the antipode identity off the q=1 point
    rep = check_antipode(DF, P_COL, degree=1)
    fails = {f.witness: f.residual for f in rep.failures}
    key = "m(S x id)Delta on phi(0)"
    assert key in fails
    coeff = Scalar.rational(2) - S_PARAM - S_PARAM ** -1
    assert fails[key] == coeff * normal_form(gen_I() * phi(0), P_COL)
    p1 = Presentation(variant="deformed-collapsed", q=1.0, c=2.0)
    assert check_antipode(DF, p1, degree=2).passed


def test_cocommutativity():
    assert cocommutativity_probe(CL, P_UND, degree=2).passed
    rep = cocommutativity_probe(DF, P_DEF, degree=2)
    assert not rep.passed
    fails = {f.witness: f.residual for f in rep.failures}
    want = (
        tensor_of(phi(0), gen_K() - gen_Kinv())
        + tensor_of(gen_Kinv() - gen_K(), phi(0))
    )
    assert fails["phi(0)"] == want
    # s = 1 through the collapsed variant restores cocommutativity
    p1 = Presentation(variant="deformed-collapsed", q=1.0, c=2.0)
    assert cocommutativity_probe(DF, p1, degree=2).passed
    p2 = Presentation(variant="deformed-collapsed", q=4.0, c=1.0)
    assert not cocommutativity_probe(DF, p2, degree=1).passed


def test_multiplicativity():
    assert check_multiplicativity(CL, P_UND, trials=15, seed=5).passed
    assert check_multiplicativity(DF, P_DEF, trials=15, seed=6).passed
    assert check_multiplicativity(DF, P_COL, trials=10, seed=7).passed


def test_antipode_coalgebra_compatibility():
    # eps(S(w)) = eps(w) and Delta(S(w)) = (S x S)(tau(Delta(w)))
    for w in sorted_basis_words(P_FREE, 3, [(0, 0), (3, 0), (3, 1), (4, 0), (4, 1)]):
        e = Expr.from_word(w)
        assert counit(antipode(e, CL, P_FREE), CL) == counit(e, CL)
        lhs = coproduct(antipode(e, CL, P_FREE), CL, P_FREE)
        rhs = antipode_tensor(swap_slots(coproduct(e, CL, P_FREE)), CL, P_FREE)
        assert tensor_normal_form(lhs - rhs, P_FREE).is_zero()


def test_slot_reduction_soundness():
    rng = random.Random(2741)
    for _ in range(30):
        x = random_expr(rng, P_DEF, 4, 2)
        t = tensor_normal_form(tensor_of(x, unit()), P_DEF)
        assert t.is_zero() == normal_form(x, P_DEF).is_zero()
    # a nonzero looking combination that reduces to zero
    x = pi(0) * phi(0) - phi(0) * pi(0) + IMAG * KAPPA * gen_I()
    assert tensor_normal_form(tensor_of(x, unit()), P_DEF).is_zero()


def test_residuals_are_normal_forms():
    rep = cocommutativity_probe(DF, P_DEF, degree=2)
    for f in rep.failures:
        t = f.residual
        assert tensor_normal_form(t, P_DEF) == t


def test_tensor_expr_basics():
    with pytest.raises(HopfError):
        TensorExpr(4)
    a = tensor_of(phi(0), pi(0))
    b = tensor_of(unit(), unit())
    assert (a - a).is_zero()
    assert a * b == a
    assert swap_slots(swap_slots(a)) == a
    with pytest.raises(HopfError):
        a + tensor_of(phi(0), phi(0), phi(0))


def test_sorted_basis_words_strict():
    letters = [(0, 0), (1, 0), (2, 0), (3, 0), (4, 0)]
    words = sorted_basis_words(P_DEF, 2, letters)
    texts = {__import__("ccr_hopf.algebra", fromlist=["word_text"]).word_text(w) for w in words}
    assert "one" in texts
    assert "K^2" in texts
    assert "K*Kinv" not in texts  # contracts to the unit
    assert "I^2" not in texts  # idempotent
    assert "phi(0)*pi(0)" in texts
    assert "pi(0)*phi(0)" not in texts  # not sorted
