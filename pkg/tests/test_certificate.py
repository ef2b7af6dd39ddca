import itertools
import json
import random

import pytest
from hypothesis import given, settings

from gtorsion.certificate import (CertificateError, ConjugateProduct, Evidence, Member,
                                  MembershipCertificate, TorsionCertificate, certificate_from_json,
                                  commutator_powers, concat_products, conjugate_product,
                                  power_product, power_pair_certificate, commutator_powers_certificate, lift_certificate, power_pair,
                                  realize, verify)
from gtorsion.constructors import genus1_cert, torus_commutator_cert
from gtorsion.derivation import DerivationLog
from gtorsion.oracle import finite_quotient_search
from gtorsion.oracle.quotients import evaluate, is_nonabelian
from gtorsion.presentation import Presentation, Slope, dehn_fill, torus_presentation
from gtorsion.word import Alphabet, Word, commutator

from conftest import AB, random_word, words

x, y = AB.gens()


def test_realize_examples():
    assert realize(ConjugateProduct(x, (AB.identity(),))) == x
    assert realize(ConjugateProduct(x, (y, AB.identity()))) == y * x * y.inverse() * x
    assert realize(ConjugateProduct(x, ())).is_identity()


@settings(max_examples=200)
@given(words(), words(), words(), words())
def test_conjugate_product_property(base, c1, c2, w):
    cp = ConjugateProduct(base, (c1, c2))
    assert conjugate_product(cp, w).realize() == w * cp.realize() * w.inverse()


@given(words(), words(), words())
def test_concat_property(base, c1, c2):
    a, b = ConjugateProduct(base, (c1,)), ConjugateProduct(base, (c2, c1))
    joined = concat_products(a, b)
    assert joined.k == 3
    assert joined.realize() == a.realize() * b.realize()


def test_concat_needs_same_base():
    with pytest.raises(CertificateError):
        concat_products(ConjugateProduct(x, ()), ConjugateProduct(y, ()))


def _all_words(alphabet, max_len):
    n = len(alphabet)
    letters = [s * g for g in range(1, n + 1) for s in (1, -1)]
    for k in range(max_len + 1):
        for combo in itertools.product(letters, repeat=k):
            yield Word.from_letters(alphabet, list(combo))


def test_power_product_exhaustive_small_words():
    ws = sorted(set(_all_words(AB, 2)), key=str)
    for g in ws:
        for h in ws:
            for n in range(1, 5):
                cp = power_product(g, h, n)
                assert cp.k == n
                assert cp.realize() == g ** n * h ** n


def test_power_product_needs_positive_power():
    with pytest.raises(CertificateError):
        power_product(x, y, 0)


# a toy group where g h is a product of two conjugates of x
TOY = Alphabet(("x", "g", "h", "y"))
tx, tg, th, ty = TOY.gens()
TOY_P = Presentation(TOY, ((tg * th).inverse() * ty * tx * ty.inverse() * tx,
                           commutator(tg, th).inverse() * ty * tx * ty.inverse()))


def _toy_member(target, relator):
    if relator == 0:
        m = Member.generator(TOY_P, tx).conj(ty) * Member.generator(TOY_P, tx)
    else:
        m = Member.generator(TOY_P, tx).conj(ty)
    return m.to(target, relator)


def test_toy_membership_certificate():
    cert = _toy_member(tg * th, 0).certificate()
    rep = verify(cert)
    assert rep.accepted and rep.kind == "membership" and rep.k == 2


@pytest.mark.parametrize("n", [1, 2, 3, 5])
def test_power_pair_certificate_toy(n):
    cert = _toy_member(tg * th, 0).certificate()
    out = power_pair_certificate(cert, tg, th, n)
    assert out.target == tg ** n * th ** n
    assert out.product.k == 2 * n
    assert verify(out).accepted


def test_power_pair_certificate_rejects_wrong_split():
    cert = _toy_member(tg * th, 0).certificate()
    with pytest.raises(CertificateError):
        power_pair_certificate(cert, th, tg, 2)


@pytest.mark.parametrize("n,m", [(1, 1), (2, 1), (1, 3), (2, 3)])
def test_commutator_powers_certificate_toy(n, m):
    cert = _toy_member(commutator(tg, th), 1).certificate()
    out = commutator_powers_certificate(cert, tg, th, n, m)
    assert out.target == commutator(tg ** n, th ** m)
    assert out.product.k == n * m
    assert verify(out).accepted


def test_power_pair_and_commutator_powers_reject_bad_input():
    mem = _toy_member(tg * th, 0)
    with pytest.raises(CertificateError):
        power_pair(mem, tg, th, 0)
    with pytest.raises(CertificateError):
        commutator_powers(mem, tg, th, 1, 1)


def test_empty_product_rejected():
    T = dehn_fill(torus_presentation(2, 3), Slope(5, 1))
    e = T.alphabet.identity()
    mc = MembershipCertificate(T, e, ConjugateProduct(T.meridian, ()), DerivationLog(e, ()))
    rep = verify(TorsionCertificate(mc, Evidence("abelian_order", 5)))
    assert rep.verdict == "rejected"
    assert rep.reasons == ["non-empty product required"]


def test_k_not_multiple_of_abelian_order_rejected():
    """Three conjugates of the meridian cannot multiply to 1 when H1 = Z/5."""
    good = genus1_cert(1, 1, "5/1", 1)
    assert verify(good).accepted
    mc = good.membership
    cp = ConjugateProduct(mc.product.base, mc.product.conjugators[:3])
    bad = MembershipCertificate(mc.presentation, mc.target, cp,
                                DerivationLog(cp.realize(), mc.proof.moves))
    rep = verify(TorsionCertificate(bad, good.evidence))
    assert not rep.accepted


def test_wrong_abelian_order_claim_rejected():
    good = genus1_cert(1, 1, "5/1", 1)
    rep = verify(TorsionCertificate(good.membership, Evidence("abelian_order", 10)))
    assert not rep.accepted and "claimed abelian order" in rep.reasons[-1]


def test_identity_base_rejected():
    T = dehn_fill(torus_presentation(2, 3), Slope(5, 1))
    e = T.alphabet.identity()
    mc = MembershipCertificate(T, e, ConjugateProduct(e, (e,)), DerivationLog(e, ()))
    assert verify(TorsionCertificate(mc, Evidence("assumed", note="x"))).reasons == [
        "base element is the identity"]


def test_proof_start_mismatch_rejected():
    good = genus1_cert(1, 1, "3/1", 1)
    mc = good.membership
    shifted = DerivationLog(mc.proof.start * mc.presentation.meridian, mc.proof.moves)
    bad = MembershipCertificate(mc.presentation, mc.target, mc.product, shifted)
    assert not verify(TorsionCertificate(bad, good.evidence)).accepted


def test_finite_quotient_witness():
    cert = torus_commutator_cert(2, 3, "1/1")
    P = cert.presentation
    base = cert.product.base
    qs = finite_quotient_search(P, degree=5)
    ident = tuple(range(5))
    moving = [im for im in qs.homomorphisms if evaluate(im, base) != ident]
    assert moving and all(is_nonabelian(im) for im in moving)
    ok = TorsionCertificate(cert.membership, Evidence("finite_quotient_witness", images=moving[0]))
    assert verify(ok).accepted
    fixing = TorsionCertificate(cert.membership,
                                Evidence("finite_quotient_witness", images=(ident, ident)))
    assert "sends the base to the identity" in verify(fixing).reasons[-1]
    broken = TorsionCertificate(cert.membership, Evidence(
        "finite_quotient_witness", images=((1, 0, 2, 3, 4), ident)))
    assert "does not satisfy" in verify(broken).reasons[-1]


def test_assumed_evidence_is_flagged():
    rep = verify(torus_commutator_cert(2, 3))
    assert rep.accepted
    assert any("assumed" in r for r in rep.reasons)


@pytest.mark.parametrize("make", [
    lambda: torus_commutator_cert(3, 4),
    lambda: genus1_cert(1, 1, "3/2"),
    lambda: genus1_cert(2, 3, "7/2"),
    lambda: _toy_member(tg * th, 0).certificate(),
])
def test_json_round_trip(make):
    cert = make()
    text = json.dumps(cert.to_json())
    again = certificate_from_json(json.loads(text))
    assert again.to_json() == cert.to_json()
    assert verify(again).accepted


def test_json_malformed():
    cert = genus1_cert(1, 1, "1/1").to_json()
    del cert["proof"]
    with pytest.raises(CertificateError):
        certificate_from_json(cert)


def test_lift_to_filling():
    cert = torus_commutator_cert(2, 3)
    Q = dehn_fill(cert.presentation, Slope(7, 1))
    lifted = lift_certificate(cert, Q)
    assert lifted.presentation == Q
    assert verify(lifted).accepted
    other = dehn_fill(torus_presentation(2, 5), Slope(1, 1))
    with pytest.raises(CertificateError):
        lift_certificate(cert, other)


def test_member_reopened_from_certificate():
    cert = genus1_cert(1, 1, "2/1")
    m = Member.from_certificate(cert)
    assert m.element.is_identity() and m.k == cert.k
    doubled = (m * m).certificate()
    assert verify(doubled).accepted and doubled.product.k == 2 * cert.k


def test_base_power_rejects_negative():
    with pytest.raises(CertificateError):
        Member.base_power(TOY_P, tx, -1)


def test_verify_never_raises_on_random_garbage():
    rng = random.Random(5)
    good = genus1_cert(1, 1, "3/1")
    P = good.presentation
    for _ in range(30):
        junk = random_word(rng, P.alphabet, 8)
        mc = MembershipCertificate(P, P.alphabet.identity(),
                                   ConjugateProduct(P.meridian, (junk,)),
                                   DerivationLog(junk * P.meridian * junk.inverse(), ()))
        assert verify(TorsionCertificate(mc, good.evidence)).verdict == "rejected"
