"""Moebius maps: action, order-p construction, classification."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

import schottkyfold as sf
from helpers import ctx2, ctx5, ctx7


def fin(ctx, x):
    return sf.finite(ctx, x)


def test_apply_examples():
    ctx = ctx5()
    flip = sf.mobius(ctx, -1, 2, 0, 1)  # z -> 2 - z
    assert sf.apply(flip, fin(ctx, 7)) == fin(ctx, -5)
    assert sf.apply(sf.identity(ctx), fin(ctx, 42)) == fin(ctx, 42)
    assert sf.apply(sf.identity(ctx), sf.INFINITY).is_infinity

    # the first fold map of the 7-adic showcase sends 1336/3 to 9
    c7 = ctx7()
    m = sf.order_p_fixing(c7, fin(c7, -110), fin(c7, 86), 1)
    assert sf.apply(m, fin(c7, Fraction(1336, 3))) == fin(c7, 9)
    assert sf.apply(m, fin(c7, -355)) == fin(c7, -40)


def test_apply_is_total():
    ctx = ctx5()
    m = sf.mobius(ctx, 1, 0, 1, -3)  # pole at 3
    assert sf.apply(m, fin(ctx, 3)).is_infinity
    assert sf.apply(m, sf.INFINITY) == fin(ctx, 1)


def test_order_two_generator_matrices():
    ctx = ctx5()
    s0 = sf.order_p_fixing(ctx, fin(ctx, 7), fin(ctx, 12), 1)
    s1 = sf.order_p_fixing(ctx, fin(ctx, 0), fin(ctx, 5), 1)
    s2 = sf.order_p_fixing(ctx, fin(ctx, 1), sf.INFINITY, 1)
    assert sf.proj_eq(s0, sf.mobius(ctx, 19, -168, 2, -19))
    assert sf.proj_eq(s1, sf.mobius(ctx, 5, 0, 2, -5))
    # the involution fixing 1 and infinity is z -> 2 - z
    assert sf.proj_eq(s2, sf.mobius(ctx, -1, 2, 0, 1))


def test_order_p_fixing_fixes_and_has_order_p():
    rng = random.Random(11)
    for ctx in (ctx5(), ctx2(), sf.field_context(3, 7)):
        for _ in range(20):
            a = rng.randint(-40, 40)
            b = rng.randint(-40, 40)
            if a == b:
                continue
            pa, pb = fin(ctx, a), fin(ctx, b)
            if rng.random() < 0.3:
                pb = sf.INFINITY
            for n in range(1, ctx.p):
                m = sf.order_p_fixing(ctx, pa, pb, n)
                assert sf.apply(m, pa) == pa
                assert sf.apply(m, pb) == pb
                power = m
                for _ in range(ctx.p - 1):
                    power = sf.compose(power, m)
                assert sf.proj_eq(power, sf.identity(ctx))
                # n-th power of the base map
                base = sf.order_p_fixing(ctx, pa, pb, 1)
                acc = base
                for _ in range(n - 1):
                    acc = sf.compose(acc, base)
                assert sf.proj_eq(acc, m)


def test_order_p_fixing_orientation_is_uniform():
    # in the coordinate sending (a, b) to (0, infinity) the map multiplies
    # by zeta^n, for finite b and for b = infinity alike; the folding test
    # relies on this orientation
    for p, ell in ((2, 5), (3, 7), (3, 3), (5, 11)):
        ctx = sf.field_context(p, ell)
        a, b = fin(ctx, 4), fin(ctx, -9)
        probe = fin(ctx, 17)
        for n in range(1, p):
            zn = ctx.zeta_power(n)
            for bb in (b, sf.INFINITY):
                m = sf.order_p_fixing(ctx, a, bb, n)
                img = sf.apply(m, probe)

                def chart(pt):
                    num = ctx.sub(pt.value, a.value)
                    if bb.is_infinity:
                        return num
                    return ctx.div(num, ctx.sub(pt.value, bb.value))

                assert ctx.eq(chart(img), ctx.mul(zn, chart(probe)))


def test_order_p_fixing_errors():
    ctx = ctx5()
    with pytest.raises(sf.DegeneratePairError):
        sf.order_p_fixing(ctx, fin(ctx, 3), fin(ctx, 3), 1)
    with pytest.raises(ValueError):
        sf.order_p_fixing(ctx, sf.INFINITY, fin(ctx, 3), 1)
    with pytest.raises(ValueError):
        sf.order_p_fixing(ctx, fin(ctx, 1), fin(ctx, 3), 2)  # 2 = p


def test_classify_examples():
    ctx = ctx5()
    assert sf.classify(ctx, sf.mobius(ctx, 5, 0, 0, 1)).kind is sf.MapKind.LOXODROMIC
    assert sf.classify(ctx, sf.mobius(ctx, 5, 0, 0, 1)).translation_length == 1
    assert sf.classify(ctx, sf.mobius(ctx, 1, 1, 0, 1)).kind is sf.MapKind.PARABOLIC
    assert sf.classify(ctx, sf.identity(ctx)).kind is sf.MapKind.IDENTITY
    # the showcase product with characteristic data (350, 625) is elliptic
    s0 = sf.order_p_fixing(ctx, fin(ctx, 7), fin(ctx, 12), 1)
    s1 = sf.order_p_fixing(ctx, fin(ctx, 0), fin(ctx, 5), 1)
    s2 = sf.order_p_fixing(ctx, fin(ctx, 1), sf.INFINITY, 1)
    w = sf.compose(sf.compose(sf.compose(s1, s2), s0), s2)
    assert sf.classify(ctx, w).kind is sf.MapKind.ELLIPTIC
    tr, det = w.trace(), w.det()
    assert tr * tr * 625 == 350 * 350 * det  # proportional to (350, 625)


def test_compose_inverse_identity():
    ctx = ctx7()
    rng = random.Random(5)
    for _ in range(25):
        entries = [rng.randint(-9, 9) for _ in range(4)]
        if entries[0] * entries[3] == entries[1] * entries[2]:
            continue
        m = sf.mobius(ctx, *entries)
        assert sf.proj_eq(sf.compose(m, sf.inverse(m)), sf.identity(ctx))


def test_classify_is_projective_and_conjugation_invariant():
    ctx = ctx5()
    rng = random.Random(17)
    for _ in range(40):
        entries = [Fraction(rng.randint(-20, 20), rng.choice([1, 1, 5])) for _ in range(4)]
        if entries[0] * entries[3] == entries[1] * entries[2]:
            continue
        m = sf.mobius(ctx, *entries)
        scaled = sf.mobius(ctx, *(x * Fraction(15, 4) for x in entries))
        assert sf.classify(ctx, m) == sf.classify(ctx, scaled)
        ge = [rng.randint(-9, 9) for _ in range(4)]
        if ge[0] * ge[3] == ge[1] * ge[2]:
            continue
        gmat = sf.mobius(ctx, *ge)
        conj = sf.compose(sf.compose(gmat, m), sf.inverse(gmat))
        assert sf.classify(ctx, m) == sf.classify(ctx, conj)


def test_moebius_action_preserves_disc_metric():
    ctx = ctx5()
    rng = random.Random(23)
    done = 0
    while done < 60:
        entries = [rng.randint(-12, 12) for _ in range(4)]
        if entries[0] * entries[3] == entries[1] * entries[2]:
            continue
        m = sf.mobius(ctx, *entries)
        d1 = sf.disc(ctx, rng.randint(-50, 50), rng.randint(-3, 4))
        d2 = sf.disc(ctx, rng.randint(-50, 50), rng.randint(-3, 4))
        try:
            img1, img2 = sf.disc_image(m, d1), sf.disc_image(m, d2)
        except ValueError:
            continue  # pole inside a disc: image is a disc complement
        assert sf.delta(img1, img2) == sf.delta(d1, d2)
        done += 1


def test_projective_equality_is_cross_multiplicative():
    ctx = ctx5()
    m = sf.mobius(ctx, 2, 4, -6, 8)
    assert sf.proj_eq(m, sf.mobius(ctx, 1, 2, -3, 4))
    assert sf.proj_eq(m, sf.mobius(ctx, Fraction(-1, 2), -1, Fraction(3, 2), -2))
    assert not sf.proj_eq(m, sf.mobius(ctx, 1, 2, -3, 5))
    assert not sf.proj_eq(
        sf.mobius(ctx, -1, 2, 0, 1), sf.mobius(ctx, -1, 2, 0, -1)
    )
