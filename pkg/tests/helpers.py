"""Shared fixtures: showcase configurations, random generators, invariants."""

from __future__ import annotations

from fractions import Fraction

import schottkyfold as sf
from schottkyfold.hull import transported_vertex_disc

# Showcase configurations used across the suite (5-adic and 7-adic, p = 2).
SIX_POINT_5ADIC = [7, 12, 0, 5, 1, "inf"]
EIGHT_POINT_7ADIC = [Fraction(1336, 3), -355, -110, 86, 0, 7, 1, "inf"]
EIGHT_POINT_7ADIC_MIN = [-7, 42, 112, -84, 0, 7, 1, "inf"]

# Dyadic (p = ell = 2) smoke configurations; separation radius 1.
DYADIC_FOUR = [0, 32, 1, "inf"]
DYADIC_SIX_FOLDING = [5, 133, 29, 157, 1, "inf"]
DYADIC_SIX_PLAIN = [0, 32, 1, 17, 3, "inf"]


def ctx5():
    return sf.field_context(2, 5)


def ctx7():
    return sf.field_context(2, 7)


def ctx2():
    return sf.field_context(2, 2)


def config(ctx, values):
    return sf.configuration(ctx, values)


def pair_set(ctx, pcfg):
    return set(pcfg.pair_sets())


def pairs_as_sets(values_pairs):
    return {frozenset(str(Fraction(x)) if x != "inf" else "inf" for x in pr) for pr in values_pairs}


def multiset(ctx, cfg):
    return sorted(cfg.multiset_key())


def values_multiset(values):
    return sorted(("inf",) if v == "inf" else (str(Fraction(v)),) for v in values)


# --------------------------------------------------------------------------
# random generation of properly paired configurations
# --------------------------------------------------------------------------


def random_paired_points(rng, ctx, g):
    """Random 2g+2 points (with infinity) clustered in rho-separated pairs.

    Builds a random laminar arrangement: pairs sit as cherries in their own
    residue branches, the finite partner of infinity lands either alone or
    inside a branch (creating an odd cluster), and occasionally one pair is
    split into two strays hosted next to two other cherries (creating two
    odd clusters).  Depth gaps stay above twice the separation radius.
    Returns (points, expected pairing as a set of frozensets of strings).
    """
    ell = ctx.ell
    gap = int(2 * ctx.rho) + 1
    out_pairs: dict[int, list] = {}
    anchor_holder: list = []

    blocks = [("cherry", i) for i in range(g)]
    if g >= 3 and rng.random() < 0.4:
        si = blocks.pop()[1]
        ha = blocks.pop()[1]
        hb = blocks.pop()[1]
        blocks.append(("splitblock", si, ha, hb))
    blocks.append(("anchor",))
    rng.shuffle(blocks)

    def fresh_depth(level):
        return level + gap + rng.randint(0, 2)

    def place(group, base, level):
        if len(group) == 1:
            blk = group[0]
            if blk[0] == "cherry":
                d = fresh_depth(level)
                u = rng.randrange(1, ell) if ell > 2 else 1
                out_pairs[blk[1]] = [base, base + u * ell**d]
            elif blk[0] == "anchor":
                anchor_holder.append(base)
            else:
                _, si, ha, hb = blk
                r1, r2 = rng.sample(range(ell), 2)
                strays = []
                for host, r in ((ha, r1), (hb, r2)):
                    b1 = base + r * ell**level
                    s1, s2 = rng.sample(range(ell), 2)
                    cb = b1 + s1 * ell ** (level + 1)
                    d = fresh_depth(level + 2)
                    u = rng.randrange(1, ell) if ell > 2 else 1
                    out_pairs[host] = [cb, cb + u * ell**d]
                    strays.append(b1 + s2 * ell ** (level + 1))
                out_pairs[si] = strays
            return
        k = rng.randint(2, min(ell, len(group)))
        buckets = [[] for _ in range(k)]
        for idx, blk in enumerate(group):
            target = idx if idx < k else rng.randrange(k)
            buckets[target].append(blk)
        for bucket, r in zip(buckets, rng.sample(range(ell), k)):
            place(bucket, base + r * ell**level, level + 1)

    place(blocks, 0, 0)
    anchor = anchor_holder[0]

    points = []
    expected = set()
    for i in range(g):
        a, b = out_pairs[i]
        points.extend([a, b])
        expected.add(frozenset({str(a), str(b)}))
    points.extend([anchor, "inf"])
    expected.add(frozenset({str(anchor), "inf"}))
    rng.shuffle(points)
    return points, expected


def sample_paired(rng, ctx, g):
    """A random properly paired configuration with its canonical pairing."""
    for _ in range(100):
        points, expected = random_paired_points(rng, ctx, g)
        cfg = sf.configuration(ctx, points)
        try:
            pcfg = sf.pair_up(cfg)
        except sf.PairingError:
            continue
        if set(pcfg.pair_sets()) == expected:
            return cfg, pcfg
    raise AssertionError("random generator failed to produce a paired set")


def kadziela_points(rng, ctx, g):
    """Points satisfying the descending-valuation chain with disjoint pair
    discs: a_0 = 0, a_g = 1, b_g = infinity, strictly dropping pair levels."""
    ell = ctx.ell
    t = int(2 * ctx.rho) + 1
    levels = []
    lvl = rng.randint(1, 2)
    for _ in range(g - 1):
        levels.append(lvl)
        lvl += rng.randint(1, 2)
    levels.reverse()  # m_1 > m_2 > ... > m_{g-1} >= 1
    points = [0]
    # deep enough that the axis through 0 clears every other axis by > 2 rho
    m0 = (levels[0] if levels else 0) + t + rng.randint(0, 1)
    u = rng.randrange(1, ell) if ell > 2 else 1
    points.append(u * ell**m0)  # b_0 with v(b_0) > v(a_1)
    for m in levels:
        u = rng.randrange(1, ell) if ell > 2 else 1
        a = u * ell**m
        w = rng.randrange(1, ell) if ell > 2 else 1
        points.extend([a, a + w * ell ** (m + t + rng.randint(0, 1))])
    points.extend([1, "inf"])
    return points


# --------------------------------------------------------------------------
# invariants of a performed fold
# --------------------------------------------------------------------------


def check_fold_step(step):
    """Conjugation and distance-monotonicity invariants of one fold."""
    assert sf.verify_fold_conjugation(step)

    ctx = step.before.ctx
    tree = sf.reduced_convex_hull(step.before)
    dt = sf.tilde_d_j_of_i(step.before, step.i, step.j)
    anchor = next(
        pt.value for pt in step.before.pairs[step.i] if not pt.is_infinity
    )
    values = step.before.configuration().finite_values()

    def in_branch(disc):
        if disc.radius <= dt.radius:
            return False
        sep = ctx.valuation(ctx.sub(disc.center, anchor))
        return sep > sf.Val.of(dt.radius)

    distinguished = tree.distinguished()
    before_discs = [v.disc for v in distinguished]
    after_discs = [
        transported_vertex_disc(ctx, values, v.cluster, step.map)
        if in_branch(v.disc)
        else v.disc
        for v in distinguished
    ]
    strict = 0
    for i in range(len(before_discs)):
        for j in range(i + 1, len(before_discs)):
            d0 = sf.delta(before_discs[i], before_discs[j])
            d1 = sf.delta(after_discs[i], after_discs[j])
            assert d1 <= d0, "a fold increased a distinguished distance"
            if d1 < d0:
                strict += 1
    assert strict >= 1, "a fold must strictly decrease some distance"


def check_verdict_folds(verdict):
    for step in verdict.trace:
        check_fold_step(step)
