"""Cluster data of point configurations and the canonical pairing test.

A *cluster* of a finite configuration is the intersection of its finite
points with an ultrametric disc; its *depth* is the minimal pairwise
valuation of differences (+infinity for singletons).  Clusters form a
laminar family, computed here as a recursive partition.

``pair_up`` decides whether a configuration is *clustered in rho-separated
pairs*: two points are equivalent when they lie in exactly the same
even-cardinality clusters (the point at infinity lies in none); the
configuration pairs up when every class has size two.  Separatedness is the
geometric condition that the axes spanned by the pairs stay more than
2 rho apart, where rho = v(p)/(p-1) is the separation radius of the field.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NotClusteredInPairsError, NotSeparatedError
from .projline import INFINITY, PPoint, point_str
from .valfield import INF, FieldContext, Val


@dataclass(frozen=True)
class Configuration:
    """An ordered multiset of points of P^1(K)."""

    ctx: FieldContext
    points: tuple[PPoint, ...]

    @property
    def size(self) -> int:
        return len(self.points)

    def has_infinity(self) -> bool:
        return any(pt.is_infinity for pt in self.points)

    def finite_values(self) -> tuple:
        """Distinct finite point values, in first-occurrence order."""
        seen: list = []
        for pt in self.points:
            if not pt.is_infinity and pt.value not in seen:
                seen.append(pt.value)
        return tuple(seen)

    def multiset_key(self):
        return sorted(
            ("inf",) if pt.is_infinity else (self.ctx.to_str(pt.value),)
            for pt in self.points
        )

    def __repr__(self):
        inner = ", ".join(point_str(self.ctx, pt) for pt in self.points)
        return f"Configuration({{{inner}}})"


def configuration(ctx: FieldContext, values) -> Configuration:
    """Build a configuration from rationals / field elements / "inf" / None."""
    pts = []
    for v in values:
        if v is None or v == "inf" or (isinstance(v, PPoint) and v.is_infinity):
            pts.append(INFINITY)
        elif isinstance(v, PPoint):
            pts.append(v)
        elif isinstance(v, (int, Fraction)):
            pts.append(PPoint(ctx.from_fraction(v)))
        else:
            pts.append(PPoint(v))
    return Configuration(ctx, tuple(pts))


@dataclass(frozen=True)
class Cluster:
    """A cluster given by member indices into ``Configuration.finite_values``."""

    members: frozenset[int]
    depth: Val


def cluster_data(cfg: Configuration) -> tuple[Cluster, ...]:
    """Every cluster of the finite points, with depths.

    The full finite set is always a cluster and every point is a singleton
    cluster of depth +infinity.  Members index into ``finite_values()``
    (multiplicities collapse).
    """
    values = cfg.finite_values()
    ctx = cfg.ctx
    n = len(values)
    vmat = [[INF] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            v = ctx.valuation(ctx.sub(values[i], values[j]))
            vmat[i][j] = vmat[j][i] = v

    out: list[Cluster] = []

    def recurse(idx: list[int]):
        if len(idx) == 1:
            out.append(Cluster(frozenset(idx), INF))
            return
        depth = min(vmat[i][j] for i in idx for j in idx if i < j)
        out.append(Cluster(frozenset(idx), depth))
        # children: equivalence classes of "valuation strictly above depth"
        remaining = list(idx)
        while remaining:
            seed = remaining.pop(0)
            block = [seed]
            rest = []
            for k in remaining:
                if vmat[seed][k] > depth:
                    block.append(k)
                else:
                    rest.append(k)
            remaining = rest
            recurse(block)

    if n:
        recurse(list(range(n)))
    return tuple(out)


@dataclass(frozen=True)
class PairedConfiguration:
    """2g+2 distinct points partitioned into g+1 indexed pairs.

    The pair containing infinity (when present) always has the last index,
    with infinity as its second member.
    """

    ctx: FieldContext
    pairs: tuple[tuple[PPoint, PPoint], ...]

    @property
    def g(self) -> int:
        return len(self.pairs) - 1

    def points(self) -> tuple[PPoint, ...]:
        return tuple(pt for pair in self.pairs for pt in pair)

    def configuration(self) -> Configuration:
        return Configuration(self.ctx, self.points())

    def pair_sets(self) -> list[frozenset]:
        keys = []
        for a, b in self.pairs:
            keys.append(
                frozenset(
                    "inf" if pt.is_infinity else self.ctx.to_str(pt.value)
                    for pt in (a, b)
                )
            )
        return keys

    def __repr__(self):
        inner = ", ".join(
            "{%s, %s}" % (point_str(self.ctx, a), point_str(self.ctx, b))
            for a, b in self.pairs
        )
        return f"PairedConfiguration({inner})"


def pair_depth(ctx: FieldContext, a: PPoint, b: PPoint) -> Val:
    if a.is_infinity or b.is_infinity:
        return INF
    return ctx.valuation(ctx.sub(a.value, b.value))


def axis_distance(ctx: FieldContext, pair1, pair2) -> Fraction:
    """Tree distance between the axes spanned by two disjoint pairs.

    With u the maximal valuation of a cross difference and d_i the depth of
    pair i, the distance is max(0, d_1 - u) + max(0, d_2 - u); the depth
    term of a pair containing infinity is dropped (its axis runs upward
    without bound).
    """
    fin1 = [pt.value for pt in pair1 if not pt.is_infinity]
    fin2 = [pt.value for pt in pair2 if not pt.is_infinity]
    u = max(ctx.valuation(ctx.sub(x, y)) for x in fin1 for y in fin2)
    if u.is_infinite:
        raise ValueError("axes share a point")
    total = Fraction(0)
    for pair, fin in ((pair1, fin1), (pair2, fin2)):
        if len(fin) == 2:
            depth = ctx.valuation(ctx.sub(fin[0], fin[1])).fraction
            total += max(Fraction(0), depth - u.fraction)
    return total


def pair_up(cfg: Configuration) -> PairedConfiguration:
    """Partition into pairs, or raise NotClusteredInPairsError / NotSeparatedError.

    Points are equivalent when they lie in exactly the same even-cardinality
    clusters; all classes must have size two.  Pairs are indexed by depth of
    the minimal pair disc, descending, ties broken by first occurrence in
    the input; the pair containing infinity always gets the last index.
    Separation then requires every two pair axes to stay more than
    2 rho apart.
    """
    ctx = cfg.ctx
    values = cfg.finite_values()
    n_inf = sum(1 for pt in cfg.points if pt.is_infinity)
    if len(values) + n_inf != cfg.size:
        raise ValueError("pair_up requires distinct points")

    clusters = cluster_data(cfg)
    even = [c for c in clusters if len(c.members) % 2 == 0]
    profiles: dict[int, frozenset[int]] = {
        i: frozenset(k for k, c in enumerate(even) if i in c.members)
        for i in range(len(values))
    }
    groups: dict[frozenset[int], list[int]] = {}
    for i, prof in profiles.items():
        groups.setdefault(prof, []).append(i)
    tokens: dict[frozenset[int], list] = {k: list(v) for k, v in groups.items()}
    if n_inf:
        tokens.setdefault(frozenset(), []).append("inf")

    if any(len(members) != 2 for members in tokens.values()):
        raise NotClusteredInPairsError(
            "even-cluster equivalence classes do not all have size 2"
        )

    finite_pairs: list[tuple[PPoint, PPoint]] = []
    inf_pair: tuple[PPoint, PPoint] | None = None
    for members in tokens.values():
        if "inf" in members:
            i = next(m for m in members if m != "inf")
            inf_pair = (PPoint(values[i]), INFINITY)
        else:
            i, j = sorted(members)
            finite_pairs.append((PPoint(values[i]), PPoint(values[j])))

    def sort_key(pair):
        depth = pair_depth(ctx, *pair).fraction
        first = min(
            next(k for k, v in enumerate(values) if v == pt.value)
            for pt in pair
        )
        return (-depth, first)

    finite_pairs.sort(key=sort_key)
    pairs = tuple(finite_pairs) + ((inf_pair,) if inf_pair else ())
    pcfg = PairedConfiguration(ctx, pairs)

    margin = None
    for i in range(len(pairs)):
        for j in range(i + 1, len(pairs)):
            d = axis_distance(ctx, pairs[i], pairs[j])
            margin = d if margin is None else min(margin, d)
    if margin is not None and margin <= 2 * ctx.rho:
        raise NotSeparatedError(margin)
    return pcfg


def repetition_report(cfg: Configuration) -> tuple[int, Configuration]:
    """(number of distinct values repeated with multiplicity >= 2, underlying set)."""
    counts: list[tuple[PPoint, int]] = []
    for pt in cfg.points:
        for k, (q, c) in enumerate(counts):
            if q == pt:
                counts[k] = (q, c + 1)
                break
        else:
            counts.append((pt, 1))
    repeated = sum(1 for _, c in counts if c >= 2)
    underlying = Configuration(cfg.ctx, tuple(q for q, _ in counts))
    return repeated, underlying
