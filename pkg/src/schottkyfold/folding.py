"""The folding algorithm: disc targets, the fold test, and the driver.

Given a paired configuration with infinity among its points, the driver
repeatedly looks for an index pair (i, j) and an exponent n such that
replacing the pairs hanging in the branch of ``tilde_d_j_of_i(i, j)``
around pair i by their images under the n-th power of the order-p map
fixing pair j brings the configuration strictly closer together.  Each
fold either keeps the configuration properly paired (a *good* fold) or
breaks the pairing, which certifies that the input was not good.  The
pairwise distances between distinguished vertices live in a discrete
value group and strictly decrease at every fold, so the loop terminates.

Outcomes:

* :class:`Good` -- no fold applies any more; the current configuration is
  optimal and is returned together with the full trace.
* :class:`NotGood` -- the input (or a folded successor) is not clustered in
  separated pairs.
* :class:`Redundant` -- a configuration acquired an even number of repeated
  values; the underlying set generates the same groups.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Union

from .clusters import (
    Configuration,
    PairedConfiguration,
    cluster_data,
    pair_up,
    repetition_report,
)
from .errors import InvalidInputError, NotSeparatedError, PairingError
from .hull import Disc, join, pair_disc
from .projline import Mobius, apply, order_p_fixing
from .valfield import FieldContext, Val


class PairingFailure(Enum):
    NOT_CLUSTERED_IN_PAIRS = "not_clustered_in_pairs"
    NOT_SEPARATED = "not_separated"


def _failure_of(exc: PairingError) -> PairingFailure:
    if isinstance(exc, NotSeparatedError):
        return PairingFailure.NOT_SEPARATED
    return PairingFailure.NOT_CLUSTERED_IN_PAIRS


@dataclass(frozen=True)
class FoldWitness:
    """The scan hit certifying a fold: index l and both sides of the test."""

    l: int
    lhs: Val
    rhs: Val


@dataclass(frozen=True)
class FoldingStep:
    i: int
    j: int
    n: int
    indices: frozenset[int]
    map: Mobius
    before: PairedConfiguration
    after: Configuration
    witness: Optional[FoldWitness]


@dataclass(frozen=True)
class Good:
    s_min: PairedConfiguration
    trace: tuple[FoldingStep, ...]


@dataclass(frozen=True)
class InitialNotPaired:
    failure: PairingFailure


@dataclass(frozen=True)
class BadFoldingProduced:
    step: FoldingStep
    failure: PairingFailure


@dataclass(frozen=True)
class NotGood:
    reason: Union[InitialNotPaired, BadFoldingProduced]
    trace: tuple[FoldingStep, ...]


@dataclass(frozen=True)
class Redundant:
    reduced: Configuration
    trace: tuple[FoldingStep, ...]


Verdict = Union[Good, NotGood, Redundant]

FOLD_CAP = 100  # generous; the discrete termination measure keeps runs tiny


def _clusters_by_members(pcfg: PairedConfiguration):
    cfg = pcfg.configuration()
    return cfg.finite_values(), cluster_data(cfg)


def _pair_member_indices(values, pair) -> frozenset[int]:
    out = set()
    for pt in pair:
        if not pt.is_infinity:
            out.add(next(k for k, v in enumerate(values) if v == pt.value))
    return frozenset(out)


def d_j_of_i(pcfg: PairedConfiguration, i: int, j: int) -> Optional[Disc]:
    """The target disc on the axis of pair j seen from pair i, if defined.

    Either the minimal odd clusters through both pairs coincide (then the
    target is the minimal disc of pair j), or some odd cluster contains
    pair i together with exactly one point of pair j (then the target is
    the minimal disc realising that containment).  When pair j contains
    infinity its finite point is the one included.
    """
    if i == j:
        raise ValueError("indices must be distinct")
    ctx = pcfg.ctx
    values, clusters = _clusters_by_members(pcfg)
    pair_i, pair_j = pcfg.pairs[i], pcfg.pairs[j]
    if any(pt.is_infinity for pt in pair_i):
        return None
    mem_i = _pair_member_indices(values, pair_i)
    mem_j = _pair_member_indices(values, pair_j)
    j_finite_count = len(mem_j)

    def minimal_odd_through(mem) -> Optional[frozenset[int]]:
        best = None
        for c in clusters:
            if len(c.members) % 2 == 1 and mem <= c.members:
                if best is None or c.members < best:
                    best = c.members
        return best

    if j_finite_count == 2:
        odd_i = minimal_odd_through(mem_i)
        odd_j = minimal_odd_through(mem_j)
        if odd_i is not None and odd_i == odd_j:
            return pair_disc(pcfg, j)

    witness = any(
        len(c.members) % 2 == 1
        and mem_i <= c.members
        and len(c.members & mem_j) == 1
        for c in clusters
    )
    if not witness:
        return None
    d_i = pair_disc(pcfg, i)
    candidates = []
    for k in sorted(mem_j):
        other = mem_j - {k}
        e = join(d_i, Disc(ctx, values[k], d_i.radius))
        if all(not e.contains_value(values[o]) for o in other):
            candidates.append(e)
    if not candidates:
        return None
    return max(candidates, key=lambda e: e.radius)


def tilde_d_j_of_i(pcfg: PairedConfiguration, i: int, j: int) -> Optional[Disc]:
    """The target disc pushed back by the separation radius rho.

    Walking a distance rho from the target disc point toward the vertex of
    pair i: either the walk stays below the join (shrink the radius by
    rho), or it crosses the join and descends toward pair i (radius
    2 d(join) - d(target) + rho around pair i).  With rho = 0 this is the
    target disc itself.
    """
    base = d_j_of_i(pcfg, i, j)
    if base is None:
        return None
    ctx = pcfg.ctx
    rho = ctx.rho
    d_i = pair_disc(pcfg, i)
    jn = join(d_i, base)
    if base.radius - jn.radius > rho:
        return Disc(ctx, base.center, base.radius - rho)
    return Disc(ctx, d_i.center, 2 * jn.radius - base.radius + rho)


def select_target(pcfg: PairedConfiguration, i: int) -> int:
    """The index j whose pushed-back target strictly contains the pair-i disc
    and is minimal under inclusion; ties go to the smallest index.

    The pair at infinity always qualifies, so a target exists for every
    i < g.
    """
    d_i = pair_disc(pcfg, i)
    best_j = None
    best_disc = None
    for j in range(pcfg.g + 1):
        if j == i:
            continue
        dt = tilde_d_j_of_i(pcfg, i, j)
        if dt is None or not dt.properly_contains(d_i):
            continue
        if best_disc is None or dt.radius > best_disc.radius:
            best_j, best_disc = j, dt
    if best_j is None:
        raise InvalidInputError(f"no folding target exists for index {i}")
    return best_j


def compute_I(pcfg: PairedConfiguration, i: int, j: int) -> frozenset[int]:
    """Indices of the pairs hanging in the branch of the pushed-back target
    around pair i: both points must be finite and strictly inside the
    residue branch through pair i."""
    ctx = pcfg.ctx
    dt = tilde_d_j_of_i(pcfg, i, j)
    if dt is None:
        raise InvalidInputError(f"target disc undefined for ({i}, {j})")
    anchor = next(pt.value for pt in pcfg.pairs[i] if not pt.is_infinity)
    level = dt.radius
    out = set()
    for l, pair in enumerate(pcfg.pairs):
        if any(pt.is_infinity for pt in pair):
            continue
        if all(
            ctx.valuation(ctx.sub(pt.value, anchor)) > Val.of(level) for pt in pair
        ):
            out.add(l)
    assert i in out, "pair i must lie in its own branch"
    return frozenset(out)


def find_fold_exponent(
    pcfg: PairedConfiguration, i: int, j: int
) -> Optional[tuple[int, FoldWitness]]:
    """Scan for an exponent n and outside index l verifying the fold test.

    The test compares v(r_l - zeta^n r_i) against v(r_l) + rho, where r_x
    is the cross ratio (c_x - a_j)/(c_x - b_j) of a finite representative
    c_x (denominators drop when b_j is infinity).  The inequality must
    hold for every representative choice of c_i and c_l: that is what
    moves the closeness statement from points up to the pair vertices.  (A
    single representative can fire by accident when p > 2; for p = 2 the
    choices always agree.)  The scan runs in ascending n then l, and the
    first hit is returned with the first representatives' two sides.
    """
    ctx = pcfg.ctx
    I = compute_I(pcfg, i, j)
    a_j, b_j = pcfg.pairs[j]
    rho = ctx.rho

    def ratio(c):
        num = ctx.sub(c, a_j.value)
        if b_j.is_infinity:
            return num
        return ctx.div(num, ctx.sub(c, b_j.value))

    reps_i = [pt.value for pt in pcfg.pairs[i] if not pt.is_infinity]
    for n in range(1, ctx.p):
        zn = ctx.zeta_power(n)
        for l in range(pcfg.g + 1):
            if l == j or l in I:
                continue
            reps_l = [pt.value for pt in pcfg.pairs[l] if not pt.is_infinity]
            witness = None
            all_hold = True
            for c_i in reps_i:
                r_i = ratio(c_i)
                for c_l in reps_l:
                    r_l = ratio(c_l)
                    lhs = ctx.valuation(ctx.sub(r_l, ctx.mul(zn, r_i)))
                    rhs = ctx.valuation(r_l) + rho
                    if not lhs > rhs:
                        all_hold = False
                        break
                    if witness is None:
                        witness = FoldWitness(l, lhs, rhs)
                if not all_hold:
                    break
            if all_hold and witness is not None:
                return n, witness
    return None


def fold_map(pcfg: PairedConfiguration, j: int, n: int) -> Mobius:
    a_j, b_j = pcfg.pairs[j]
    return order_p_fixing(pcfg.ctx, a_j, b_j, n)


def apply_folding(
    pcfg: PairedConfiguration, i: int, j: int, n: int
) -> Configuration:
    """Replace the pairs in the fold set by their images; others unchanged.

    The result is flattened in pair-index order and may be a multiset.
    """
    I = compute_I(pcfg, i, j)
    m = fold_map(pcfg, j, n)
    points = []
    for l, (a, b) in enumerate(pcfg.pairs):
        if l in I:
            points.extend((apply(m, a), apply(m, b)))
        else:
            points.extend((a, b))
    return Configuration(pcfg.ctx, tuple(points))


class FoldClass(Enum):
    GOOD = "good"
    BAD = "bad"
    NEITHER = "neither"


def image_pair_key(step: FoldingStep) -> set[frozenset]:
    """The folded configuration's inherited pairing, as comparison keys."""
    ctx = step.before.ctx
    keys = set()
    for l, (a, b) in enumerate(step.before.pairs):
        if l in step.indices:
            a, b = apply(step.map, a), apply(step.map, b)
        keys.add(
            frozenset(
                "inf" if pt.is_infinity else ctx.to_str(pt.value)
                for pt in (a, b)
            )
        )
    return keys


def classify_folding(ctx: FieldContext, step: FoldingStep) -> FoldClass:
    """Good: the result is still clustered in the inherited pairs and the
    step carried a witness.  Bad: the inherited pairing is no longer a
    separated clustering (including the degenerate case where the points
    re-pair differently: the clustering of a set is unique, so a changed
    pairing means the inherited one failed).  Neither: a forced fold whose
    result pairs up but that no witness certified."""
    repeated, _ = repetition_report(step.after)
    if repeated:
        return FoldClass.BAD
    try:
        folded = pair_up(step.after)
    except PairingError:
        return FoldClass.BAD
    if set(folded.pair_sets()) != image_pair_key(step):
        return FoldClass.BAD
    return FoldClass.GOOD if step.witness is not None else FoldClass.NEITHER


def validate_input(cfg: Configuration) -> None:
    if cfg.size < 4 or cfg.size % 2 != 0:
        raise InvalidInputError("configuration must have even size >= 4")
    if not cfg.has_infinity():
        raise InvalidInputError("configuration must contain the point at infinity")
    if sum(1 for pt in cfg.points if pt.is_infinity) > 1:
        raise InvalidInputError("configuration may contain infinity only once")


def run_algorithm(ctx: FieldContext, cfg: Configuration) -> Verdict:
    """Run the folding loop to a verdict, recording every fold.

    Each pass checks repetitions (an even number of repeated values stops
    with Redundant, an odd number means the pairing is broken), re-pairs
    from scratch, and then scans i = 0..g-1 for a fold; a performed fold
    restarts the pass.  When no fold exists the configuration is optimal.
    """
    validate_input(cfg)
    trace: list[FoldingStep] = []
    current = cfg
    for _ in range(FOLD_CAP + 1):
        repeated, underlying = repetition_report(current)
        if repeated:
            if repeated % 2 == 0:
                return Redundant(underlying, tuple(trace))
            failure = PairingFailure.NOT_CLUSTERED_IN_PAIRS
            if trace:
                return NotGood(BadFoldingProduced(trace[-1], failure), tuple(trace))
            return NotGood(InitialNotPaired(failure), tuple(trace))
        try:
            pcfg = pair_up(current)
        except PairingError as exc:
            failure = _failure_of(exc)
            if trace:
                return NotGood(BadFoldingProduced(trace[-1], failure), tuple(trace))
            return NotGood(InitialNotPaired(failure), tuple(trace))

        # A fold is only good if the set stays clustered in the inherited
        # pairs.  Clusterings are unique, so a different canonical pairing
        # means the inherited labels lost separation (their tubes touch):
        # a bad folding, even though the bare point set pairs up again.
        if trace and set(pcfg.pair_sets()) != image_pair_key(trace[-1]):
            return NotGood(
                BadFoldingProduced(trace[-1], PairingFailure.NOT_SEPARATED),
                tuple(trace),
            )

        performed = False
        for i in range(pcfg.g):
            j = select_target(pcfg, i)
            found = find_fold_exponent(pcfg, i, j)
            if found is None:
                continue
            n, witness = found
            indices = compute_I(pcfg, i, j)
            m = fold_map(pcfg, j, n)
            after = apply_folding(pcfg, i, j, n)
            trace.append(
                FoldingStep(
                    i=i,
                    j=j,
                    n=n,
                    indices=indices,
                    map=m,
                    before=pcfg,
                    after=after,
                    witness=witness,
                )
            )
            current = after
            performed = True
            break
        if not performed:
            return Good(pcfg, tuple(trace))
    raise RuntimeError("fold cap exceeded; termination measure violated")
