"""
Moebius maps and their classification
=====================================

Fractional linear maps act on the projective line; their dynamical type
is read off the Newton polygon of the characteristic polynomial.  The
order-p maps fixing a prescribed pair of points are the generators the
whole theory is built from.
"""

from schottkyfold import (
    INFINITY,
    apply,
    classify,
    compose,
    field_context,
    finite,
    mobius,
    order_p_fixing,
    proj_eq,
)

ctx = field_context(2, 5)

# z -> 5z is loxodromic over the 5-adics: its eigenvalues 5 and 1 have
# different valuations and it translates its axis by v(5) = 1.
print("diag(5, 1):", classify(ctx, mobius(ctx, 5, 0, 0, 1)))

# z -> z + 1 has a single eigenvalue: parabolic.
print("unipotent:", classify(ctx, mobius(ctx, 1, 1, 0, 1)))

# The involution fixing 7 and 12.
s0 = order_p_fixing(ctx, finite(ctx, 7), finite(ctx, 12), 1)
print("involution fixing {7, 12}:", s0, "->", classify(ctx, s0))
print("  fixes 7:", apply(s0, finite(ctx, 7)) == finite(ctx, 7))

# Involutions fixing {0, 5} and {1, infinity}.
s1 = order_p_fixing(ctx, finite(ctx, 0), finite(ctx, 5), 1)
s2 = order_p_fixing(ctx, finite(ctx, 1), INFINITY, 1)
print("involution fixing {0, 5}:", s1)
print("involution fixing {1, inf}:", s2, "(z -> 2 - z)")

# Squaring any of them gives the identity projectively.
print("s0^2 is the identity:", proj_eq(compose(s0, s0), mobius(ctx, 1, 0, 0, 1)))

# Products of involutions need not be loxodromic: this one has
# characteristic polynomial proportional to T^2 - 350 T + 625, whose two
# roots share the valuation 2, so the map is elliptic.  Its existence
# shows the configuration {7, 12, 0, 5, 1, inf} cannot be good.
w = compose(compose(compose(s1, s2), s0), s2)
print("s1*s2*s0*s2 =", w)
print("  trace:", w.trace(), " det:", w.det(), "->", classify(ctx, w))
