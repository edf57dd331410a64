"""
Brute-force group-word audit
============================

Independent of the folding route, one can enumerate reduced words in the
order-p generators whose exponent sum vanishes mod p and classify each
matrix.  A short non-loxodromic word falsifies goodness; silence up to a
length bound corroborates it.
"""

from fractions import Fraction

from schottkyfold import (
    configuration,
    enumerate_gamma_words,
    field_context,
    pair_up,
    run_algorithm,
    schottky_audit,
    word_matrix,
)

ctx = field_context(2, 5)

print("reduced even words on three involutions, up to length 2:")
for w in enumerate_gamma_words(g=2, p=2, max_len=2):
    print("  ", w)

# The showcase failure: an elliptic word of length four exists.
bad = pair_up(configuration(ctx, [7, 12, 0, 5, 1, "inf"]))
result = schottky_audit(bad, 4)
word, cls = result.witness
m = word_matrix(bad, word)
print("\nwitness against {7,12,0,5,1,inf}:", word)
print("  class:", cls.kind.value, " trace:", m.trace(), " det:", m.det())
print("  words checked:", result.words_checked)

# The optimal configuration the folding run produces audits clean.
ctx7 = field_context(2, 7)
verdict = run_algorithm(
    ctx7,
    configuration(ctx7, [Fraction(1336, 3), -355, -110, 86, 0, 7, 1, "inf"]),
)
clean = schottky_audit(verdict.s_min, 6)
print("\naudit of the optimal 7-adic configuration to depth 6:")
print("  witness:", clean.witness, " relations:", clean.relations,
      " words checked:", clean.words_checked)
