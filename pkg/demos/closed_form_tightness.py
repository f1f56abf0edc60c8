"""Auditing a closed-form classical bound against exact enumeration.

One family in the symmetric module ships with a closed-form bound,
(1/2)[n(x+y)^2 + (sigma*mu +/- x)^2 - 1].  Closed forms are convenient but
they are claims, and the count-enumeration bound is the ground truth, so
here the whole small-coefficient grid is checked by exact integer
arithmetic.

The audit finds one blemish: at (x, y, mu) = (3, 3, 0) the expression is
coefficient-by-coefficient 9 times the (1, 1, 0) one, so its true bound is
9 * 2n = 18n, while the closed form gives 18n + 4.  Still a valid bound,
just not tight - the kind of off-by-a-constant a formula check alone would
never catch.
"""

from collections import Counter

from bellscope import classical_bound_symmetric, rioja
from bellscope.symmetric import rioja_parity_ok

checked = 0
gaps = Counter()
gap_values = {}
examples = {}
for x in (1, 2, 3):
    for y in (1, 2, 3):
        for sigma in (1, -1):
            for mu in range(-3, 4):
                for branch in ("plus", "minus"):
                    for n in range(2, 21):
                        if not rioja_parity_ok(x, y, mu, n):
                            continue
                        expr = rioja(x, y, sigma, mu, n, branch=branch)
                        enum, witness = classical_bound_symmetric(expr)
                        checked += 1
                        gap = expr.bound - enum
                        if gap:
                            gaps[(x, y, mu)] += 1
                            gap_values.setdefault((x, y, mu), set()).add(gap)
                            examples.setdefault((x, y, mu), (n, witness))

print(f"grid points checked: {checked}")
if not gaps:
    print("closed form tight everywhere on the grid")
for point, count in sorted(gaps.items()):
    n, witness = examples[point]
    vals = [str(g) for g in sorted(gap_values[point])]
    print(f"closed form NOT tight at (x, y, mu) = {point}: "
          f"{count} (sigma, branch, n) combinations, gap values {vals}")
    print(f"  e.g. n = {n}: enumeration witness counts {witness}")
    print(f"  sanity: coefficients at {point} are 9x those at (1, 1, 0), "
          f"whose bound is 2n, so the true bound is 18n")
