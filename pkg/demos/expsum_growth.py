"""
How fast do quadratic Weyl sums grow in L^q_t L^r_x?
====================================================

F(x, t) = sum_n a_n e(nx + n^2 t) on the torus.  Parseval pins the (2, 2) and
(inf, 2) ratios at 1; at (10, 10) the ratio should grow like N^0.2, while at
(6, 6) it should grow slower than any power.
"""
import math

from mixdec.expsum import growth_fit, growth_samples

ladder = [8, 16, 32, 64]
for q, r in [(2, 2), (math.inf, 2), (6, 6), (10, 10)]:
    samples = growth_samples("ones", ladder, q, r)
    fit = growth_fit("ones", ladder, q, r, samples=samples)
    print(f"(q, r) = ({q}, {r})", [round(s.ratio, 4) for s in samples], "slope", round(fit.slope, 3))

# random unimodular coefficients wash out the peak at x = 0
samples = growth_samples("random", ladder, 10, 10, seed=3)
print("random (10, 10)", [round(s.ratio, 4) for s in samples])
