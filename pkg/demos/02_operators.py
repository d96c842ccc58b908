# U_p and V_p on u-series, and the norm from Gamma0(p) down to full level.
# Run with: python3 demos/02_operators.py

import random

from carlitz_forms import PrimeModulus, TruncatedSeries, get_field, norm_product, up_direct, up_oracle_newton, vp_op
from carlitz_forms.checks import random_series
from carlitz_forms.operators import annihilation_defect, norm_input_prec

fs = get_field(3)
pi = PrimeModulus.parse("T", fs)

u2 = TruncatedSeries.monomial(fs, fs.one, 2, 12)
print("u^2 | U      =", up_direct(u2, pi).to_str())
print("u | V        =", vp_op(TruncatedSeries.monomial(fs, fs.one, 1, 4), pi).to_str())

# two independent routes to U_p: the explicit coefficient formula and
# Newton's identities for the roots of y^3 - u (T y^2 + 1)
rng = random.Random(1)
f = random_series(rng, fs, 25)
a, b = up_direct(f, pi), up_oracle_newton(f, pi)
P = min(a.prec, b.prec)
print("formula and Newton agree to precision", P, ":", a.truncate(P) == b.truncate(P))
print("(f|V)|U vanishes:", annihilation_defect(f, pi).is_zero())

# the norm is a product over the N roots; mod pi it is just f again
need = norm_input_prec(6, pi.N)
f = random_series(rng, fs, need)
nf = norm_product(f, pi, 6)
print("f            =", f.truncate(6).to_str())
print("N(f)         =", nf.to_str())
print("N(f) - f mod pi =", (nf - f.truncate(6)).reduce_mod(pi).to_str())
