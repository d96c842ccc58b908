# A tour of the base layer: F_q[T], the Carlitz module, and u-series.
# Run with: python3 demos/01_carlitz_and_series.py

from carlitz_forms import PrimeModulus, TruncatedSeries, carlitz_action, get_field, hayes_quotient
from carlitz_forms.fixtures import false_eisenstein, u_sub_a

fs = get_field(3)  # F_3, so A = F_3[T]
T = fs.T

# rho_T = T x + x^3, and rho_a for any a by composition
print("rho_T      =", carlitz_action(T, fs).to_str("x", ascending=True))
print("rho_(T^2+1) =", carlitz_action(fs.parse_poly("T^2 + 1"), fs).to_str("x", ascending=True))

# pi = T^2 + 1 is prime in A; its Carlitz data is cached on the object
pi = PrimeModulus.parse("T^2 + 1", fs)
print("N = q^d     =", pi.N)
print("f_pi(X)     =", pi.inv_cyclotomic.to_str("X"))

# rho_(pi^2) / rho_pi is Eisenstein at pi
h = hayes_quotient(pi, 2)
print("deg of rho_(pi^2)/rho_pi =", h.degree)

# u-series carry their own precision; u_a = u^(q^deg a) / f_a(u)
print("u_(T+1)     =", u_sub_a(T + 1, 14, fs).to_str())
print("E           =", false_eisenstein(12, fs).to_str())

# precision is tracked through arithmetic
f = TruncatedSeries(fs, [fs.one, T, fs.zero, T**2], 6)
g = TruncatedSeries(fs, [fs.zero, fs.zero, fs.one], 4)
print("f*g         =", (f * g).to_str(), " (prec", (f * g).prec, ")")
print("1/f         =", f.invert_unit().to_str())
