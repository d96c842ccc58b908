# The congruence statements, checked at small primes.
# Run with: python3 demos/03_congruences.py

from carlitz_forms import PrimeModulus, build_g0, difference_valuation, get_field, trace_pair
from carlitz_forms.checks import norm_theorem_case
from carlitz_forms.fixtures import weight2_type1_fixture
from carlitz_forms.operators import pair_mul
from carlitz_forms.symfunc import conglemma_check, expand_m_in_e, Partition

fs = get_field(3)

# trace of f_E * g_(0) is f_E again mod p, and the trace of f_E itself is 0
for text in ("T", "T + 1", "T^2 + 1"):
    pi = PrimeModulus.parse(text, fs)
    prec = 13 * pi.N + 2
    fE = weight2_type1_fixture(pi, prec)
    tr = trace_pair(pair_mul(fE, build_g0(1, pi, prec)))
    v, P = difference_valuation(tr, fE.at_inf, pi)
    print(f"pi = {text:8s} v_p(Tr(f_E g_(0)) - f_E) = {v} on {P} coefficients; Tr(f_E) = 0: {trace_pair(fE).is_zero()}")

# the rescaled norm of a Fricke eigenform is its square mod p
pi = PrimeModulus.parse("T", fs)
nt, fhat, lam = norm_theorem_case(pi, 10)
v, P = difference_valuation(nt, fhat * fhat, pi)
print("rescaled by", lam.to_str(fs), "; v_p(N~(f) - fhat^2) =", v, "to precision", P)

# the symmetric-function lemma behind the norm congruence
print("m_(1,1,1) in elementary functions:", expand_m_in_e(Partition((1, 1, 1))).to_json())
rep = conglemma_check(3, 1, 2)
print("p = 3, r = 1, m = 2:", rep.verdict, "excluded coefficient", rep.excluded_coeff)
