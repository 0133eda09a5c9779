# The two coefficient rings under the hood: truncated q-series on the
# (1/8)-integer exponent lattice, and nilpotent polynomial jets.

from fractions import Fraction

from ellrig import ChernPoly, Generators, QSeries, ThetaKind, qexp, theta_qseries

# --- q-series -------------------------------------------------------------
# Exponents are exact integers over 8; no floating exponents anywhere.
a = QSeries({qexp(0): 1.0, qexp(Fraction(1, 2)): -1.0}, order=6)
b = QSeries({qexp(0): 1.0, qexp(Fraction(1, 2)): 1.0}, order=6)
print("(1 - q^1/2)(1 + q^1/2) =", a * b)

# Inversion: the workhorse behind symmetric-power characters.
geom = QSeries({qexp(0): 1.0, qexp(1): -1.0}, order=5).inverse()
print("1/(1-q)               =", geom)

# Inverting a series with positive leading exponent produces a bounded
# Laurent tail; it never happens silently in plain construction.
laurent = QSeries({qexp(1): 1.0, qexp(2): -1.0}, order=6).inverse()
print("1/(q - q^2)           =", laurent)

# --- polynomial jets --------------------------------------------------------
# Generators are nilpotent by construction: any monomial above the cap is
# exactly zero. This is what makes Taylor jets of analytic functions finite.
gens = Generators(("x", "y"))
x = ChernPoly.generator(gens, 3, "x")
y = ChernPoly.generator(gens, 3, "y")
print("\nexp(x + y) at cap 3   =", (x + y).exp())
roundtrip = x.exp() * (-x).exp() - 1
print("exp(x) exp(-x) - 1    : defect %.1e" % roundtrip.max_abs_coeff())
print("x^4 at cap 3          =", x ** 4)

# --- theta functions as formal q-series ------------------------------------
# The same product formulas, run with a formal q, give the q-expansions the
# character calculus consumes. Coefficients may be plain numbers or jets.
series = theta_qseries(ThetaKind.THETA2, 0.0, None, order=4)
print("\ntheta2(0, .) expansion:", series)

jet_series = theta_qseries(ThetaKind.THETA3, 0.0, ChernPoly.generator(gens, 2, "x"), 2)
print("theta3(x, .) expansion:")
for e in jet_series.support():
    print("   q^(%s): %s" % (e, jet_series.coeff(e)))
