"""The four Jacobi theta functions and their transformation machinery.

Everything is built from the infinite products

    theta (v,t) = 2 q^{1/8} sin(pi v) prod (1-q^j)(1-e(v) q^j)(1-e(-v) q^j)
    theta1(v,t) = 2 q^{1/8} cos(pi v) prod (1-q^j)(1+e(v) q^j)(1+e(-v) q^j)
    theta2(v,t) =                 prod (1-q^j)(1-e(v) q^{j-1/2})(1-e(-v) q^{j-1/2})
    theta3(v,t) =                 prod (1-q^j)(1+e(v) q^{j-1/2})(1+e(-v) q^{j-1/2})

with q = e^{2 pi i tau}, e(v) = e^{2 pi i v}.  Fractional powers of q are
always computed from tau itself (q^{1/2} = e^{pi i tau}, q^{1/8} =
e^{pi i tau/4}); deriving them from q through a principal root would break
the tau -> tau+1 laws.

Arguments may carry a nilpotent polynomial part.  Each exponential factor
is then expanded with the polynomial exp, so the evaluation returns the
Taylor jet of the theta function at the numeric centre.  The same code
path, run with a formal q, produces the q-expansion with polynomial
coefficients used by the character calculus.

The shift multipliers and the S/T transformation table below were
calibrated against direct evaluation of the products and are frozen here;
regression tests in the suite re-run the calibration.
"""

from __future__ import annotations

import cmath
import enum
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, DomainMarginWarning, PreconditionError
from .polynomial import ChernPoly, Generators
from .series import QExponent, QSeries, qexp

TWO_PI_I = 2j * cmath.pi
DEFAULT_MIN_IM = 0.3
HALF_PLANE_FLOOR = 1e-6
PRODUCT_TAIL = 1e-18
MIN_PRODUCT_TERMS = 25


class ThetaKind(enum.Enum):
    THETA = "theta"
    THETA1 = "theta1"
    THETA2 = "theta2"
    THETA3 = "theta3"

    def __str__(self):
        return self.value


THETA_KINDS = (ThetaKind.THETA, ThetaKind.THETA1, ThetaKind.THETA2, ThetaKind.THETA3)

# factor structure: (trig prefactor, sign of the e(v) factors, half-integer powers)
_TRIG = {ThetaKind.THETA: "sin", ThetaKind.THETA1: "cos",
         ThetaKind.THETA2: None, ThetaKind.THETA3: None}
_SIGN = {ThetaKind.THETA: -1.0, ThetaKind.THETA1: 1.0,
         ThetaKind.THETA2: -1.0, ThetaKind.THETA3: 1.0}
_HALF = {ThetaKind.THETA: False, ThetaKind.THETA1: False,
         ThetaKind.THETA2: True, ThetaKind.THETA3: True}

# zero sets: offset + Z + Z*tau
_ZERO_OFFSET = {
    ThetaKind.THETA: (0.0, 0.0),     # p + r tau
    ThetaKind.THETA1: (0.5, 0.0),
    ThetaKind.THETA2: (0.0, 0.5),
    ThetaKind.THETA3: (0.5, 0.5),
}

# one-step shift multipliers, calibrated against direct evaluation:
#   theta_k(v+1)   = s1 * theta_k(v)
#   theta_k(v+tau) = st * q^{-1/2} e^{-2 pi i v} theta_k(v)
_SHIFT_SIGN_1 = {ThetaKind.THETA: -1.0, ThetaKind.THETA1: -1.0,
                 ThetaKind.THETA2: 1.0, ThetaKind.THETA3: 1.0}
_SHIFT_SIGN_TAU = {ThetaKind.THETA: -1.0, ThetaKind.THETA1: 1.0,
                   ThetaKind.THETA2: -1.0, ThetaKind.THETA3: 1.0}

# S action: theta_k(t/tau, -1/tau) = pref(tau) e^{pi i t^2/tau} theta_{S_PERM[k]}(t, tau)
# T action: theta_k(t, tau+1) = T_PHASE[k] * theta_{T_PERM[k]}(t, tau)
S_PERM = {ThetaKind.THETA: ThetaKind.THETA, ThetaKind.THETA1: ThetaKind.THETA2,
          ThetaKind.THETA2: ThetaKind.THETA1, ThetaKind.THETA3: ThetaKind.THETA3}
T_PERM = {ThetaKind.THETA: ThetaKind.THETA, ThetaKind.THETA1: ThetaKind.THETA1,
          ThetaKind.THETA2: ThetaKind.THETA3, ThetaKind.THETA3: ThetaKind.THETA2}
T_PHASE = {ThetaKind.THETA: cmath.exp(1j * cmath.pi / 4),
           ThetaKind.THETA1: cmath.exp(1j * cmath.pi / 4),
           ThetaKind.THETA2: 1.0, ThetaKind.THETA3: 1.0}


def s_prefactor(kind, tau):
    """Root-of-tau prefactor of the S law; only the odd theta carries the 1/i.

    tau/i has positive real part on the upper half-plane, so the principal
    square root never crosses its cut.
    """
    tau = TauPoint.coerce(tau).value
    root = cmath.sqrt(tau / 1j)
    return root / 1j if kind is ThetaKind.THETA else root


@dataclass(frozen=True)
class TauPoint:
    """A modulus in the upper half-plane with a configured margin."""

    value: complex
    min_im: float = DEFAULT_MIN_IM

    def __post_init__(self):
        if self.min_im <= 0:
            raise DomainError("half-plane margin must be positive")
        if self.value.imag < self.min_im:
            raise DomainError(
                "Im(tau) = %g is below the configured margin %g"
                % (self.value.imag, self.min_im)
            )

    @classmethod
    def coerce(cls, tau, min_im=DEFAULT_MIN_IM):
        if isinstance(tau, TauPoint):
            return tau
        return cls(complex(tau), min_im)

    def q(self):
        return cmath.exp(TWO_PI_I * self.value)

    def q_half(self):
        return cmath.exp(1j * cmath.pi * self.value)

    def q_eighth(self):
        return cmath.exp(1j * cmath.pi * self.value / 4)

    def product_terms(self, requested=None):
        """Number of product factors so the dropped tail is below PRODUCT_TAIL."""
        need = int(math.ceil(-math.log(PRODUCT_TAIL) / (2 * math.pi * self.value.imag)))
        return max(MIN_PRODUCT_TERMS, need, requested or 0)

    def shifted(self, value):
        """Same margin policy at a new location; warns rather than refuses
        when a transformation left the margin (accuracy is restored by the
        dynamic product length)."""
        if value.imag < HALF_PLANE_FLOOR:
            raise DomainError("tau = %r left the upper half-plane" % (value,))
        margin = self.min_im
        if value.imag < margin:
            warnings.warn(
                "transformed tau = %r is below the margin %g" % (value, margin),
                DomainMarginWarning,
                stacklevel=3,
            )
            margin = value.imag * 0.999
        return TauPoint(value, margin)


def _split_argument(v):
    """Split v into (numeric centre, nilpotent jet or None)."""
    if isinstance(v, ChernPoly):
        centre = v.constant()
        jet = v - centre
        return centre, (jet if jet else None), v.gens, v.cap
    return complex(v), None, None, None


def _exp_jet(centre_value, jet, scale):
    """exp(scale*(c+x)) = exp(scale*c) * poly-exp(scale*x); complex when no jet."""
    if jet is None:
        return cmath.exp(scale * centre_value)
    return (jet * scale).exp() * cmath.exp(scale * centre_value)


def _trig_jet(which, centre, jet):
    if jet is None:
        return cmath.sin(cmath.pi * centre) if which == "sin" else cmath.cos(cmath.pi * centre)
    plus = _exp_jet(centre, jet, 1j * cmath.pi)
    minus = _exp_jet(centre, jet, -1j * cmath.pi)
    if which == "sin":
        return (plus - minus) * (1 / 2j)
    return (plus + minus) * 0.5


def theta_eval(kind, v, tau, product_terms=None):
    """Evaluate a theta function; v may carry a nilpotent polynomial part.

    Returns a complex number for plain arguments and the Taylor jet (a
    ChernPoly) when v does.
    """
    if product_terms is not None and product_terms < 1:
        raise PreconditionError("product_terms must be >= 1")
    tau = TauPoint.coerce(tau)
    centre, jet, _, _ = _split_argument(v)
    q = tau.q()
    terms = tau.product_terms(product_terms)

    trig = _TRIG[kind]
    sign = _SIGN[kind]
    if trig is not None:
        out = 2 * tau.q_eighth() * _trig_jet(trig, centre, jet)
    else:
        out = 1.0

    e_plus = _exp_jet(centre, jet, TWO_PI_I)
    e_minus = _exp_jet(centre, jet, -TWO_PI_I)
    qpow = tau.q_half() if _HALF[kind] else q
    for _ in range(terms):
        # qpow runs over q^j or q^{j-1/2}
        out = out * (1 + sign * e_plus * qpow)
        out = out * (1 + sign * e_minus * qpow)
        qpow *= q
    euler = 1.0
    qj = q
    for _ in range(terms):
        euler *= 1 - qj
        qj *= q
    return out * euler


def theta_qseries(kind, centre, jet, order, product_terms=None):
    """Formal q-expansion of theta at argument centre + jet.

    centre is a complex number (e.g. a rotation times the circle parameter);
    the jet is a nilpotent ChernPoly or None.  Coefficients are ChernPoly
    values when a jet is present, plain complex numbers otherwise.
    """
    order = QExponent.of(order)
    if order.eighths <= 0:
        raise PreconditionError("q-order must be positive")
    terms = max(order.eighths // 8 + 1, product_terms or 0)

    sign = _SIGN[kind]
    half = _HALF[kind]
    e_plus = _exp_jet(centre, jet, TWO_PI_I)
    e_minus = _exp_jet(centre, jet, -TWO_PI_I)

    acc = QSeries({qexp(0): 1.0}, order)
    for j in range(1, terms + 1):
        e = qexp(j) - qexp(Fraction(1, 2)) if half else qexp(j)
        if e >= order:
            break
        acc = acc * QSeries({qexp(0): 1.0, e: sign * e_plus}, order)
        acc = acc * QSeries({qexp(0): 1.0, e: sign * e_minus}, order)
    for j in range(1, terms + 1):
        if qexp(j) >= order:
            break
        acc = acc * QSeries({qexp(0): 1.0, qexp(j): -1.0}, order)

    trig = _TRIG[kind]
    if trig is not None:
        pref = 2 * _trig_jet(trig, centre, jet)
        acc = acc * QSeries.monomial(QExponent(1), pref, order)
    return acc


def sinc_jet(jet):
    """sin(pi x)/(pi x) as a polynomial jet for pure-nilpotent x."""
    one = ChernPoly.one(jet.gens, jet.cap)
    sq = jet * jet * (-(cmath.pi ** 2))
    out = one
    power = one
    for k in range(1, jet.cap // 2 + 1):
        power = power * sq
        if not power:
            break
        out = out + power * (1.0 / math.factorial(2 * k + 1))
    return out


def theta_eval_regularized(jet, tau, product_terms=None):
    """theta(x, tau)/x for a pure-nilpotent jet x.

    The odd theta vanishes linearly at 0; dividing the product's sin
    prefactor by its argument keeps the tangent factors of the fixed-point
    integrand polynomial without ever inverting a nilpotent generator.
    """
    if jet.constant() != 0:
        raise PreconditionError("regularized evaluation needs a zero-centre argument")
    tau = TauPoint.coerce(tau)
    q = tau.q()
    terms = tau.product_terms(product_terms)
    out = 2 * cmath.pi * tau.q_eighth() * sinc_jet(jet)
    e_plus = _exp_jet(0.0, jet, TWO_PI_I)
    e_minus = _exp_jet(0.0, jet, -TWO_PI_I)
    qpow = q
    euler = 1.0
    for _ in range(terms):
        out = out * (1 - e_plus * qpow)
        out = out * (1 - e_minus * qpow)
        euler *= 1 - qpow
        qpow *= q
    return out * euler


def theta_qseries_regularized(jet, order, product_terms=None):
    """Formal-q version of :func:`theta_eval_regularized`."""
    if jet.constant() != 0:
        raise PreconditionError("regularized evaluation needs a zero-centre argument")
    order = QExponent.of(order)
    terms = max(order.eighths // 8 + 1, product_terms or 0)
    e_plus = _exp_jet(0.0, jet, TWO_PI_I)
    e_minus = _exp_jet(0.0, jet, -TWO_PI_I)
    acc = QSeries({qexp(0): 1.0}, order)
    for j in range(1, terms + 1):
        if qexp(j) >= order:
            break
        acc = acc * QSeries({qexp(0): 1.0, qexp(j): -e_plus}, order)
        acc = acc * QSeries({qexp(0): 1.0, qexp(j): -e_minus}, order)
        acc = acc * QSeries({qexp(0): 1.0, qexp(j): -1.0}, order)
    pref = 2 * cmath.pi * sinc_jet(jet)
    return acc * QSeries.monomial(QExponent(1), pref, order)


def theta_derivative(kind, n, v, tau, product_terms=None):
    """n-th derivative in v, read off the nilpotent-jet evaluation."""
    if n < 0:
        raise PreconditionError("derivative order must be nonnegative")
    if n == 0:
        return theta_eval(kind, v, tau, product_terms)
    gens = Generators(("__dv__",))
    arg = ChernPoly(gens, n, {(0,): complex(v), (1,): 1.0})
    jet = theta_eval(kind, arg, tau, product_terms)
    return jet.coefficient((n,)) * math.factorial(n)


def theta_prime_zero(tau, product_terms=None):
    """Derivative of the odd theta at v = 0."""
    return theta_derivative(ThetaKind.THETA, 1, 0.0, tau, product_terms)


def jacobi_residual(tau, product_terms=None):
    """Defect of the derivative identity
    theta'(0,tau) = pi * theta1(0,tau) theta2(0,tau) theta3(0,tau)."""
    tau = TauPoint.coerce(tau)
    lhs = theta_prime_zero(tau, product_terms)
    rhs = cmath.pi
    for kind in (ThetaKind.THETA1, ThetaKind.THETA2, ThetaKind.THETA3):
        rhs *= theta_eval(kind, 0.0, tau, product_terms)
    return abs(lhs - rhs)


def shift_factor(kind, v, tau, a, b):
    """Multiplier mu with theta_kind(v + a + b*tau) = mu * theta_kind(v).

    Composes the one-step laws; valid for all integers a, b.  v may carry a
    nilpotent part, in which case mu is a polynomial (this is how the
    translation anomaly acquires its Chern-root terms).
    """
    tau = TauPoint.coerce(tau)
    a, b = int(a), int(b)
    sign = _SHIFT_SIGN_1[kind] ** (a & 1) * _SHIFT_SIGN_TAU[kind] ** (b & 1)
    centre, jet, _, _ = _split_argument(v)
    phase = cmath.exp(-TWO_PI_I * b * centre - 1j * cmath.pi * b * b * tau.value)
    if jet is None:
        return sign * phase
    return (jet * (-TWO_PI_I * b)).exp() * (sign * phase)


@dataclass(frozen=True)
class MoebiusMatrix:
    """Integer matrix (a b; c d) with determinant one."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise DomainError(
                "matrix (%d %d; %d %d) has determinant != 1"
                % (self.a, self.b, self.c, self.d)
            )

    def __matmul__(self, other):
        return MoebiusMatrix(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def act_tau(self, tau):
        tau = complex(tau.value if isinstance(tau, TauPoint) else tau)
        return (self.a * tau + self.b) / (self.c * tau + self.d)


S_MATRIX = MoebiusMatrix(0, -1, 1, 0)
T_MATRIX = MoebiusMatrix(1, 1, 0, 1)


def moebius_act(g, t, tau):
    """(t, tau) -> (t/(c tau + d), (a tau + b)/(c tau + d)).

    The group acts on the parameter slot by the same denominator as on the
    modulus; S sends (t, tau) to (t/tau, -1/tau) and T to (t, tau+1).
    """
    tau = TauPoint.coerce(tau)
    denom = g.c * tau.value + g.d
    if denom == 0:
        raise DomainError("c*tau + d vanished; point is outside the domain")
    new_tau = (g.a * tau.value + g.b) / denom
    return t / denom, tau.shifted(new_tau)


def st_transform_residual(kind, v, tau, g, product_terms=None):
    """Defect of the S or T transformation law for one theta kind."""
    tau = TauPoint.coerce(tau)
    if isinstance(g, str):
        g = {"S": S_MATRIX, "T": T_MATRIX}[g.upper()]
    if g == S_MATRIX:
        t_new, tau_new = moebius_act(g, v, tau)
        lhs = theta_eval(kind, t_new, tau_new, product_terms)
        pref = s_prefactor(kind, tau) * cmath.exp(1j * cmath.pi * v * v / tau.value)
        rhs = pref * theta_eval(S_PERM[kind], v, tau, product_terms)
    elif g == T_MATRIX:
        _, tau_new = moebius_act(g, v, tau)
        lhs = theta_eval(kind, v, tau_new, product_terms)
        rhs = T_PHASE[kind] * theta_eval(T_PERM[kind], v, tau, product_terms)
    else:
        raise PreconditionError("transformation law table covers only S and T")
    return abs(lhs - rhs)


def subgroup_membership(g):
    """Parity flags (in Gamma_0(2), in Gamma^0(2)): c even, b even."""
    if g.a * g.d - g.b * g.c != 1:
        raise DomainError("matrix is not in the modular group")
    return {"gamma0_lower": g.c % 2 == 0, "gamma0_upper": g.b % 2 == 0}


def modularity_residual(f, g, tau, k, chi):
    """|f(g tau) - chi (c tau + d)^k f(tau)|; a measurement, no verdict."""
    tau = TauPoint.coerce(tau)
    denom = g.c * tau.value + g.d
    new_tau = tau.shifted(g.act_tau(tau))
    return abs(f(new_tau.value) - chi * denom ** k * f(tau.value))


def theta_zero_location(kind, v, tau, tol=1e-9):
    """Lattice coordinates (p, r) with v = offset + p + r*tau if v is a zero
    of the given theta kind, else None.  Offsets per kind: theta on the
    lattice itself, theta1 at 1/2, theta2 at tau/2, theta3 at 1/2 + tau/2.
    This is the attributable pole test: factor vanishing is decided by
    lattice membership, not magnitude."""
    tau = TauPoint.coerce(tau).value
    off_p, off_r = _ZERO_OFFSET[kind]
    w = complex(v) - off_p - off_r * tau
    r_int = round(w.imag / tau.imag)
    p_int = round((w - r_int * tau).real)
    if abs(w - (p_int + r_int * tau)) < tol:
        return (p_int, r_int)
    return None
