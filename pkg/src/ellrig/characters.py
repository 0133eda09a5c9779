"""Characteristic-form calculus over formal Chern roots.

Covers the classical multiplicative genera (the sinh and tanh kernels),
total exterior/symmetric power characters, the theta-quotient characters of
the twisted spinor-bundle ladders, an independent tensor-expansion oracle
for those characters, and the odd (trace-generator) characters of maps into
the orthogonal group.

Root convention: roots are stored as the plain variables fed to theta
arguments, so every equivariant exponential is e^{2 pi i (root + n t)}.
The standalone genus operations default to the unit-root normalization of
their textbook kernels; callers that work in the stored convention pass the
appropriate ``root_scale``.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import CapacityError, PreconditionError
from .polynomial import ChernPoly, Generators
from .series import QExponent, QSeries, qexp
from .theta import (
    TWO_PI_I,
    TauPoint,
    ThetaKind,
    _trig_jet,
    sinc_jet,
    theta_eval,
    theta_eval_regularized,
    theta_qseries,
    theta_qseries_regularized,
)

ORACLE_MAX_ORDER = qexp(3)


class TwistFactor(enum.Enum):
    """Tensor factors that can multiply a Lefschetz integrand."""

    THETA1 = "Theta1"
    THETA2 = "Theta2"
    THETA3 = "Theta3"
    Q1V = "Q1V"
    Q2V = "Q2V"
    Q3V = "Q3V"
    DELTA_V = "DeltaV"
    PHI0 = "Phi0"
    PHI = "Phi"
    PSI1 = "Psi1"
    PSI2 = "Psi2"
    PSI3 = "Psi3"
    Q1E = "Q1E"
    Q2E = "Q2E"
    Q3E = "Q3E"

    def __str__(self):
        return self.value


_PHI0_CLASS = {TwistFactor.PHI0, TwistFactor.PHI,
               TwistFactor.PSI1, TwistFactor.PSI2, TwistFactor.PSI3}

# theta kind attached to each fiber-type factor
_V_KIND = {TwistFactor.Q1V: ThetaKind.THETA1,
           TwistFactor.Q2V: ThetaKind.THETA2,
           TwistFactor.Q3V: ThetaKind.THETA3}
_TANGENT_KIND = {TwistFactor.THETA1: ThetaKind.THETA1,
                 TwistFactor.THETA2: ThetaKind.THETA2,
                 TwistFactor.THETA3: ThetaKind.THETA3}
_ODD_KIND = {1: ThetaKind.THETA1, 2: ThetaKind.THETA2, 3: ThetaKind.THETA3}


@dataclass(frozen=True)
class TwistSpec:
    """Which factors multiply the integrand, with per-factor integer exponents."""

    factors: tuple
    exponents: tuple = ()

    def __post_init__(self):
        factors = tuple(
            f if isinstance(f, TwistFactor) else TwistFactor(f) for f in self.factors
        )
        exps = tuple(int(e) for e in self.exponents) or (1,) * len(factors)
        if len(exps) != len(factors):
            raise PreconditionError("one exponent per factor is required")
        if any(e < 1 for e in exps):
            raise PreconditionError("factor exponents must be positive integers")
        if sum(1 for f in factors if f in _PHI0_CLASS) > 1:
            raise PreconditionError(
                "at most one Phi0-class factor (Phi0, Phi, Psi_i) is allowed; "
                "it already bundles the three elliptic summands"
            )
        for f, e in zip(factors, exps):
            if f in (TwistFactor.PHI0, TwistFactor.PHI) and e != 1:
                raise PreconditionError(
                    "exponents target the fiber ladders; %s takes exponent 1" % f
                )
        object.__setattr__(self, "factors", factors)
        object.__setattr__(self, "exponents", exps)

    def expanded(self):
        """Flatten Phi and Psi_i into their constituent factors."""
        out = []
        for f, e in zip(self.factors, self.exponents):
            if f is TwistFactor.PHI:
                out.extend([(TwistFactor.PHI0, 1), (TwistFactor.Q1V, 1),
                            (TwistFactor.Q2V, 1), (TwistFactor.Q3V, 1)])
            elif f is TwistFactor.PSI1:
                out.extend([(TwistFactor.PHI0, 1), (TwistFactor.Q1V, e),
                            (TwistFactor.Q1E, 1)])
            elif f is TwistFactor.PSI2:
                out.extend([(TwistFactor.PHI0, 1), (TwistFactor.Q2V, e),
                            (TwistFactor.Q2E, 1)])
            elif f is TwistFactor.PSI3:
                out.extend([(TwistFactor.PHI0, 1), (TwistFactor.Q3V, e),
                            (TwistFactor.Q3E, 1)])
            else:
                out.append((f, e))
        return out

    def has_phi0_class(self):
        return any(f in _PHI0_CLASS for f in self.factors)

    def v_theta_weight(self):
        """Total theta-exponent carried by each fiber across all V factors
        (what multiplies the translation anomaly)."""
        total = 0
        for f, e in self.expanded():
            if f in _V_KIND:
                total += e
        return total


@dataclass(frozen=True)
class FormalBundle:
    """Root data of a bundle restricted to one fixed component.

    Real bundles list one symbol per +-pair of Chern roots; the rotation
    integer is the exponent of the circle action on that piece (zero for
    fixed directions).  ``rank_offset`` adds trivial summands; the reduced
    bundle E - dim E carries rank_offset = -rank.
    """

    symbols: tuple
    rotations: tuple = ()
    reality: str = "real"
    rank_offset: int = 0

    def __post_init__(self):
        object.__setattr__(self, "symbols", tuple(self.symbols))
        rot = tuple(int(r) for r in self.rotations) or (0,) * len(self.symbols)
        if len(rot) != len(self.symbols):
            raise PreconditionError("one rotation per root symbol is required")
        object.__setattr__(self, "rotations", rot)
        if self.reality not in ("real", "complex"):
            raise PreconditionError("reality must be 'real' or 'complex'")

    @property
    def rank_c(self):
        base = 2 * len(self.symbols) if self.reality == "real" else len(self.symbols)
        return base + self.rank_offset

    def tilde(self):
        base = 2 * len(self.symbols) if self.reality == "real" else len(self.symbols)
        return FormalBundle(self.symbols, self.rotations, self.reality, -base)

    def root_list(self):
        """(symbol, sign, rotation) per individual Chern root."""
        out = []
        for s, n in zip(self.symbols, self.rotations):
            if self.reality == "real":
                out.append((s, +1, n))
                out.append((s, -1, -n))
            else:
                out.append((s, +1, n))
        return out

    def fibers(self):
        return tuple(zip(self.symbols, self.rotations))


# --------------------------------------------------------------------------
# multiplicative genus kernels
# --------------------------------------------------------------------------


def _invert_one_series(coeffs):
    """Inverse of 1 + sum_{k>=1} c_k u^k as rational coefficient list."""
    n = len(coeffs)
    inv = [Fraction(0)] * n
    inv[0] = Fraction(1)
    for m in range(1, n):
        acc = Fraction(0)
        for k in range(1, m + 1):
            acc += coeffs[k] * inv[m - k]
        inv[m] = -acc
    return inv


def ahat_kernel_coefficients(half_terms):
    """Even-series coefficients of (u/2)/sinh(u/2): list over u^{2k}."""
    ratio = [Fraction(1, 4 ** k * math.factorial(2 * k + 1)) for k in range(half_terms)]
    return _invert_one_series(ratio)


def lhat_kernel_coefficients(half_terms):
    """Even-series coefficients of u/tanh(u) = cosh(u) * (sinh(u)/u)^{-1}."""
    cosh = [Fraction(1, math.factorial(2 * k)) for k in range(half_terms)]
    sinh_over = [Fraction(1, math.factorial(2 * k + 1)) for k in range(half_terms)]
    inv = _invert_one_series(sinh_over)
    out = [
        sum(cosh[j] * inv[k - j] for j in range(k + 1))
        for k in range(half_terms)
    ]
    return out


def _even_kernel_product(bundle, gens, cap, coeffs, root_scale, constant=1.0):
    if bundle.reality != "real":
        raise PreconditionError(
            "genus kernels need a real bundle (roots in +- pairs); "
            "choose a real structure first"
        )
    out = ChernPoly.one(gens, cap)
    for name in bundle.symbols:
        u = ChernPoly.generator(gens, cap, name, root_scale)
        sq = u * u
        factor = ChernPoly.scalar(gens, cap, constant)
        power = ChernPoly.one(gens, cap)
        for k in range(1, cap // 2 + 1):
            power = power * sq
            if not power:
                break
            factor = factor + power * (complex(coeffs[k]) * constant)
        out = out * factor
    return out


def ahat(bundle, gens, cap, root_scale=1.0):
    """Product over root pairs of (u/2)/sinh(u/2); unit leading term."""
    coeffs = ahat_kernel_coefficients(cap // 2 + 1)
    return _even_kernel_product(bundle, gens, cap, coeffs, root_scale)


def lhat(bundle, gens, cap, root_scale=1.0, include_rank_constant=False):
    """Product over root pairs of the tanh kernel.

    Default is the unit-leading normalization u/tanh(u) (degree-4 density
    reproduces the signature).  With ``include_rank_constant`` each pair
    carries the literal mixed-convention constant 2, so the degree-0 part
    becomes 2^(pairs); the kernel is then 2w/tanh(w) at w = u/2.
    """
    if include_rank_constant:
        coeffs = lhat_kernel_coefficients(cap // 2 + 1)
        # 2*(u/2)/tanh(u/2): even coefficients pick up 4^{-k}, constant 2
        scaled = [c / (4 ** k) for k, c in enumerate(coeffs)]
        return _even_kernel_product(bundle, gens, cap, scaled, root_scale, constant=2.0)
    coeffs = lhat_kernel_coefficients(cap // 2 + 1)
    return _even_kernel_product(bundle, gens, cap, coeffs, root_scale)


# --------------------------------------------------------------------------
# exterior / symmetric power characters
# --------------------------------------------------------------------------


def ch_power_op(bundle, op, t, gens, cap, root_scale=1.0, circle_t=0.0):
    """Character of the total exterior (op='lambda') or symmetric (op='sym')
    power at parameter t.

    t may be a complex number (result: ChernPoly) or a QSeries such as a
    q-power monomial (result: QSeries with ChernPoly coefficients).  Each
    root omega contributes (1 + t e^{scale*omega}) or its inverse with the
    minus sign; rank_offset contributes powers of (1 +- t).  Rotations enter
    as numeric phases e^{2 pi i n * circle_t}.
    """
    if op not in ("lambda", "sym"):
        raise PreconditionError("op must be 'lambda' or 'sym'")
    sign = 1.0 if op == "lambda" else -1.0
    formal = isinstance(t, QSeries)
    one = ChernPoly.one(gens, cap)

    if formal:
        acc = QSeries({qexp(0): one}, t.order)
    else:
        acc = one

    inverses = []
    for name, root_sign, rot in bundle.root_list():
        root = ChernPoly.generator(gens, cap, name, root_sign * root_scale)
        phase = cmath.exp(TWO_PI_I * rot * circle_t) if rot else 1.0
        e_root = root.exp() * phase
        factor = t * (sign * e_root) + 1.0
        if op == "lambda":
            acc = acc * factor
        else:
            inverses.append(factor)
    # trivial summands
    unit = t * sign + 1.0
    m = bundle.rank_offset
    if op == "lambda":
        if m > 0:
            acc = acc * unit ** m
        elif m < 0:
            inverses.append(unit ** (-m))
    else:
        if m > 0:
            inverses.append(unit ** m)
        elif m < 0:
            acc = acc * unit ** (-m)

    for factor in inverses:
        acc = acc * (factor.inverse() if hasattr(factor, "inverse") else 1.0 / factor)
    return acc


# --------------------------------------------------------------------------
# theta-quotient characters of the twisted ladders
# --------------------------------------------------------------------------


def _theta_jet(kind, centre, jet, tau, order, product_terms):
    """Numeric or formal theta value at centre + jet."""
    if order is None:
        arg = jet + centre if jet is not None else centre
        return theta_eval(kind, arg, tau, product_terms)
    return theta_qseries(kind, centre, jet, order, product_terms)


def _ratio(num, den):
    if isinstance(num, QSeries) or isinstance(den, QSeries):
        return num * den.inverse()
    if isinstance(den, ChernPoly):
        return num * den.inverse()
    return num / den


def ch_delta(fibers, t, gens, cap):
    """Spinor-bundle character: product over fibers of 2 cos(pi(z + n t))."""
    out = ChernPoly.one(gens, cap)
    for name, rot in fibers:
        jet = ChernPoly.generator(gens, cap, name)
        out = out * (2 * _trig_jet("cos", rot * t, jet))
    return out


def ch_theta_twist(factor, bundle, t, tau=None, *, gens, cap, q_order=None,
                   product_terms=None, exponent=1):
    """Theta-quotient form of one twist factor's equivariant character.

    Fiber factors (Q1V/Q2V/Q3V) produce, per fiber, theta(z + n t)/theta(0)
    of the matching kind; the Q1V case carries the spinor prefactor 2 per
    fiber.  Tangent-ladder factors (Theta1/2/3) produce, per root pair, the
    symmetric-power quotient times the matching theta ratio.  DeltaV is the
    bare spinor character.  With ``q_order`` the result is a formal
    q-expansion (QSeries over ChernPoly); otherwise tau must be given and
    the result is a ChernPoly jet.
    """
    factor = factor if isinstance(factor, TwistFactor) else TwistFactor(factor)
    if (tau is None) == (q_order is None):
        raise PreconditionError("pass exactly one of tau (numeric) or q_order (formal)")
    if factor in _PHI0_CLASS or factor in (TwistFactor.Q1E, TwistFactor.Q2E, TwistFactor.Q3E):
        raise PreconditionError(
            "%s is assembled by the fixed-point engine, not as a standalone quotient"
            % factor
        )
    one = ChernPoly.one(gens, cap)
    if q_order is not None:
        q_order = QExponent.of(q_order)
        acc = QSeries({qexp(0): one}, q_order)
    else:
        acc = one

    if factor is TwistFactor.DELTA_V:
        delta = ch_delta(bundle.fibers(), t, gens, cap)
        return acc * delta

    if factor in _V_KIND:
        kind = _V_KIND[factor]
        for name, rot in bundle.fibers():
            jet = ChernPoly.generator(gens, cap, name)
            num = _theta_jet(kind, rot * t, jet, tau, q_order, product_terms)
            den = _theta_jet(kind, 0.0, None, tau, q_order, product_terms)
            ratio = _ratio(num, den)
            if factor is TwistFactor.Q1V:
                # theta1 ratio carries cos(pi v); the spinor doubling restores
                # the 2cos(pi v) of Delta(V) per fiber
                ratio = ratio * 2.0
            for _ in range(exponent):
                acc = acc * ratio
        return acc

    kind = _TANGENT_KIND[factor]
    for name, rot in bundle.fibers():
        jet = ChernPoly.generator(gens, cap, name)
        centre = rot * t
        # symmetric-power part: sin(pi w) theta'(0) / (pi theta(w))
        if q_order is not None:
            tprime = theta_qseries_regularized(ChernPoly.zero(gens, cap), q_order,
                                               product_terms)
        else:
            tprime = theta_eval_regularized(ChernPoly.zero(gens, cap), tau,
                                            product_terms).constant()
        if centre == 0.0:
            # both sin(pi w) and theta(w) vanish linearly; divide each by w
            if q_order is not None:
                den = theta_qseries_regularized(jet, q_order, product_terms)
            else:
                den = theta_eval_regularized(jet, tau, product_terms)
            s_part = _ratio(tprime * sinc_jet(jet), den)
        else:
            sin_jet = _trig_jet("sin", centre, jet)
            den = _theta_jet(ThetaKind.THETA, centre, jet, tau, q_order, product_terms)
            s_part = _ratio(tprime * sin_jet, den) * (1.0 / cmath.pi)
        num = _theta_jet(kind, centre, jet, tau, q_order, product_terms)
        den2 = _theta_jet(kind, 0.0, None, tau, q_order, product_terms)
        ratio = _ratio(num, den2)
        if kind is ThetaKind.THETA1:
            # exterior ladder with +q^m needs the cosine stripped
            cos_jet = _trig_jet("cos", centre, jet)
            if isinstance(cos_jet, ChernPoly):
                ratio = _ratio(ratio, cos_jet)
            else:
                ratio = ratio * (1.0 / cos_jet)
        for _ in range(exponent):
            acc = acc * (s_part * ratio)
    return acc


# --------------------------------------------------------------------------
# independent tensor-expansion oracle
# --------------------------------------------------------------------------


def ch_twist_oracle(factor, bundle, t, q_order, gens, cap, tau=None):
    """Character of a twisted ladder by literal order-by-order expansion.

    Builds the tensor product of exterior/symmetric powers of the reduced
    bundle as a q-series with polynomial coefficients, using nothing but the
    power-operation characters.  Serves as the independent oracle for
    :func:`ch_theta_twist`; tau is accepted for signature parity and unused
    (the expansion is formal in q).

    The ladder is cut off once the next rung exceeds the requested order;
    orders above q^3 are refused as a cost guard.
    """
    factor = factor if isinstance(factor, TwistFactor) else TwistFactor(factor)
    q_order = QExponent.of(q_order)
    if q_order > ORACLE_MAX_ORDER:
        raise CapacityError(
            "oracle expansion is limited to q^(%s); q^(%s) requested"
            % (ORACLE_MAX_ORDER, q_order)
        )
    one = ChernPoly.one(gens, cap)
    acc = QSeries({qexp(0): one}, q_order)
    tilde = bundle.tilde()

    def lam(exponent, sign):
        return ch_power_op(tilde, "lambda",
                           QSeries.monomial(exponent, sign, q_order),
                           gens, cap, root_scale=TWO_PI_I, circle_t=t)

    def sym(exponent):
        return ch_power_op(tilde, "sym",
                           QSeries.monomial(exponent, 1.0, q_order),
                           gens, cap, root_scale=TWO_PI_I, circle_t=t)

    if factor is TwistFactor.DELTA_V:
        return acc * ch_delta(bundle.fibers(), t, gens, cap)

    if factor in (TwistFactor.Q1V, TwistFactor.Q2V, TwistFactor.Q3V):
        if factor is TwistFactor.Q1V:
            acc = acc * ch_delta(bundle.fibers(), t, gens, cap)
            rungs = [(qexp(n), 1.0) for n in range(1, q_order.eighths // 8 + 1)]
        elif factor is TwistFactor.Q2V:
            rungs = _half_rungs(q_order, -1.0)
        else:
            rungs = _half_rungs(q_order, 1.0)
        for exponent, sign in rungs:
            acc = acc * lam(exponent, sign)
        return acc

    if factor in (TwistFactor.THETA1, TwistFactor.THETA2, TwistFactor.THETA3):
        for n in range(1, q_order.eighths // 8 + 1):
            acc = acc * sym(qexp(n))
        if factor is TwistFactor.THETA1:
            rungs = [(qexp(m), 1.0) for m in range(1, q_order.eighths // 8 + 1)]
        elif factor is TwistFactor.THETA2:
            rungs = _half_rungs(q_order, -1.0)
        else:
            rungs = _half_rungs(q_order, 1.0)
        for exponent, sign in rungs:
            acc = acc * lam(exponent, sign)
        return acc

    raise PreconditionError("oracle covers the Theta and Q(V) ladders, not %s" % factor)


def _half_rungs(q_order, sign):
    out = []
    n = 1
    while True:
        e = qexp(n) - qexp(Fraction(1, 2))
        if e >= q_order:
            return out
        out.append((e, sign))
        n += 1


# --------------------------------------------------------------------------
# odd characters of orthogonal maps
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class OddMapData:
    """Data of a map into SO(N): the rank and the declared vanishing of the
    degree-3 trace class.  N must be even (spinor rank 2^{N/2})."""

    N: int
    c3_vanishes: bool = False

    def __post_init__(self):
        if self.N % 2 != 0 or self.N <= 0:
            raise PreconditionError("the orthogonal rank N must be a positive even integer")

    def trace_generator_names(self, cap):
        """T1, T3, T5, ... up to weight cap; T3 is dropped when its class
        is declared zero."""
        names = []
        for m in range(0, (cap - 1) // 2 + 1):
            w = 2 * m + 1
            if w == 3 and self.c3_vanishes:
                continue
            names.append("T%d" % w)
        return tuple(names)


def odd_trace_generators(odd_map, cap):
    """Generator declaration for the odd trace symbols alone."""
    names = odd_map.trace_generator_names(cap)
    weights = tuple(int(n[1:]) for n in names)
    return Generators(names, weights, (True,) * len(names))


def u_moment(k):
    """Exact value of the u-integral of (u^2 - u)^k over [0, 1]."""
    k = int(k)
    return Fraction((-1) ** k * math.factorial(k) ** 2, math.factorial(2 * k + 1))


def log_derivative_coefficients(kind, tau, k_max, product_terms=None):
    """Taylor coefficients a_k of theta_kind'(x,tau)/theta_kind(x,tau) at x=0.

    Computed from the nilpotent-jet evaluation of the theta product: the jet
    of theta to degree k_max+1, its derivative jet by coefficient shift, and
    one truncated power-series division.
    """
    gens = Generators(("__w__",))
    jet_cap = k_max + 1
    arg = ChernPoly.generator(gens, jet_cap, "__w__")
    th = theta_eval(kind, arg, tau, product_terms)
    c = [th.coefficient((m,)) for m in range(jet_cap + 1)]
    cp = [(m + 1) * c[m + 1] for m in range(jet_cap)]
    if c[0] == 0:
        raise PreconditionError("theta kind %s vanishes at 0; no log derivative" % kind)
    # truncated division cp / c
    a = []
    for m in range(k_max + 1):
        acc = cp[m]
        for j in range(m):
            acc -= a[j] * c[m - j]
        a.append(acc / c[0])
    return a


def odd_ch_Q(j, odd_map, tau, *, cap=7, gens=None, product_terms=None):
    """Odd Chern character of the j-th twisted ladder of the trivial bundle.

    Expands theta_j'/theta_j as a series in x, substitutes the curvature
    x = (u^2-u) W^2/(4 pi^2), integrates each u-monomial exactly, and
    collects the odd traces Tr[W^{2k+1}] into the generators T_{2k+1}.  The
    j=1 ladder carries the spinor rank 2^{N/2}; all carry -1/(8 pi^2).  The
    result is strictly linear in the T generators.
    """
    if j not in (1, 2, 3):
        raise PreconditionError("ladder index must be 1, 2 or 3")
    if cap < 3:
        raise CapacityError("odd characters need degree capacity >= 3 (T3 at least)")
    tau = TauPoint.coerce(tau)
    if gens is None:
        gens = odd_trace_generators(odd_map, cap)
    k_max = (cap - 1) // 2
    a = log_derivative_coefficients(_ODD_KIND[j], tau, k_max, product_terms)
    pref = -(2.0 ** (odd_map.N // 2) if j == 1 else 1.0) / (8 * cmath.pi ** 2)
    out = ChernPoly.zero(gens, cap)
    for k in range(0, k_max + 1):
        if k % 2 == 0:
            # the log derivative of an even theta kind is odd in x, so the
            # even Taylor coefficients vanish identically (T1, T5, ... drop)
            continue
        name = "T%d" % (2 * k + 1)
        if name not in gens.names:
            continue
        coeff = pref * a[k] * float(u_moment(k)) / (4 * cmath.pi ** 2) ** k
        if coeff != 0:
            out = out + ChernPoly.generator(gens, cap, name, coeff)
    return out


_ODD_PAIRS = {
    (1, 2): lambda N: 2.0 ** (N // 2),
    (2, 1): lambda N: 2.0 ** (-(N // 2)),
    (3, 3): lambda N: 1.0,
}


def odd_transform_residual(pair, i, tau, odd_map, *, cap=None, product_terms=None):
    """Defect of the degree-(4i-1) transformation relation between the odd
    characters at -1/tau and at tau.

    Compares the T_{4i-1} coefficient of the source ladder at -1/tau with
    const * tau^{2i} times the target ladder's coefficient at tau, where
    const is 2^{N/2}, 2^{-N/2} or 1 for the pairs 1->2, 2->1, 3->3.
    """
    pair = tuple(pair)
    if pair not in _ODD_PAIRS:
        raise PreconditionError("pair must be one of (1,2), (2,1), (3,3)")
    i = int(i)
    degree = 4 * i - 1
    if cap is None:
        cap = degree
    if cap < degree:
        raise CapacityError("degree %d exceeds capacity %d" % (degree, cap))
    tau = TauPoint.coerce(tau)
    s_tau = tau.shifted(-1.0 / tau.value)
    gens = odd_trace_generators(odd_map, cap)
    src, dst = pair
    name = "T%d" % degree
    lhs_poly = odd_ch_Q(src, odd_map, s_tau, cap=cap, gens=gens,
                        product_terms=product_terms)
    rhs_poly = odd_ch_Q(dst, odd_map, tau, cap=cap, gens=gens,
                        product_terms=product_terms)
    if name in gens.names:
        mono = tuple(1 if n == name else 0 for n in gens.names)
        lhs = lhs_poly.coefficient(mono)
        rhs = rhs_poly.coefficient(mono)
    else:
        # the degree-(4i-1) class is declared zero; both sides vanish with it
        lhs = 0j
        rhs = 0j
    const = _ODD_PAIRS[pair](odd_map.N)
    return abs(lhs - const * tau.value ** (2 * i) * rhs)
