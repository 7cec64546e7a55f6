"""Prime form, Weierstrass sigma machinery and the one-point tower.

Everything lives in a rescaled odd variable z in which all coefficients are
rational polynomials in the generators: the prime form is

    Theta(z) = z * exp( sum_{k>=1} B_{2k}/(2k (2k)!) * E_{2k} * z^{2k} ),

with E_{2k} for k >= 2 reduced into Q[E4, E6].  The same object factors as
exp(E2 z^2 / 24) * sigma~(z) where sigma~ is the (rescaled) Weierstrass
sigma; its Taylor coefficients are also produced by the classical a_{m,n}
recursion, giving an independent second route that prime_form checks.
The Laurent reciprocal 1/Theta is the one-point generating function, and
its z^{2g-1} coefficients are the genus-g one-point invariants; the b_{m,n}
table packages the reciprocal-sigma coefficients the same way.
"""

from dataclasses import dataclass
from functools import lru_cache
from math import factorial

from ._backend import conv_trunc
from .errors import InconsistentTables, InvalidSeries
from .modular import E2, E4, E6, QMPolynomial, bernoulli, reduce_e2k
from .rational import ONE, ZERO, rat

QM_ZERO = QMPolynomial.zero()
QM_ONE = QMPolynomial.constant(ONE)


class ZLaurent:
    """Laurent series in z with QMPolynomial coefficients.

    Stored densely from the valuation up to a truncation order; leading
    coefficient nonzero unless the series is zero.
    """

    __slots__ = ("val", "coeffs")

    def __init__(self, val, coeffs):
        coeffs = list(coeffs)
        while coeffs and coeffs[0].is_zero():
            coeffs.pop(0)
            val += 1
        if not coeffs:
            val = 0
            coeffs = [QM_ZERO]
        self.val = val
        self.coeffs = tuple(coeffs)

    @property
    def order(self):
        return self.val + len(self.coeffs) - 1

    def coefficient(self, n):
        i = n - self.val
        if i < 0 or i >= len(self.coeffs):
            return QM_ZERO
        return self.coeffs[i]

    def is_zero(self):
        return all(c.is_zero() for c in self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, ZLaurent):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return True
        return self.val == other.val and self.coeffs == other.coeffs

    def __repr__(self):
        bits = [
            f"({c!r})*z^{self.val + i}"
            for i, c in enumerate(self.coeffs)
            if not c.is_zero()
        ]
        return "<" + (" + ".join(bits) or "0") + f" + O(z^{self.order + 1})>"

    def __add__(self, other):
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        val = min(self.val, other.val)
        order = min(self.order, other.order)
        return ZLaurent(
            val,
            [self.coefficient(n) + other.coefficient(n)
             for n in range(val, order + 1)],
        )

    def __neg__(self):
        return ZLaurent(self.val, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, ZLaurent):
            if self.is_zero() or other.is_zero():
                return ZLaurent(0, [QM_ZERO])
            n = min(len(self.coeffs), len(other.coeffs)) - 1
            out = conv_trunc(list(self.coeffs), list(other.coeffs), n, QM_ZERO)
            return ZLaurent(self.val + other.val, out)
        if isinstance(other, QMPolynomial):
            return ZLaurent(self.val, [c * other for c in self.coeffs])
        c = rat(other)
        return ZLaurent(self.val, [x * c for x in self.coeffs])

    __rmul__ = __mul__

    def reciprocal(self):
        """1/self; needs an invertible (constant) leading coefficient."""
        if self.is_zero():
            raise InvalidSeries("reciprocal of the zero z-series")
        lead = self.coeffs[0]
        if not lead.is_constant():
            raise InvalidSeries(
                "leading z-coefficient must be a rational constant to invert"
            )
        inv0 = QMPolynomial.constant(ONE / lead.constant_value())
        n = len(self.coeffs) - 1
        out = [QM_ZERO] * (n + 1)
        out[0] = inv0
        for k in range(1, n + 1):
            acc = QM_ZERO
            for i in range(1, k + 1):
                ai = self.coeffs[i]
                if ai:
                    acc = acc + ai * out[k - i]
            out[k] = -(inv0 * acc)
        return ZLaurent(-self.val, out)

    def derive_z(self):
        """d/dz, including negative exponents."""
        out = []
        for i, c in enumerate(self.coeffs):
            n = self.val + i
            out.append(c * n)
        if self.val == 0:
            out.pop(0)
            return ZLaurent(0, out)
        return ZLaurent(self.val - 1, out)


def _exp_power_part(coeffs_by_exp, order):
    """exp of sum c_k z^k (no constant term) as dense QM coefficients 0..order.

    Uses the f' = a' f recurrence over the polynomial coefficient ring.
    """
    a = [coeffs_by_exp.get(k, QM_ZERO) for k in range(order + 1)]
    out = [QM_ZERO] * (order + 1)
    out[0] = QM_ONE
    for k in range(1, order + 1):
        acc = QM_ZERO
        for i in range(1, k + 1):
            if a[i]:
                acc = acc + (a[i] * i) * out[k - i]
        out[k] = acc * rat(1, k)
    return out


@lru_cache(maxsize=None)
def _reduced_e2k(k):
    """E_{2k} as a QMPolynomial: generator for k <= 3, reduced beyond."""
    if k == 1:
        return E2
    if k == 2:
        return E4
    if k == 3:
        return E6
    return reduce_e2k(2 * k)


def _log_prime_form_exponent(z_order, include_weight_two=True):
    """{2k: B_{2k}/(2k (2k)!) * E_{2k}} for 2k <= z_order."""
    out = {}
    for k in range(1 if include_weight_two else 2, z_order // 2 + 1):
        coeff = bernoulli(2 * k) / (2 * k * factorial(2 * k))
        out[2 * k] = _reduced_e2k(k) * coeff
    return out


@lru_cache(maxsize=None)
def sigma_tilde(z_order):
    """Rescaled Weierstrass sigma: z*exp(sum_{k>=2} B_{2k}/(2k(2k)!) E_{2k} z^{2k}).

    Equals 2*pi*i times the classical sigma in the rescaled variable, so
    every coefficient is a rational polynomial in E4, E6 alone.
    """
    if z_order < 1:
        raise InvalidSeries("sigma_tilde needs z-order >= 1")
    body = _exp_power_part(
        _log_prime_form_exponent(z_order - 1, include_weight_two=False),
        z_order - 1,
    )
    return ZLaurent(1, body)


@lru_cache(maxsize=None)
def weierstrass_a(bound):
    """a_{m,n} for 4m + 6n <= bound, from the classical recursion

        a_{m,n} = 3(m+1) a_{m+1,n-1} + (16/3)(n+1) a_{m-2,n+1}
                  - (1/6)(4m+6n-1)(4m+6n-2) a_{m-1,n},
    a_{0,0} = 1, entries with a negative index vanishing.

    Filled in increasing total z-degree 4m + 6n, within which the first
    term refers to the same degree: the recursion is run in decreasing n
    so a_{m+1,n-1} is already known.
    """
    table = {(0, 0): ONE}

    def get(m, n):
        if m < 0 or n < 0:
            return ZERO
        return table.get((m, n), ZERO)

    for degree in range(2, bound + 1, 2):
        pairs = [
            (m, n)
            for n in range(degree // 6 + 1)
            for m in range(degree // 4 + 1)
            if 4 * m + 6 * n == degree
        ]
        for m, n in sorted(pairs, key=lambda p: -p[1]):
            w = 4 * m + 6 * n
            table[(m, n)] = (
                3 * (m + 1) * get(m + 1, n - 1)
                + rat(16, 3) * (n + 1) * get(m - 2, n + 1)
                - rat(1, 6) * (w - 1) * (w - 2) * get(m - 1, n)
            )
    return dict(table)


def _qm_e4_e6_block(m, n):
    """(E4/24)^m * (-E6/108)^n as a QMPolynomial monomial."""
    c = rat(1, 24) ** m * rat(-1, 108) ** n
    return QMPolynomial({(0, m, n): c})


def sigma_tilde_from_table(z_order):
    """Second route to sigma~ via the a_{m,n} recursion:

        sigma~(z) = sum a_{m,n}/(4m+6n+1)! (E4/24)^m (-E6/108)^n z^{4m+6n+1}.
    """
    table = weierstrass_a(max(z_order - 1, 0))
    coeffs = [QM_ZERO] * z_order
    for (m, n), a in table.items():
        e = 4 * m + 6 * n
        if e <= z_order - 1 and a:
            coeffs[e] = coeffs[e] + _qm_e4_e6_block(m, n) * (
                a / factorial(e + 1)
            )
    return ZLaurent(1, coeffs)


@lru_cache(maxsize=None)
def b_table(bound):
    """b_{m,n} defined by 1/sigma~ = (1/z) sum b_{m,n} (E4/24)^m (-E6/108)^n z^{4m+6n}.

    Computed by Laurent reciprocal and coefficient matching; the matching
    must consume every monomial (anything left over signals a rescaling
    bug and raises).
    """
    recip = sigma_tilde(bound + 1).reciprocal()
    table = {}
    for degree in range(0, bound + 1, 2):
        coeff = recip.coefficient(degree - 1)
        remaining = dict(coeff.terms)
        for n in range(degree // 6 + 1):
            for m in range(degree // 4 + 1):
                if 4 * m + 6 * n != degree:
                    continue
                key = (0, m, n)
                c = remaining.pop(key, ZERO)
                table[(m, n)] = c * rat(24) ** m * rat(-108) ** n
        if remaining:
            raise InconsistentTables(
                f"1/sigma~ coefficient at z^{degree - 1} has monomials "
                f"outside the (E4/24, -E6/108) lattice: {sorted(remaining)}"
            )
    return dict(table)


@dataclass(frozen=True)
class WeierstrassTable:
    """Both recursion tables, keyed by (m, n) with 4m + 6n <= bound."""

    bound: int
    a: dict
    b: dict


def weierstrass_table(bound):
    return WeierstrassTable(bound, weierstrass_a(bound), b_table(bound))


@lru_cache(maxsize=None)
def prime_form(z_order):
    """Theta(z) = z exp(sum_{k>=1} B_{2k}/(2k(2k)!) E_{2k} z^{2k}).

    Assembled both directly and as exp(E2 z^2/24) * sigma~(z); the two
    routes must agree coefficientwise.
    """
    if z_order < 1:
        raise InvalidSeries("prime_form needs z-order >= 1")
    direct = ZLaurent(
        1,
        _exp_power_part(_log_prime_form_exponent(z_order - 1), z_order - 1),
    )
    e2_factor = ZLaurent(
        0,
        _exp_power_part({2: E2 * rat(1, 24)}, z_order - 1),
    )
    via_sigma = e2_factor * sigma_tilde(z_order)
    if direct != via_sigma:
        raise InconsistentTables(
            "prime form routes disagree (exponential vs E2-factored sigma)"
        )
    return direct


@lru_cache(maxsize=None)
def one_over_theta(z_order):
    """Laurent reciprocal of the prime form: the one-point tower |z^{2g-1}|."""
    return prime_form(z_order).reciprocal()


@lru_cache(maxsize=None)
def log_theta_minus_log_z(z_order):
    """ln Theta - ln z = sum_{k>=1} B_{2k}/(2k(2k)!) E_{2k} z^{2k}, dense."""
    exponent = _log_prime_form_exponent(z_order, include_weight_two=True)
    return ZLaurent(
        0, [exponent.get(k, QM_ZERO) for k in range(z_order + 1)]
    )


def log_theta_deriv(m, z_order):
    """The m-th z-derivative of ln Theta (m >= 1); valuation -m.

    ln Theta = ln z + (even power series), so the derivative splits into
    (-1)^{m-1} (m-1)! z^{-m} plus the termwise derivative of the series.
    """
    if m < 1:
        raise InvalidSeries("log_theta_deriv needs m >= 1")
    body = log_theta_minus_log_z(z_order + m)
    for _ in range(m):
        body = body.derive_z()
    coeffs = [QM_ZERO] * (z_order + m + 1)
    coeffs[0] = QMPolynomial.constant(rat((-1) ** (m - 1) * factorial(m - 1)))
    for n in range(-m + 1, z_order + 1):
        coeffs[n + m] = body.coefficient(n)
    return ZLaurent(-m, coeffs)


def theta_z_derivative(m, z_order):
    """Theta^{(m)}(z) as a ZLaurent (power series; termwise derivative)."""
    out = prime_form(z_order + m)
    for _ in range(m):
        out = out.derive_z()
    return ZLaurent(out.val, out.coeffs[: z_order - out.val + 1])


def onepoint_qm(g, z_order=None):
    """[z^{2g-1}] of 1/Theta: the genus-g one-point function, weight 2g."""
    if z_order is None:
        z_order = 2 * g + 1
    return one_over_theta(max(z_order, 2 * g + 1)).coefficient(2 * g - 1)


def onepoint_from_b(g, bound=None):
    """The same invariant from the b-table route:

        sum_{l+2m+3n=g} (b_{m,n}/l!) (-E2/24)^l (E4/24)^m (-E6/108)^n.
    """
    if bound is None:
        bound = 2 * g
    table = b_table(max(bound, 2 * g))
    out = QMPolynomial.zero()
    neg_e2_24 = E2 * rat(-1, 24)
    for m in range(g // 2 + 1):
        for n in range(g // 3 + 1):
            if 2 * m + 3 * n > g:
                continue
            l = g - 2 * m - 3 * n
            b = table.get((m, n), ZERO)
            if not b:
                continue
            out = out + (neg_e2_24 ** l) * _qm_e4_e6_block(m, n) * (
                b / factorial(l)
            )
    return out
