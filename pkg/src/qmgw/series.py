"""Truncated formal power/Laurent series with exact rational coefficients.

A :class:`PowerSeries` is a dense coefficient vector in one tagged formal
variable, truncated at an explicit order D (coefficients for exponents
0..D).  Arithmetic never extends a truncation: binary operations carry the
minimum of the operand orders.  Variable tags are enforced at runtime so
q-frame and s-frame objects cannot be mixed by accident.

Values are immutable after construction and safe to share across threads.
"""

from .errors import InvalidSeries, VariableMismatch
from .rational import ONE, ZERO, rat
from ._backend import conv_trunc

VARIABLES = ("q", "s", "t", "x", "z")

THETA_Q = "theta_q"  # q * d/dq
D_DS = "d_ds"  # plain d/ds
DERIVE_MODES = (THETA_Q, D_DS)


class PowerSeries:
    """Σ_{n=0}^{D} c_n var^n, exact rational c_n."""

    __slots__ = ("var", "coeffs")

    def __init__(self, var, coeffs):
        if var not in VARIABLES:
            raise InvalidSeries(f"unknown variable tag {var!r}")
        self.var = var
        self.coeffs = tuple(rat(c) for c in coeffs)
        if not self.coeffs:
            raise InvalidSeries("a truncated series needs at least order 0")

    # -- constructors ----------------------------------------------------
    @classmethod
    def zero(cls, var, order):
        return cls(var, [ZERO] * (order + 1))

    @classmethod
    def one(cls, var, order):
        return cls.constant(var, ONE, order)

    @classmethod
    def constant(cls, var, value, order):
        return cls(var, [rat(value)] + [ZERO] * order)

    @classmethod
    def identity(cls, var, order):
        """The series 'var' itself."""
        return cls.monomial(var, 1, ONE, order)

    @classmethod
    def monomial(cls, var, exponent, coeff, order):
        c = [ZERO] * (order + 1)
        if 0 <= exponent <= order:
            c[exponent] = rat(coeff)
        return cls(var, c)

    # -- basic queries ---------------------------------------------------
    @property
    def order(self):
        return len(self.coeffs) - 1

    def coefficient(self, n):
        if n < 0 or n > self.order:
            return ZERO
        return self.coeffs[n]

    def is_zero(self):
        return not any(self.coeffs)

    def valuation(self):
        """Index of the first nonzero coefficient; None for the zero series."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return None

    def truncate(self, order):
        if order >= self.order:
            return self
        return PowerSeries(self.var, self.coeffs[: order + 1])

    def __eq__(self, other):
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return self.var == other.var and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.var, self.coeffs))

    def __repr__(self):
        terms = [
            f"{c}*{self.var}^{n}" for n, c in enumerate(self.coeffs) if c
        ]
        body = " + ".join(terms) if terms else "0"
        return f"<{body} + O({self.var}^{self.order + 1})>"

    def _check_var(self, other):
        if self.var != other.var:
            raise VariableMismatch(
                f"cannot combine series in {self.var!r} and {other.var!r}"
            )

    # -- ring operations -------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, PowerSeries):
            return self + PowerSeries.constant(self.var, other, self.order)
        self._check_var(other)
        n = min(self.order, other.order)
        return PowerSeries(
            self.var, [self.coeffs[i] + other.coeffs[i] for i in range(n + 1)]
        )

    __radd__ = __add__

    def __neg__(self):
        return PowerSeries(self.var, [-c for c in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, PowerSeries):
            return self - PowerSeries.constant(self.var, other, self.order)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, PowerSeries):
            c = rat(other)
            return PowerSeries(self.var, [c * x for x in self.coeffs])
        self._check_var(other)
        n = min(self.order, other.order)
        return PowerSeries(
            self.var, conv_trunc(list(self.coeffs), list(other.coeffs), n, ZERO)
        )

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        if isinstance(scalar, PowerSeries):
            return self.divide(scalar)
        return self * (ONE / rat(scalar))

    def __pow__(self, k):
        if k < 0:
            return self.reciprocal() ** (-k)
        result = PowerSeries.one(self.var, self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    # -- inverse / transcendental ----------------------------------------
    def reciprocal(self):
        """1/self; requires an invertible (nonzero) constant term."""
        a0 = self.coeffs[0]
        if not a0:
            raise InvalidSeries("reciprocal needs a unit constant term")
        n = self.order
        inv0 = ONE / a0
        out = [ZERO] * (n + 1)
        out[0] = inv0
        for k in range(1, n + 1):
            acc = ZERO
            for i in range(1, k + 1):
                ai = self.coeffs[i]
                if ai:
                    acc += ai * out[k - i]
            out[k] = -inv0 * acc
        return PowerSeries(self.var, out)

    def exp(self):
        """exp(self); requires zero constant term."""
        if self.coeffs[0]:
            raise InvalidSeries("exp needs a zero constant term")
        n = self.order
        out = [ZERO] * (n + 1)
        out[0] = ONE
        for k in range(1, n + 1):
            acc = ZERO
            for i in range(1, k + 1):
                ai = self.coeffs[i]
                if ai:
                    acc += i * ai * out[k - i]
            out[k] = acc / k
        return PowerSeries(self.var, out)

    def log(self):
        """log(self); requires constant term exactly 1."""
        if self.coeffs[0] != ONE:
            raise InvalidSeries("log needs constant term 1")
        n = self.order
        out = [ZERO] * (n + 1)
        for k in range(1, n + 1):
            acc = ZERO
            for i in range(1, k):
                if out[i]:
                    acc += i * out[i] * self.coeffs[k - i]
            out[k] = self.coeffs[k] - acc / k
        return PowerSeries(self.var, out)

    def compose(self, inner):
        """self(inner); inner must have zero constant term.

        The result lives in inner's variable at the common truncation.
        """
        if not isinstance(inner, PowerSeries):
            raise InvalidSeries("compose expects a series argument")
        if inner.coeffs[0]:
            raise InvalidSeries("compose needs inner constant term 0")
        n = min(self.order, inner.order)
        g = inner.truncate(n)
        # Horner scheme from the top coefficient down.
        result = PowerSeries.constant(g.var, self.coefficient(n), n)
        for k in range(n - 1, -1, -1):
            result = result * g + self.coefficient(k)
        return result

    # -- calculus ----------------------------------------------------------
    def derive(self, mode):
        """Primed derivative: theta_q is var*d/dvar, d_ds is plain d/dvar."""
        if mode == THETA_Q:
            return PowerSeries(
                self.var, [n * c for n, c in enumerate(self.coeffs)]
            )
        if mode == D_DS:
            if self.order == 0:
                return PowerSeries.zero(self.var, 0)
            return PowerSeries(
                self.var,
                [n * self.coeffs[n] for n in range(1, self.order + 1)],
            )
        raise InvalidSeries(f"unknown derivative mode {mode!r}")

    def integrate_ds(self, constant=ZERO):
        """Antiderivative for d/ds; inverse of derive(D_DS) up to constant."""
        out = [rat(constant)]
        for n, c in enumerate(self.coeffs):
            out.append(c / (n + 1))
        return PowerSeries(self.var, out)

    def subst_power(self, k):
        """Substitute var -> var^k (k >= 1), truncated at the same order."""
        if k < 1:
            raise InvalidSeries("subst_power needs k >= 1")
        out = [ZERO] * (self.order + 1)
        for n, c in enumerate(self.coeffs):
            if c and n * k <= self.order:
                out[n * k] = c
        return PowerSeries(self.var, out)

    def shift(self, k):
        """Multiply by var^k (k >= 0), truncating at the same order."""
        out = [ZERO] * k + list(self.coeffs)
        return PowerSeries(self.var, out[: self.order + 1])

    def divide(self, other):
        """Exact series division self/other for series of equal valuation.

        Both operands are shifted down by the shared valuation, after which
        the divisor has a unit constant term.  The result is truncated at
        min(D) - valuation.
        """
        if not isinstance(other, PowerSeries):
            return self * (ONE / rat(other))
        self._check_var(other)
        v = other.valuation()
        if v is None:
            raise InvalidSeries("division by the zero series")
        if v and any(self.coeffs[:v]):
            raise InvalidSeries("division would produce negative exponents")
        n = min(self.order, other.order) - v
        num = PowerSeries(self.var, self.coeffs[v : v + n + 1])
        den = PowerSeries(self.var, other.coeffs[v : v + n + 1])
        return num * den.reciprocal()

    def retag(self, var):
        """Same coefficients, different formal variable (explicit reframing)."""
        return PowerSeries(var, self.coeffs)


# Module-level aliases matching the operation names used throughout.
def mul(a, b):
    return a * b


def reciprocal(a):
    return a.reciprocal()


def exp(a):
    return a.exp()


def log(a):
    return a.log()


def compose(f, g):
    return f.compose(g)


def derive(a, mode):
    return a.derive(mode)


class LaurentSeries:
    """Σ_{n=v}^{D} c_n var^n with possibly negative valuation v.

    Invariant: the leading stored coefficient is nonzero unless the series
    is identically zero (in which case valuation is normalized to 0).
    """

    __slots__ = ("var", "val", "coeffs")

    def __init__(self, var, val, coeffs):
        coeffs = [rat(c) for c in coeffs]
        # normalize: strip leading zeros, keep truncation order fixed
        while coeffs and not coeffs[0]:
            coeffs.pop(0)
            val += 1
        if not coeffs:
            val = 0
            coeffs = [ZERO]
        self.var = var
        self.val = val
        self.coeffs = tuple(coeffs)

    @classmethod
    def from_power_series(cls, ps):
        return cls(ps.var, 0, list(ps.coeffs))

    @property
    def order(self):
        """Largest represented exponent."""
        return self.val + len(self.coeffs) - 1

    def coefficient(self, n):
        i = n - self.val
        if i < 0 or i >= len(self.coeffs):
            return ZERO
        return self.coeffs[i]

    def is_zero(self):
        return not any(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return (
            self.var == other.var
            and self.val == other.val
            and self.coeffs == other.coeffs
        )

    def __repr__(self):
        terms = [
            f"{c}*{self.var}^{self.val + i}"
            for i, c in enumerate(self.coeffs)
            if c
        ]
        body = " + ".join(terms) if terms else "0"
        return f"<{body} + O({self.var}^{self.order + 1})>"

    def _check_var(self, other):
        if self.var != other.var:
            raise VariableMismatch(
                f"cannot combine series in {self.var!r} and {other.var!r}"
            )

    def __add__(self, other):
        self._check_var(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        val = min(self.val, other.val)
        order = min(self.order, other.order)
        out = [
            self.coefficient(n) + other.coefficient(n)
            for n in range(val, order + 1)
        ]
        return LaurentSeries(self.var, val, out)

    def __neg__(self):
        return LaurentSeries(self.var, self.val, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, LaurentSeries):
            c = rat(other)
            return LaurentSeries(self.var, self.val, [c * x for x in self.coeffs])
        self._check_var(other)
        if self.is_zero() or other.is_zero():
            return LaurentSeries(self.var, 0, [ZERO])
        n = min(len(self.coeffs), len(other.coeffs)) - 1
        out = conv_trunc(list(self.coeffs), list(other.coeffs), n, ZERO)
        return LaurentSeries(self.var, self.val + other.val, out)

    __rmul__ = __mul__

    def reciprocal(self):
        """1/self; valuation negates, product with self is 1 to truncation."""
        if self.is_zero():
            raise InvalidSeries("reciprocal of the zero Laurent series")
        unit = PowerSeries(self.var, self.coeffs)
        return LaurentSeries(self.var, -self.val, unit.reciprocal().coeffs)


def reciprocal_laurent(a):
    return a.reciprocal()
