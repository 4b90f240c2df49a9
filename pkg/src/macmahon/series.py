"""Truncated formal power series over exact coefficient rings.

The engine is deliberately generic: coefficients only need ``+``, ``-``,
``*``, ``==`` and division by integers, plus a :class:`CoeffRing`
descriptor supplying the two units.  The same :class:`Series` class then
covers every nesting used in this package:

* series in q over `Fraction` (divisor generating functions),
* series in q over :class:`LambdaPoly` (weight-graded expansions),
* series in X or T whose coefficients are themselves series in q,
* series in X over polynomials in named generators.

Truncation is explicit and lossy: a binary operation returns a series whose
order is the minimum of the operands' orders, i.e. exactly the range of
coefficients both inputs determine.  All values are immutable after
construction and every operation is a pure function.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable


class NonzeroConstantTermError(ValueError):
    """A series operation required a vanishing constant term."""


def _reject_float(x):
    if isinstance(x, (float, complex)):
        raise TypeError("exact arithmetic only: float/complex not allowed here")
    return x


class CoeffRing:
    """Descriptor of a commutative coefficient ring.

    Elements carry their own arithmetic through operators; the descriptor
    only pins down the additive and multiplicative units so generic series
    code can build constants of the right kind.
    """

    __slots__ = ("zero", "one")

    def __init__(self, zero, one):
        self.zero = zero
        self.one = one

    def __eq__(self, other):
        if not isinstance(other, CoeffRing):
            return NotImplemented
        return self.zero == other.zero and self.one == other.one

    def __repr__(self):
        return f"CoeffRing(zero={self.zero!r}, one={self.one!r})"


#: The rational numbers, the base ring of everything else.
RATIONALS = CoeffRing(Fraction(0), Fraction(1))


class LambdaPoly:
    """Polynomial in the formal weight symbol L = (2*pi*i)^2.

    Keeps track of the powers of 2*pi*i attached to weight-graded objects;
    under this convention pi^2 = -L/4.  Stored sparsely as
    ``{exponent: Fraction}`` with no zero entries, so equality is
    structural.  The L^0 part is the purely rational component.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        clean = {}
        if coeffs:
            for e, c in coeffs.items():
                e = int(e)
                if e < 0:
                    raise ValueError("negative L exponent")
                c = Fraction(_reject_float(c))
                if c:
                    clean[e] = c
        self.coeffs = clean

    @classmethod
    def term(cls, exponent: int, coeff=1) -> "LambdaPoly":
        return cls({exponent: Fraction(coeff)})

    @property
    def constant(self) -> Fraction:
        return self.coeffs.get(0, Fraction(0))

    def exponents(self):
        return set(self.coeffs)

    def is_homogeneous(self, degree: int) -> bool:
        """True when every monomial (if any) has exponent ``degree``."""
        return all(e == degree for e in self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __add__(self, other):
        if isinstance(other, LambdaPoly):
            out = dict(self.coeffs)
            for e, c in other.coeffs.items():
                s = out.get(e, 0) + c
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
            return LambdaPoly(out)
        if isinstance(other, (int, Fraction)):
            return self + LambdaPoly({0: other})
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return LambdaPoly({e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other if isinstance(other, LambdaPoly) else LambdaPoly({0: -Fraction(other)}))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, LambdaPoly):
            out = {}
            for e1, c1 in self.coeffs.items():
                for e2, c2 in other.coeffs.items():
                    e = e1 + e2
                    s = out.get(e, 0) + c1 * c2
                    if s:
                        out[e] = s
                    else:
                        out.pop(e, None)
            return LambdaPoly(out)
        if isinstance(other, (int, Fraction)):
            if not other:
                return LambdaPoly()
            return LambdaPoly({e: c * other for e, c in self.coeffs.items()})
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return LambdaPoly({e: c / Fraction(other) for e, c in self.coeffs.items()})
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, LambdaPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == ({0: Fraction(other)} if other else {})
        return NotImplemented

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for e in sorted(self.coeffs):
            c = self.coeffs[e]
            if e == 0:
                parts.append(str(c))
            elif c == 1:
                parts.append("L" if e == 1 else f"L^{e}")
            else:
                parts.append(f"{c}*L" if e == 1 else f"{c}*L^{e}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"LambdaPoly({self.coeffs!r})"


#: Polynomials in L = (2*pi*i)^2 as a coefficient ring.
LAMBDAS = CoeffRing(LambdaPoly(), LambdaPoly({0: 1}))


def _depth(x) -> int:
    return x._series_depth if isinstance(x, Series) else 0


class Series:
    """A truncated power series: ``coeffs[i]`` is the coefficient of x^i.

    ``order`` is the highest retained power; higher coefficients are
    unknown, not zero.  Coefficients live in ``ring``; integers passed as
    coefficients are embedded via ``ring.one``.

    >>> x = Series([0, 1, 0, 0])
    >>> ((1 + x) * (1 - x)).coeffs
    (Fraction(1, 1), Fraction(0, 1), Fraction(-1, 1), Fraction(0, 1))
    """

    __slots__ = ("ring", "coeffs", "_series_depth")

    def __init__(self, coeffs, ring: CoeffRing = RATIONALS):
        coeffs = tuple(
            ring.one * c if isinstance(c, int) else _reject_float(c)
            for c in coeffs
        )
        if not coeffs:
            raise ValueError("a series needs at least its constant coefficient")
        self.ring = ring
        self.coeffs = coeffs
        self._series_depth = 1 + _depth(coeffs[0])

    @classmethod
    def constant(cls, value, order: int, ring: CoeffRing = RATIONALS) -> "Series":
        if order < 0:
            raise ValueError("order must be >= 0")
        return cls((value,) + (ring.zero,) * order, ring)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, i: int):
        if not 0 <= i <= self.order:
            raise IndexError(f"coefficient {i} outside truncation order {self.order}")
        return self.coeffs[i]

    def __len__(self):
        return len(self.coeffs)

    def _zero_like(self, order=None):
        return Series.constant(self.ring.zero, self.order if order is None else order, self.ring)

    def _one_like(self, order=None):
        return Series.constant(self.ring.one, self.order if order is None else order, self.ring)

    def _is_peer(self, other) -> bool:
        return isinstance(other, Series) and other._series_depth == self._series_depth

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other):
        if self._is_peer(other):
            n = min(self.order, other.order)
            return Series(
                tuple(a + b for a, b in zip(self.coeffs[: n + 1], other.coeffs[: n + 1])),
                self.ring,
            )
        if isinstance(other, Series) and other._series_depth > self._series_depth:
            return other + self  # the deeper series absorbs this one as a scalar
        _reject_float(other)
        return Series((self.coeffs[0] + other,) + self.coeffs[1:], self.ring)

    __radd__ = __add__

    def __neg__(self):
        return Series(tuple(-c for c in self.coeffs), self.ring)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if self._is_peer(other):
            n = min(self.order, other.order)
            a, b = self.coeffs, other.coeffs
            out = []
            for k in range(n + 1):
                acc = a[0] * b[k]
                for i in range(1, k + 1):
                    acc = acc + a[i] * b[k - i]
                out.append(acc)
            return Series(tuple(out), self.ring)
        if isinstance(other, Series) and other._series_depth > self._series_depth:
            return other * self  # the deeper series absorbs this one as a scalar
        _reject_float(other)
        return Series(tuple(c * other for c in self.coeffs), self.ring)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Series):
            raise TypeError("series division is not supported; divide by a scalar")
        _reject_float(other)
        return Series(tuple(c / other for c in self.coeffs), self.ring)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("series powers take a non-negative integer exponent")
        result = self._one_like()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other):
        if self._is_peer(other):
            return self.order == other.order and self.coeffs == other.coeffs
        if isinstance(other, Series):
            return False
        try:
            return self == Series.constant(other, self.order, self.ring)
        except TypeError:
            return NotImplemented

    # -- structural helpers -------------------------------------------

    def truncate(self, order: int) -> "Series":
        if order > self.order:
            raise ValueError(f"cannot extend truncation order {self.order} to {order}")
        return Series(self.coeffs[: order + 1], self.ring)

    def shift(self, k: int) -> "Series":
        """Multiply by x^k, keeping the same truncation order."""
        if k < 0:
            raise ValueError("shift amount must be >= 0")
        if k > self.order:
            return self._zero_like()
        zeros = (self.ring.zero,) * k
        return Series(zeros + self.coeffs[: self.order + 1 - k], self.ring)

    def dilate(self, c) -> "Series":
        """Rescale the argument: return f(c*x)."""
        _reject_float(c)
        out, power = [], None
        for i, a in enumerate(self.coeffs):
            power = 1 if i == 0 else (c if i == 1 else power * c)
            out.append(a if i == 0 else a * power)
        return Series(tuple(out), self.ring)

    def even_part(self) -> "Series":
        """Coefficients of even powers, reindexed: f(x) = g(x^2) + x*h(x^2) -> g."""
        return Series(self.coeffs[0::2], self.ring)

    def odd_part(self) -> "Series":
        """Coefficients of odd powers, reindexed: f(x) = g(x^2) + x*h(x^2) -> h."""
        if self.order < 1:
            raise ValueError("need order >= 1 for an odd part")
        return Series(self.coeffs[1::2], self.ring)

    def map_coefficients(self, fn: Callable, ring: CoeffRing) -> "Series":
        return Series(tuple(fn(c) for c in self.coeffs), ring)

    # -- analytic operations ------------------------------------------

    def exp(self) -> "Series":
        """exp of a series with zero constant term, truncated at this order."""
        if not self.coeffs[0] == self.ring.zero:
            raise NonzeroConstantTermError("exp needs a vanishing constant term")
        one = self._one_like()
        ans = one
        for n in range(self.order, 0, -1):
            ans = one + (self * ans) / n
        return ans

    def compose(self, inner: "Series") -> "Series":
        """Substitute ``inner`` (zero constant term) into this series."""
        if not self._is_peer(inner):
            raise TypeError("composition needs two series over the same ring level")
        if not inner.coeffs[0] == inner.ring.zero:
            raise NonzeroConstantTermError("composition needs a vanishing inner constant term")
        order = min(self.order, inner.order)
        inner = inner.truncate(order)
        result = Series.constant(self.coeffs[order], order, self.ring)
        for i in range(order - 1, -1, -1):
            result = result * inner + self.coeffs[i]
        return result

    # -- display -------------------------------------------------------

    def poly_str(self, var: str = "q") -> str:
        """Readable polynomial rendering, omitting zero terms."""
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == self.ring.zero:
                continue
            cs = str(c)
            wrap = f"({cs})" if any(ch in cs[1:] for ch in "+-* ") else cs
            if i == 0:
                parts.append(wrap)
            elif wrap == "1":
                parts.append(var if i == 1 else f"{var}^{i}")
            else:
                parts.append(f"{wrap}*{var}" if i == 1 else f"{wrap}*{var}^{i}")
        if not parts:
            return "0"
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"Series({list(self.coeffs)!r})"

    def __str__(self):
        return self.poly_str("x")


def series_ring(coeff_ring: CoeffRing, order: int) -> CoeffRing:
    """Ring descriptor whose elements are order-``order`` series over ``coeff_ring``.

    Using it as the coefficient ring of an outer :class:`Series` gives
    two-level objects (series in X or T of series in q) in which every inner
    series shares the same truncation order by construction.
    """
    return CoeffRing(
        Series.constant(coeff_ring.zero, order, coeff_ring),
        Series.constant(coeff_ring.one, order, coeff_ring),
    )


def arcsin_series(x_order: int) -> Series:
    """Taylor expansion of arcsin(x) to the given order, exact rationals.

    Coefficients come from the term-ratio recurrence
    c_{j+1} = c_j * (2j+1)^2 / ((2j+2)(2j+3)), which matches the closed form
    binom(2j, j) / (4^j (2j+1)) for the coefficient of x^(2j+1).
    """
    if x_order < 1:
        raise ValueError("arcsin series needs x_order >= 1")
    coeffs = [Fraction(0)] * (x_order + 1)
    c = Fraction(1)
    j = 0
    while 2 * j + 1 <= x_order:
        coeffs[2 * j + 1] = c
        c = c * (2 * j + 1) ** 2 / ((2 * j + 2) * (2 * j + 3))
        j += 1
    return Series(coeffs)


def lift_rationals(f: Series, ring: CoeffRing) -> Series:
    """Embed a rational series into ``ring`` coefficientwise (c -> c * one)."""
    return f.map_coefficients(lambda c: ring.one * c, ring)
