"""Exact scalars: arbitrary-precision rationals and sparse parameter polynomials.

Everything in this package is computed over Q or over the polynomial ring
Q[l1, l2, l3, h, a].  Here l1, l2, l3 are the central parameters (they double
as the levels of the twisted sectors), h is a highest weight, and a is a
scale variable reserved for solving symmetry constraints.  There is no
floating point anywhere.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping

__all__ = [
    "Rational",
    "ParamPoly",
    "UnboundParameterError",
    "VARS",
]

#: Exact rational scalar.  ``fractions.Fraction`` already enforces the
#: required normal form: reduced, positive denominator, zero is 0/1, and
#: ``str()`` prints "p/q" with "/q" omitted when q = 1.
Rational = Fraction

#: Fixed, ordered variable set of the parameter ring.
VARS = ("l1", "l2", "l3", "h", "a")

_VAR_INDEX = {name: i for i, name in enumerate(VARS)}
_NVARS = len(VARS)
_ZERO_EXP = (0,) * _NVARS

_FR_ZERO = Fraction(0)
_FR_ONE = Fraction(1)


class UnboundParameterError(ValueError):
    """Evaluation was missing a binding for a parameter that occurs."""


def _coerce_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"expected a rational value, got {type(x).__name__}")


def _grlex_key(exps: tuple) -> tuple:
    # Graded lexicographic: total degree first, then the exponent vector.
    return (sum(exps), exps)


_FACTOR_RE = re.compile(r"^(?P<var>[a-z][a-z0-9]*)(?:\^(?P<exp>\d+))?$")


class ParamPoly:
    """Sparse polynomial over Q in the parameters l1, l2, l3, h, a.

    Terms are a map from exponent vectors to nonzero rational coefficients,
    so equality of values is equality of representations and the printed
    form (graded-lex descending) is canonical.  Instances are immutable.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[tuple, Fraction] | None = None):
        clean: dict[tuple, Fraction] = {}
        if terms:
            for exps, coeff in terms.items():
                coeff = _coerce_fraction(coeff)
                if coeff:
                    clean[tuple(exps)] = coeff
        object.__setattr__(self, "_terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("ParamPoly is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "ParamPoly":
        return _POLY_ZERO

    @classmethod
    def one(cls) -> "ParamPoly":
        return _POLY_ONE

    @classmethod
    def const(cls, value) -> "ParamPoly":
        value = _coerce_fraction(value)
        if not value:
            return _POLY_ZERO
        return cls({_ZERO_EXP: value})

    @classmethod
    def var(cls, name: str) -> "ParamPoly":
        if name not in _VAR_INDEX:
            raise ValueError(f"unknown parameter {name!r}; expected one of {VARS}")
        exps = [0] * _NVARS
        exps[_VAR_INDEX[name]] = 1
        return cls({tuple(exps): _FR_ONE})

    # -- ring operations ---------------------------------------------------

    def __add__(self, other) -> "ParamPoly":
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        if not self._terms:
            return other
        if not other._terms:
            return self
        terms = dict(self._terms)
        for exps, coeff in other._terms.items():
            acc = terms.get(exps, _FR_ZERO) + coeff
            if acc:
                terms[exps] = acc
            else:
                terms.pop(exps, None)
        return _from_clean(terms)

    __radd__ = __add__

    def __neg__(self) -> "ParamPoly":
        return _from_clean({e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> "ParamPoly":
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "ParamPoly":
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "ParamPoly":
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._terms, other._terms
        if not a or not b:
            return _POLY_ZERO
        # Fast path: scaling by a constant.
        if len(a) == 1 and _ZERO_EXP in a:
            c = a[_ZERO_EXP]
            return _from_clean({e: c * k for e, k in b.items()})
        if len(b) == 1 and _ZERO_EXP in b:
            c = b[_ZERO_EXP]
            return _from_clean({e: c * k for e, k in a.items()})
        out: dict[tuple, Fraction] = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                exps = tuple(x + y for x, y in zip(e1, e2))
                acc = out.get(exps, _FR_ZERO) + c1 * c2
                if acc:
                    out[exps] = acc
                else:
                    out.pop(exps, None)
        return _from_clean(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "ParamPoly":
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = _POLY_ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- queries -----------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and _ZERO_EXP in self._terms)

    def constant_value(self) -> Fraction:
        """The value of a constant polynomial, as a rational."""
        if not self._terms:
            return _FR_ZERO
        if self.is_constant:
            return self._terms[_ZERO_EXP]
        raise ValueError(f"polynomial {self} is not constant")

    def variables(self) -> set[str]:
        used = set()
        for exps in self._terms:
            for name, e in zip(VARS, exps):
                if e:
                    used.add(name)
        return used

    def divisible_by(self, name: str) -> bool:
        """True when every term carries a positive power of ``name``."""
        i = _VAR_INDEX[name]
        return all(exps[i] >= 1 for exps in self._terms)

    def sorted_terms(self) -> list[tuple[tuple, Fraction]]:
        """Terms in canonical order: graded-lex descending."""
        return sorted(self._terms.items(), key=lambda kv: _grlex_key(kv[0]), reverse=True)

    def monic(self) -> "ParamPoly":
        """Divide by the leading (graded-lex greatest) coefficient."""
        if not self._terms:
            return self
        lead = self.sorted_terms()[0][1]
        if lead == 1:
            return self
        inv = 1 / lead
        return _from_clean({e: c * inv for e, c in self._terms.items()})

    def evaluate(self, bindings: Mapping[str, object]) -> Fraction:
        """Exact evaluation; every parameter occurring must be bound."""
        values: dict[int, Fraction] = {}
        for name, val in bindings.items():
            if name in _VAR_INDEX:
                values[_VAR_INDEX[name]] = _coerce_fraction(val)
        total = _FR_ZERO
        for exps, coeff in self._terms.items():
            term = coeff
            for i, e in enumerate(exps):
                if not e:
                    continue
                if i not in values:
                    raise UnboundParameterError(
                        f"parameter {VARS[i]!r} occurs but is not bound"
                    )
                term *= values[i] ** e
            total += term
        return total

    # -- text form ---------------------------------------------------------

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        pieces: list[str] = []
        for exps, coeff in self.sorted_terms():
            sign = "-" if coeff < 0 else "+"
            body = _term_text(abs(coeff), exps)
            if not pieces:
                pieces.append(body if sign == "+" else "-" + body)
            else:
                pieces.append(f" {sign} {body}")
        return "".join(pieces)

    __repr__ = __str__

    @classmethod
    def parse(cls, text: str) -> "ParamPoly":
        """Inverse of ``str``; also accepts unnormalized spacing and "^1"."""
        s = text.replace(" ", "")
        if not s:
            raise ValueError("empty polynomial text")
        terms: dict[tuple, Fraction] = {}
        for sign, chunk in _split_signed(s):
            coeff = Fraction(sign)
            exps = [0] * _NVARS
            for factor in chunk.split("*"):
                if not factor:
                    raise ValueError(f"malformed term {chunk!r} in {text!r}")
                m = _FACTOR_RE.match(factor)
                if m and m.group("var") in _VAR_INDEX:
                    e = int(m.group("exp") or 1)
                    exps[_VAR_INDEX[m.group("var")]] += e
                else:
                    try:
                        coeff *= Fraction(factor)
                    except ValueError:
                        raise ValueError(
                            f"unknown factor {factor!r} in polynomial {text!r}"
                        ) from None
            key = tuple(exps)
            acc = terms.get(key, _FR_ZERO) + coeff
            if acc:
                terms[key] = acc
            else:
                terms.pop(key, None)
        return _from_clean(terms)

    # -- value semantics -----------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, ParamPoly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == ParamPoly.const(other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash(frozenset(self._terms.items()))
            object.__setattr__(self, "_hash", h)
        return h

    def __bool__(self) -> bool:
        return bool(self._terms)


def _from_clean(terms: dict[tuple, Fraction]) -> ParamPoly:
    # Internal: terms already zero-free with tuple keys.
    p = ParamPoly.__new__(ParamPoly)
    object.__setattr__(p, "_terms", terms)
    object.__setattr__(p, "_hash", None)
    return p


def _as_poly(x) -> ParamPoly:
    if isinstance(x, ParamPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return ParamPoly.const(x)
    return NotImplemented


def _term_text(coeff: Fraction, exps: tuple) -> str:
    factors = []
    for name, e in zip(VARS, exps):
        if e == 1:
            factors.append(name)
        elif e > 1:
            factors.append(f"{name}^{e}")
    if not factors:
        return str(coeff)
    if coeff != 1:
        factors.insert(0, str(coeff))
    return "*".join(factors)


def _split_signed(s: str) -> Iterable[tuple[int, str]]:
    # Split "a*h-2*l1+1/2" into (+1,"a*h"), (-1,"2*l1"), (+1,"1/2").
    sign = 1
    start = 0
    if s[0] in "+-":
        sign = -1 if s[0] == "-" else 1
        start = 1
    chunk_start = start
    for i in range(start, len(s)):
        if s[i] in "+-":
            yield sign, s[chunk_start:i]
            sign = -1 if s[i] == "-" else 1
            chunk_start = i + 1
    yield sign, s[chunk_start:]


_POLY_ZERO = ParamPoly()
_POLY_ONE = ParamPoly({_ZERO_EXP: _FR_ONE})
