"""The Heisenberg-Virasoro Lie algebra and its twisted-sector relatives.

A single descriptor selects the algebra: twist t = 1 gives the algebra with
basis L_n, I_n (n integer) and central elements c1, c2, c3, with brackets

    [L_m, L_n] = (m - n) L_{m+n} + delta_{m+n,0} (m^3 - m)/12 c1
    [L_m, I_n] = -n I_{m+n} - delta_{m+n,0} (m^2 + m) c2
    [I_m, I_n] = m delta_{m+n,0} c3

while t >= 2 gives the sector algebra with basis L_n (n integer),
I_r (r in Z + 1/t) and central elements k1, k3:

    [L_m, L_n] = (m - n) L_{m+n} + delta_{m+n,0} (m^3 - m)/12 k1
    [L_m, I_r] = -r I_{m+r}
    [I_r, I_s] = r delta_{r+s,0} delta_{t,2} k3

Both are (1/t)Z-graded by ad L_0 eigenvalues; centrals sit in degree 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .kernel import ParamPoly, _as_poly

__all__ = [
    "AlgebraDescriptor",
    "Generator",
    "AlgebraElement",
    "MalformedGeneratorError",
    "L",
    "I",
    "C1",
    "C2",
    "C3",
    "K1",
    "K3",
    "bracket",
    "bracket_elem",
    "degree",
    "validate_generator",
]


class MalformedGeneratorError(ValueError):
    """A generator's kind or index is invalid for the chosen algebra."""


@dataclass(frozen=True)
class AlgebraDescriptor:
    """Twist t >= 1; t = 1 is the untwisted algebra."""

    t: int = 1

    def __post_init__(self):
        if not isinstance(self.t, int) or self.t < 1:
            raise ValueError(f"twist must be a positive integer, got {self.t!r}")


UNTWISTED = AlgebraDescriptor(1)

_CENTRAL_KINDS = ("c1", "c2", "c3", "k1", "k3")
_KIND_ORDER = {"L": 0, "I": 1, "c1": 2, "c2": 3, "c3": 4, "k1": 5, "k3": 6}


@dataclass(frozen=True)
class Generator:
    """One basis symbol: an L-mode, an I-mode, or a central element."""

    kind: str
    index: Fraction | None = None

    def __post_init__(self):
        if self.kind in ("L", "I"):
            if self.index is None:
                raise MalformedGeneratorError(f"{self.kind}-mode needs an index")
            object.__setattr__(self, "index", Fraction(self.index))
        elif self.kind in _CENTRAL_KINDS:
            if self.index is not None:
                raise MalformedGeneratorError(f"central {self.kind} takes no index")
        else:
            raise MalformedGeneratorError(f"unknown generator kind {self.kind!r}")

    @property
    def is_central(self) -> bool:
        return self.kind in _CENTRAL_KINDS

    def sort_key(self) -> tuple:
        return (_KIND_ORDER[self.kind], self.index if self.index is not None else 0)

    def __str__(self) -> str:
        if self.is_central:
            return self.kind
        return f"{self.kind}[{self.index}]"

    @classmethod
    def parse(cls, text: str) -> "Generator":
        s = text.strip()
        if s in _CENTRAL_KINDS:
            return cls(s)
        if len(s) >= 4 and s[0] in "LI" and s[1] == "[" and s[-1] == "]":
            try:
                return cls(s[0], Fraction(s[2:-1]))
            except ValueError:
                pass
        raise MalformedGeneratorError(f"cannot parse generator {text!r}")


def L(n) -> Generator:
    return Generator("L", Fraction(n))


def I(r) -> Generator:
    return Generator("I", Fraction(r))


C1 = Generator("c1")
C2 = Generator("c2")
C3 = Generator("c3")
K1 = Generator("k1")
K3 = Generator("k3")


def validate_generator(g: Generator, alg: AlgebraDescriptor) -> None:
    """Raise MalformedGeneratorError unless g is a basis symbol of alg."""
    t = alg.t
    if g.kind == "L":
        if g.index.denominator != 1:
            raise MalformedGeneratorError(f"L-mode index must be an integer: {g}")
        return
    if g.kind == "I":
        if t == 1:
            if g.index.denominator != 1:
                raise MalformedGeneratorError(
                    f"I-mode index must be an integer when t=1: {g}"
                )
            return
        # Index must lie in Z + 1/t; checked as t*index - 1 in t*Z.
        scaled = g.index * t - 1
        if scaled.denominator != 1 or scaled.numerator % t != 0:
            raise MalformedGeneratorError(
                f"I-mode index {g.index} is not in Z + 1/{t}"
            )
        return
    if t == 1:
        if g.kind not in ("c1", "c2", "c3"):
            raise MalformedGeneratorError(f"central {g.kind} does not exist when t=1")
    else:
        if g.kind not in ("k1", "k3"):
            raise MalformedGeneratorError(f"central {g.kind} does not exist when t={t}")


def degree(g: Generator) -> Fraction:
    """ad L_0 eigenvalue: degree(L_n) = -n, degree(I_r) = -r, centrals 0."""
    if g.is_central:
        return Fraction(0)
    return -g.index


class AlgebraElement:
    """Finite ParamPoly-linear combination of generators."""

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        clean: dict[Generator, ParamPoly] = {}
        if terms:
            for gen, coeff in dict(terms).items():
                coeff = _as_poly(coeff)
                if not coeff.is_zero:
                    clean[gen] = coeff
        self._terms = clean

    @classmethod
    def zero(cls) -> "AlgebraElement":
        return cls()

    @classmethod
    def from_generator(cls, g: Generator, coeff=1) -> "AlgebraElement":
        return cls({g: coeff})

    def terms(self) -> list[tuple[Generator, ParamPoly]]:
        return sorted(self._terms.items(), key=lambda kv: kv[0].sort_key())

    def coefficient(self, g: Generator) -> ParamPoly:
        return self._terms.get(g, ParamPoly.zero())

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        terms = dict(self._terms)
        for gen, coeff in other._terms.items():
            acc = terms.get(gen)
            acc = coeff if acc is None else acc + coeff
            if acc.is_zero:
                terms.pop(gen, None)
            else:
                terms[gen] = acc
        out = AlgebraElement.__new__(AlgebraElement)
        out._terms = terms
        return out

    def __neg__(self) -> "AlgebraElement":
        out = AlgebraElement.__new__(AlgebraElement)
        out._terms = {g: -c for g, c in self._terms.items()}
        return out

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar) -> "AlgebraElement":
        scalar = _as_poly(scalar)
        if scalar is NotImplemented:
            return NotImplemented
        if scalar.is_zero:
            return AlgebraElement.zero()
        return AlgebraElement({g: c * scalar for g, c in self._terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self._terms == other._terms

    def __str__(self) -> str:
        return render_weighted_sum(
            [(coeff, str(gen)) for gen, coeff in self.terms()]
        )

    __repr__ = __str__

    @classmethod
    def parse(cls, text: str) -> "AlgebraElement":
        terms: dict[Generator, ParamPoly] = {}
        for coeff, symbol in parse_weighted_sum(text):
            gen = Generator.parse(symbol)
            acc = terms.get(gen)
            acc = coeff if acc is None else acc + coeff
            terms[gen] = acc
        return cls(terms)


def bracket(x: Generator, y: Generator, alg: AlgebraDescriptor) -> AlgebraElement:
    """Lie bracket [x, y] of two basis symbols, as an AlgebraElement."""
    validate_generator(x, alg)
    validate_generator(y, alg)
    t = alg.t
    if x.is_central or y.is_central:
        return AlgebraElement.zero()
    if x.kind == "L" and y.kind == "L":
        m, n = x.index, y.index
        out: dict[Generator, object] = {}
        if m != n:
            out[L(m + n)] = ParamPoly.const(m - n)
        if m + n == 0:
            c = Fraction(m**3 - m, 12)
            if c:
                out[C1 if t == 1 else K1] = ParamPoly.const(c)
        return AlgebraElement(out)
    if x.kind == "L" and y.kind == "I":
        m, r = x.index, y.index
        out = {}
        if r != 0:
            out[I(m + r)] = ParamPoly.const(-r)
        if t == 1 and m + r == 0:
            c = m**2 + m
            if c:
                out[C2] = ParamPoly.const(-c)
        return AlgebraElement(out)
    if x.kind == "I" and y.kind == "L":
        return -bracket(y, x, alg)
    # I with I.
    r, s = x.index, y.index
    if r + s == 0 and r != 0:
        if t == 1:
            return AlgebraElement({C3: ParamPoly.const(r)})
        if t == 2:
            return AlgebraElement({K3: ParamPoly.const(r)})
    return AlgebraElement.zero()


def bracket_elem(
    x: AlgebraElement, y: AlgebraElement, alg: AlgebraDescriptor
) -> AlgebraElement:
    """Bilinear extension of the bracket to linear combinations."""
    out = AlgebraElement.zero()
    for gx, cx in x.terms():
        for gy, cy in y.terms():
            b = bracket(gx, gy, alg)
            if not b.is_zero:
                out = out + b * (cx * cy)
    return out


# -- shared text rendering for weighted sums --------------------------------


def render_weighted_sum(items: Iterable[tuple[ParamPoly, str]]) -> str:
    """Print [(coeff, symbol), ...] as "2*sym1 + (l1 - 1)*sym2"."""
    pieces: list[str] = []
    for coeff, symbol in items:
        sign, body = _weighted_term_text(coeff, symbol)
        if not pieces:
            pieces.append(body if sign == "+" else "-" + body)
        else:
            pieces.append(f" {sign} {body}")
    if not pieces:
        return "0"
    return "".join(pieces)


def _weighted_term_text(coeff: ParamPoly, symbol: str) -> tuple[str, str]:
    terms = coeff.sorted_terms()
    if len(terms) != 1:
        return "+", f"({coeff})*{symbol}"
    exps, c = terms[0]
    sign = "-" if c < 0 else "+"
    c = abs(c)
    from .kernel import _term_text

    if not any(exps) and c == 1:
        return sign, symbol
    return sign, f"{_term_text(c, exps)}*{symbol}"


def parse_weighted_sum(text: str) -> list[tuple[ParamPoly, str]]:
    """Inverse of render_weighted_sum; symbols are the trailing "*"-factor."""
    s = text.strip()
    if s == "0":
        return []
    out: list[tuple[ParamPoly, str]] = []
    for sign, chunk in _split_top_level(s):
        chunk = chunk.strip()
        if not chunk:
            raise ValueError(f"malformed element text {text!r}")
        if chunk.startswith("("):
            close = chunk.index(")")
            coeff = ParamPoly.parse(chunk[1:close])
            rest = chunk[close + 1 :]
            if not rest.startswith("*"):
                raise ValueError(f"expected '*' after coefficient in {chunk!r}")
            symbol = rest[1:]
        else:
            factors = chunk.split("*")
            symbol = factors[-1]
            coeff = (
                ParamPoly.parse("*".join(factors[:-1])) if len(factors) > 1
                else ParamPoly.one()
            )
        out.append((coeff * sign, symbol))
    return out


def _split_top_level(s: str):
    # Split into signed chunks on +/- that are not inside parens or brackets.
    sign = 1
    depth = 0
    start = 0
    if s and s[0] in "+-":
        sign = -1 if s[0] == "-" else 1
        start = 1
    chunk_start = start
    for i in range(start, len(s)):
        ch = s[i]
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif ch in "+-" and depth == 0:
            yield sign, s[chunk_start:i]
            sign = -1 if ch == "-" else 1
            chunk_start = i + 1
    yield sign, s[chunk_start:]
