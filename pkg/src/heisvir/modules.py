"""Induced modules in PBW coordinates: the vacuum module and twisted Vermas.

A module vector is a linear combination of normal-ordered words

    I-part . L-part . (cyclic vector)

where the I-part lists factors I_{-k} (vacuum) or I_{-k+1/t} (twisted Verma)
by their positive labels k_1 >= ... >= k_s >= 1, and the L-part lists factors
L_{-m} with m_1 >= ... >= m_r (m >= 2 for the vacuum module, m >= 1 for a
twisted Verma).  Applying a generator straightens the resulting word back
into this normal form by recursive commutation: the generator is moved
rightward past leading factors, bracket terms are straightened recursively,
raising modes annihilate the cyclic vector, L_0 contributes its eigenvalue,
and central elements contribute their parameter bindings.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

from .algebra import (
    AlgebraDescriptor,
    AlgebraElement,
    Generator,
    bracket,
    render_weighted_sum,
    parse_weighted_sum,
    validate_generator,
)
from .kernel import ParamPoly, _as_poly

__all__ = [
    "ModuleDescriptor",
    "PBWMonomial",
    "ModuleVector",
    "InvariantViolationError",
    "VACUUM",
    "TWISTED_VERMA",
    "vacuum_module",
    "twisted_verma_module",
    "cyclic_vector",
    "monomial_vector",
    "act",
    "act_elem",
    "basis_at_level",
    "graded_dimension",
    "lattice_levels",
    "sigma_grade",
]

VACUUM = "vacuum"
TWISTED_VERMA = "twisted_verma"


class InvariantViolationError(ValueError):
    """A monomial or vector violates the normal-form invariants."""


@dataclass(frozen=True)
class ModuleDescriptor:
    """Which induced module, over which algebra, with which parameter values.

    ``params`` binds c1, c2, c3 (vacuum, keys "l1", "l2", "l3") or k1, k3 and
    the L_0 weight (twisted Verma, keys "k1", "k3", "h") to ParamPoly values.
    The default bindings are the parameter symbols themselves, so everything
    downstream stays symbolic until concrete rationals are supplied.
    """

    alg: AlgebraDescriptor
    kind: str
    params: tuple[tuple[str, ParamPoly], ...]

    def __post_init__(self):
        if self.kind == VACUUM:
            if self.alg.t != 1:
                raise InvariantViolationError("the vacuum module requires t = 1")
            expected = ("l1", "l2", "l3")
        elif self.kind == TWISTED_VERMA:
            if self.alg.t < 2:
                raise InvariantViolationError("a twisted Verma module requires t >= 2")
            expected = ("h", "k1", "k3")
        else:
            raise InvariantViolationError(f"unknown module kind {self.kind!r}")
        names = tuple(name for name, _ in self.params)
        if names != expected:
            raise InvariantViolationError(
                f"params must bind exactly {expected}, got {names}"
            )

    @property
    def t(self) -> int:
        return self.alg.t

    def param(self, name: str) -> ParamPoly:
        for key, value in self.params:
            if key == name:
                return value
        raise KeyError(name)

    @property
    def is_concrete(self) -> bool:
        return all(value.is_constant for _, value in self.params)

    def central_binding(self, kind: str) -> ParamPoly:
        mapping = {"c1": "l1", "c2": "l2", "c3": "l3", "k1": "k1", "k3": "k3"}
        return self.param(mapping[kind])

    def to_json(self) -> dict:
        return {
            "t": self.t,
            "kind": self.kind,
            "params": {name: str(value) for name, value in self.params},
        }

    @classmethod
    def from_json(cls, data: dict) -> "ModuleDescriptor":
        t = data["t"]
        params = {k: ParamPoly.parse(v) for k, v in data.get("params", {}).items()}
        if data["kind"] == VACUUM:
            return vacuum_module(**params)
        return twisted_verma_module(t, **params)


def _bind(value, default_var: str) -> ParamPoly:
    if value is None:
        return ParamPoly.var(default_var)
    if isinstance(value, ParamPoly):
        return value
    if isinstance(value, str):
        return ParamPoly.parse(value)
    return ParamPoly.const(value)


def vacuum_module(l1=None, l2=None, l3=None) -> ModuleDescriptor:
    """The t=1 induced module on which c1, c2, c3 act by l1, l2, l3."""
    return ModuleDescriptor(
        AlgebraDescriptor(1),
        VACUUM,
        (("l1", _bind(l1, "l1")), ("l2", _bind(l2, "l2")), ("l3", _bind(l3, "l3"))),
    )


def twisted_verma_module(t: int, k1=None, k3=None, h=None) -> ModuleDescriptor:
    """The sector-t highest-weight module with level (k1, k3) and weight h."""
    return ModuleDescriptor(
        AlgebraDescriptor(t),
        TWISTED_VERMA,
        (("h", _bind(h, "h")), ("k1", _bind(k1, "l1")), ("k3", _bind(k3, "l3"))),
    )


@dataclass(frozen=True)
class PBWMonomial:
    """Normal-ordered word of lowering factors applied to the cyclic vector.

    ``i_part[j] = k`` denotes the factor I_{-k} (vacuum) or I_{-k+1/t}
    (twisted Verma); ``l_part[i] = m`` denotes L_{-m}.  Both lists are
    nonincreasing.  The empty monomial is the cyclic vector itself.
    """

    i_part: tuple[int, ...] = ()
    l_part: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "i_part", tuple(self.i_part))
        object.__setattr__(self, "l_part", tuple(self.l_part))

    @property
    def is_cyclic(self) -> bool:
        return not self.i_part and not self.l_part

    def sort_key(self) -> tuple:
        return (self.i_part, self.l_part)

    def to_json(self) -> dict:
        return {"I": list(self.i_part), "L": list(self.l_part)}

    @classmethod
    def from_json(cls, data: dict) -> "PBWMonomial":
        return cls(tuple(data.get("I", ())), tuple(data.get("L", ())))


CYCLIC = PBWMonomial()


def validate_monomial(desc: ModuleDescriptor, mono: PBWMonomial) -> None:
    l_min = 2 if desc.kind == VACUUM else 1
    for part, lo, label in ((mono.i_part, 1, "I"), (mono.l_part, l_min, "L")):
        for j, k in enumerate(part):
            if not isinstance(k, int) or k < lo:
                raise InvariantViolationError(
                    f"{label}-part entry {k!r} below minimum {lo}"
                )
            if j and part[j - 1] < k:
                raise InvariantViolationError(
                    f"{label}-part {part} is not nonincreasing"
                )


def level_of(desc: ModuleDescriptor, mono: PBWMonomial) -> Fraction:
    total = Fraction(sum(mono.l_part) + sum(mono.i_part))
    if desc.kind == TWISTED_VERMA:
        total -= Fraction(len(mono.i_part), desc.t)
    return total


def _i_factor_index(desc: ModuleDescriptor, k: int) -> Fraction:
    if desc.kind == VACUUM:
        return Fraction(-k)
    return Fraction(-k) + Fraction(1, desc.t)


def factor_generators(desc: ModuleDescriptor, mono: PBWMonomial) -> tuple[Generator, ...]:
    """The word of generators, leftmost factor first."""
    gens = [Generator("I", _i_factor_index(desc, k)) for k in mono.i_part]
    gens.extend(Generator("L", Fraction(-m)) for m in mono.l_part)
    return tuple(gens)


def mono_text(desc: ModuleDescriptor, mono: PBWMonomial) -> str:
    factors = [str(g) for g in factor_generators(desc, mono)]
    factors.append("1")
    return "*".join(factors)


class ModuleVector:
    """Finite ParamPoly-linear combination of PBW monomials."""

    __slots__ = ("desc", "_terms")

    def __init__(self, desc: ModuleDescriptor, terms=None, validate: bool = True):
        self.desc = desc
        clean: dict[PBWMonomial, ParamPoly] = {}
        if terms:
            for mono, coeff in dict(terms).items():
                coeff = _as_poly(coeff)
                if coeff.is_zero:
                    continue
                if validate:
                    validate_monomial(desc, mono)
                clean[mono] = coeff
        self._terms = clean

    def terms(self) -> list[tuple[PBWMonomial, ParamPoly]]:
        return sorted(
            self._terms.items(),
            key=lambda kv: (level_of(self.desc, kv[0]),) + kv[0].sort_key(),
        )

    def coefficient(self, mono: PBWMonomial) -> ParamPoly:
        return self._terms.get(mono, ParamPoly.zero())

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def levels(self) -> set[Fraction]:
        return {level_of(self.desc, m) for m in self._terms}

    def __add__(self, other: "ModuleVector") -> "ModuleVector":
        if not isinstance(other, ModuleVector) or other.desc != self.desc:
            return NotImplemented
        terms = dict(self._terms)
        for mono, coeff in other._terms.items():
            acc = terms.get(mono)
            acc = coeff if acc is None else acc + coeff
            if acc.is_zero:
                terms.pop(mono, None)
            else:
                terms[mono] = acc
        return ModuleVector(self.desc, terms, validate=False)

    def __neg__(self) -> "ModuleVector":
        return ModuleVector(
            self.desc, {m: -c for m, c in self._terms.items()}, validate=False
        )

    def __sub__(self, other: "ModuleVector") -> "ModuleVector":
        if not isinstance(other, ModuleVector) or other.desc != self.desc:
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar) -> "ModuleVector":
        scalar = _as_poly(scalar)
        if scalar is NotImplemented:
            return NotImplemented
        if scalar.is_zero:
            return ModuleVector(self.desc)
        return ModuleVector(
            self.desc,
            {m: c * scalar for m, c in self._terms.items()},
            validate=False,
        )

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, ModuleVector):
            return NotImplemented
        return self.desc == other.desc and self._terms == other._terms

    def __str__(self) -> str:
        return render_weighted_sum(
            [(coeff, mono_text(self.desc, mono)) for mono, coeff in self.terms()]
        )

    __repr__ = __str__

    def to_json(self) -> list:
        return [
            {"mono": mono.to_json(), "coeff": str(coeff)}
            for mono, coeff in self.terms()
        ]

    @classmethod
    def from_json(cls, desc: ModuleDescriptor, data: list) -> "ModuleVector":
        terms = {}
        for item in data:
            mono = PBWMonomial.from_json(item["mono"])
            coeff = ParamPoly.parse(item["coeff"])
            acc = terms.get(mono)
            terms[mono] = coeff if acc is None else acc + coeff
        return cls(desc, terms)

    @classmethod
    def parse(cls, desc: ModuleDescriptor, text: str) -> "ModuleVector":
        terms: dict[PBWMonomial, ParamPoly] = {}
        for coeff, symbol in parse_weighted_sum(text):
            mono = _parse_mono(desc, symbol)
            acc = terms.get(mono)
            terms[mono] = coeff if acc is None else acc + coeff
        return cls(desc, terms)


def _parse_mono(desc: ModuleDescriptor, symbol: str) -> PBWMonomial:
    factors = symbol.split("*")
    if factors[-1] != "1":
        raise InvariantViolationError(
            f"monomial text must end with the cyclic symbol '1': {symbol!r}"
        )
    i_part: list[int] = []
    l_part: list[int] = []
    for token in factors[:-1]:
        g = Generator.parse(token)
        if g.kind == "L":
            l_part.append(int(-g.index))
        elif g.kind == "I":
            k = Fraction(1, desc.t) - g.index if desc.kind == TWISTED_VERMA else -g.index
            if k.denominator != 1:
                raise InvariantViolationError(f"factor {token} is off-lattice")
            i_part.append(int(k))
        else:
            raise InvariantViolationError(f"central {token} cannot be a factor")
    mono = PBWMonomial(tuple(i_part), tuple(l_part))
    validate_monomial(desc, mono)
    return mono


def cyclic_vector(desc: ModuleDescriptor) -> ModuleVector:
    return ModuleVector(desc, {CYCLIC: ParamPoly.one()}, validate=False)


def monomial_vector(desc: ModuleDescriptor, mono: PBWMonomial) -> ModuleVector:
    return ModuleVector(desc, {mono: ParamPoly.one()})


# -- straightening action ----------------------------------------------------


def act(g: Generator, v: ModuleVector) -> ModuleVector:
    """Apply one generator, returning the PBW-normal-form image."""
    validate_generator(g, v.desc.alg)
    out: dict[PBWMonomial, ParamPoly] = {}
    for mono, coeff in v._terms.items():
        for m2, p2 in _act_mono(v.desc, g, mono):
            acc = out.get(m2)
            acc = coeff * p2 if acc is None else acc + coeff * p2
            if acc.is_zero:
                out.pop(m2, None)
            else:
                out[m2] = acc
    return ModuleVector(v.desc, out, validate=False)


def act_elem(x: AlgebraElement, v: ModuleVector) -> ModuleVector:
    """Linear extension of ``act`` to algebra elements."""
    out = ModuleVector(v.desc)
    for gen, coeff in x.terms():
        out = out + act(gen, v) * coeff
    return out


def _lowering_factor_label(desc: ModuleDescriptor, g: Generator) -> int | None:
    """The positive label k/m when g is a valid monomial factor, else None."""
    if g.kind == "L":
        m = -g.index
        if m.denominator != 1:
            return None
        m = int(m)
        return m if m >= (2 if desc.kind == VACUUM else 1) else None
    if g.kind == "I":
        k = -g.index if desc.kind == VACUUM else Fraction(1, desc.t) - g.index
        if k.denominator != 1:
            return None
        k = int(k)
        return k if k >= 1 else None
    return None


def _act_cyclic(desc: ModuleDescriptor, g: Generator):
    # L_0 and centrals are handled before this is reached.
    label = _lowering_factor_label(desc, g)
    if label is not None:
        if g.kind == "I":
            return ((PBWMonomial((label,), ()), ParamPoly.one()),)
        return ((PBWMonomial((), (label,)), ParamPoly.one()),)
    # Everything else annihilates: raising modes, and for the vacuum module
    # also L_{-1} (the cyclic vector is translation invariant).
    return ()


@lru_cache(maxsize=None)
def _act_mono(desc: ModuleDescriptor, g: Generator, mono: PBWMonomial):
    """g . mono as a tuple of (monomial, coefficient) pairs, normal ordered."""
    if g.is_central:
        return ((mono, desc.central_binding(g.kind)),)
    if g.kind == "L" and g.index == 0:
        eig = ParamPoly.const(level_of(desc, mono))
        if desc.kind == TWISTED_VERMA:
            eig = eig + desc.param("h")
        if eig.is_zero:
            return ()
        return ((mono, eig),)
    if mono.is_cyclic:
        return _act_cyclic(desc, g)

    # Leading factor f and the remaining word.
    if mono.i_part:
        f = Generator("I", _i_factor_index(desc, mono.i_part[0]))
        rest = PBWMonomial(mono.i_part[1:], mono.l_part)
    else:
        f = Generator("L", Fraction(-mono.l_part[0]))
        rest = PBWMonomial((), mono.l_part[1:])

    label = _lowering_factor_label(desc, g)
    if label is not None and _can_lead(desc, g, label, mono):
        if g.kind == "I":
            return ((PBWMonomial((label,) + mono.i_part, mono.l_part), ParamPoly.one()),)
        return ((PBWMonomial(mono.i_part, (label,) + mono.l_part), ParamPoly.one()),)

    # g . f = f . g + [g, f], with each piece straightened recursively.
    out: dict[PBWMonomial, ParamPoly] = {}
    for m1, p1 in _act_mono(desc, g, rest):
        for m2, p2 in _act_mono(desc, f, m1):
            _accumulate(out, m2, p1 * p2)
    for gen, pb in bracket(g, f, desc.alg).terms():
        for m1, p1 in _act_mono(desc, gen, rest):
            _accumulate(out, m1, pb * p1)
    return tuple(sorted(out.items(), key=lambda kv: kv[0].sort_key()))


def _can_lead(desc: ModuleDescriptor, g: Generator, label: int, mono: PBWMonomial) -> bool:
    if g.kind == "I":
        return not mono.i_part or label >= mono.i_part[0]
    return not mono.i_part and (not mono.l_part or label >= mono.l_part[0])


def _accumulate(out: dict, mono: PBWMonomial, coeff: ParamPoly) -> None:
    acc = out.get(mono)
    acc = coeff if acc is None else acc + coeff
    if acc.is_zero:
        out.pop(mono, None)
    else:
        out[mono] = acc


# -- graded bases -------------------------------------------------------------


def _partitions_min(total: int, lo: int) -> Iterable[tuple[int, ...]]:
    """Nonincreasing partitions of ``total`` with parts >= lo."""
    if total == 0:
        yield ()
        return

    def rec(remaining: int, cap: int):
        if remaining == 0:
            yield ()
            return
        for first in range(min(remaining, cap), lo - 1, -1):
            for tail in rec(remaining - first, first):
                yield (first,) + tail

    yield from rec(total, total)


def _partitions_exact_len(total: int, length: int) -> Iterable[tuple[int, ...]]:
    """Nonincreasing partitions of ``total`` into exactly ``length`` parts >= 1."""
    if length == 0:
        if total == 0:
            yield ()
        return
    if total < length:
        return

    def rec(remaining: int, parts: int, cap: int):
        if parts == 1:
            if remaining <= cap:
                yield (remaining,)
            return
        hi = min(cap, remaining - (parts - 1))
        for first in range(hi, 0, -1):
            for tail in rec(remaining - first, parts - 1, first):
                yield (first,) + tail

    yield from rec(total, length, total - length + 1)


def basis_at_level(desc: ModuleDescriptor, level) -> list[PBWMonomial]:
    """All monomials of exactly the given level, deterministically ordered."""
    level = Fraction(level)
    t = desc.t
    if level < 0 or (level * t).denominator != 1:
        return []
    monos: list[PBWMonomial] = []
    if desc.kind == VACUUM:
        if level.denominator != 1:
            return []
        n = int(level)
        for i_total in range(0, n + 1):
            for ip in _partitions_min(i_total, 1):
                for lp in _partitions_min(n - i_total, 2):
                    monos.append(PBWMonomial(ip, lp))
    else:
        s = 0
        while Fraction(s * (t - 1), t) <= level:
            total = level + Fraction(s, t)
            if total.denominator == 1:
                total = int(total)
                for k_sum in range(s, total + 1):
                    for ip in _partitions_exact_len(k_sum, s):
                        for lp in _partitions_min(total - k_sum, 1):
                            monos.append(PBWMonomial(ip, lp))
            s += 1
    monos.sort(key=PBWMonomial.sort_key)
    return monos


def graded_dimension(desc: ModuleDescriptor, level) -> int:
    return len(basis_at_level(desc, level))


def lattice_levels(desc: ModuleDescriptor, max_level) -> list[Fraction]:
    """All candidate levels 0, 1/t, 2/t, ... up to and including max_level."""
    max_level = Fraction(max_level)
    t = desc.t
    top = int(max_level * t)
    return [Fraction(k, t) for k in range(0, top + 1)]


def sigma_grade(mono: PBWMonomial, t: int) -> int:
    """Exponent s mod t of the order-t symmetry eigenvalue on a monomial.

    The symmetry scales each I-factor by a primitive t-th root of unity, so
    a monomial with s I-factors lies in the eigenspace with exponent s mod t.
    Tracking the exponent keeps all arithmetic rational.
    """
    if t < 1:
        raise ValueError("order t must be a positive integer")
    return len(mono.i_part) % t
