"""Generator fields, their mode actions, and formal-calculus checks.

Two fields are exposed: the weight-2 field with modes L_n (its j-th product
mode is L_{j-1}) and the weight-1 field with modes I_n for t = 1 or
I_{n+1/t} on a sector-t module.  Mode-level commutators of these fields are
verified directly against the Lie bracket, and the classical vanishing
identity (x1 - x2)^m (d/dx2)^n x1^{-1} delta(x2/x1) = 0 for m > n is checked
on truncated two-variable Laurent windows.

Truncation soundness: a truncated Laurent series only agrees with the true
series inside a tracked "interior" rectangle, which every operation shrinks
appropriately.  Assertions are made only on interiors.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import ceil, comb

from .algebra import Generator, bracket
from .kernel import ParamPoly
from .modules import (
    VACUUM,
    ModuleDescriptor,
    ModuleVector,
    act,
    act_elem,
    cyclic_vector,
    PBWMonomial,
    monomial_vector,
    vacuum_module,
)

__all__ = [
    "FieldId",
    "LatticeError",
    "WindowError",
    "field_mode",
    "generator_product",
    "CommutatorReport",
    "verify_commutator",
    "Laurent2",
    "DeltaReport",
    "delta_identity_check",
    "derivative_property_check",
]


class LatticeError(ValueError):
    """A mode index is off the (1/t)Z lattice required by the field."""


class WindowError(ValueError):
    """A truncation window is too small to certify anything."""


class FieldId(str, Enum):
    OMEGA = "Omega"
    IGEN = "Igen"


def _mode_generator(f: FieldId, n: Fraction, t: int) -> Generator:
    n = Fraction(n)
    if f is FieldId.OMEGA:
        if n.denominator != 1:
            raise LatticeError(f"L-field mode {n} must be an integer")
        return Generator("L", n)
    if t == 1:
        if n.denominator != 1:
            raise LatticeError(f"I-field mode {n} must be an integer when t=1")
    else:
        scaled = n * t - 1
        if scaled.denominator != 1 or scaled.numerator % t != 0:
            raise LatticeError(f"I-field mode {n} is not in Z + 1/{t}")
    return Generator("I", n)


def field_mode(f: FieldId, n, v: ModuleVector) -> ModuleVector:
    """Apply the mode L_n (f = Omega) or I_n (f = Igen) to a vector."""
    return act(_mode_generator(f, Fraction(n), v.desc.t), v)


_FIELD_STATE = {FieldId.OMEGA: PBWMonomial((), (2,)), FieldId.IGEN: PBWMonomial((1,), ())}


def generator_product(
    u: FieldId, j: int, w: FieldId, desc: ModuleDescriptor | None = None
) -> ModuleVector:
    """The j-th product u_j w of the two generator states, in the vacuum module.

    The j-th mode of the weight-2 field is L_{j-1}; of the weight-1 field it
    is I_j.  The result is the straightened PBW vector.
    """
    if desc is None:
        desc = vacuum_module()
    if desc.kind != VACUUM:
        raise InvalidProductModule("generator products live in the vacuum module")
    shift = Fraction(j - 1) if u is FieldId.OMEGA else Fraction(j)
    return field_mode(u, shift, monomial_vector(desc, _FIELD_STATE[w]))


class InvalidProductModule(ValueError):
    pass


@dataclass
class CommutatorReport:
    """Both sides of one mode-commutator instance and their comparison."""

    a: FieldId
    b: FieldId
    m: Fraction
    n: Fraction
    lhs: ModuleVector
    rhs: ModuleVector
    equal: bool

    def to_json(self) -> dict:
        return {
            "a": self.a.value,
            "b": self.b.value,
            "m": str(self.m),
            "n": str(self.n),
            "lhs": self.lhs.to_json(),
            "rhs": self.rhs.to_json(),
            "equal": self.equal,
        }


def verify_commutator(a: FieldId, b: FieldId, m, n, v: ModuleVector) -> CommutatorReport:
    """Check [a_m, b_n] v = (bracket of the matching generators) . v."""
    m = Fraction(m)
    n = Fraction(n)
    t = v.desc.t
    ga = _mode_generator(a, m, t)
    gb = _mode_generator(b, n, t)
    lhs = field_mode(a, m, field_mode(b, n, v)) - field_mode(b, n, field_mode(a, m, v))
    rhs = act_elem(bracket(ga, gb, v.desc.alg), v)
    return CommutatorReport(a, b, m, n, lhs, rhs, lhs == rhs)


# -- truncated two-variable formal Laurent calculus ---------------------------


_Window = tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]


def _norm_window(window) -> _Window:
    (a1, b1), (a2, b2) = window
    w = ((Fraction(a1), Fraction(b1)), (Fraction(a2), Fraction(b2)))
    if w[0][0] > w[0][1] or w[1][0] > w[1][1]:
        raise WindowError(f"empty window {window!r}")
    return w


class Laurent2:
    """Finite two-variable Laurent coefficients with an exactness interior.

    ``coeffs`` maps exponent pairs (e1, e2) on the (1/t)Z lattice to rational
    coefficients.  ``interior`` is the rectangle on which the stored values
    are guaranteed to equal those of the untruncated series; coefficients
    outside it are unreliable and never asserted on.
    """

    __slots__ = ("t", "coeffs", "interior")

    def __init__(self, t: int, coeffs: dict, interior: _Window):
        self.t = t
        self.coeffs = {k: v for k, v in coeffs.items() if v}
        self.interior = _norm_window(interior)

    @classmethod
    def delta_kernel(cls, window, t: int = 1) -> "Laurent2":
        """x1^{-1} delta(x2/x1) = sum_k x2^k x1^{-k-1}, truncated to window.

        Inside the window rectangle the truncation is exact, since every
        lattice point of the support that falls in the rectangle is stored.
        """
        (a1, b1), (a2, b2) = _norm_window(window)
        coeffs: dict[tuple[Fraction, Fraction], Fraction] = {}
        start = max(a2, -b1 - 1)
        k = Fraction(ceil(start * t), t)
        top = min(b2, -a1 - 1)
        step = Fraction(1, t)
        while k <= top:
            coeffs[(-k - 1, k)] = Fraction(1)
            k += step
        return cls(t, coeffs, ((a1, b1), (a2, b2)))

    def dx2(self, n: int = 1) -> "Laurent2":
        """n-th partial derivative in the second variable."""
        out = self
        for _ in range(n):
            coeffs = {}
            for (e1, e2), c in out.coeffs.items():
                if e2 != 0:
                    coeffs[(e1, e2 - 1)] = coeffs.get((e1, e2 - 1), Fraction(0)) + c * e2
            (w1, (a2, b2)) = out.interior
            out = Laurent2(out.t, coeffs, (w1, (a2 - 1, b2 - 1)))
        return out

    def times_x1_minus_x2_pow(self, m: int) -> "Laurent2":
        """Multiply by (x1 - x2)^m, expanded in nonnegative powers of x2.

        A product coefficient at (e1, e2) is exact only when all m+1 source
        points (e1 - m + j, e2 - j) were exact, so the interior loses m from
        the low end of both variables.
        """
        coeffs: dict[tuple[Fraction, Fraction], Fraction] = {}
        for j in range(m + 1):
            factor = Fraction(comb(m, j) * (-1) ** j)
            for (e1, e2), c in self.coeffs.items():
                key = (e1 + m - j, e2 + j)
                coeffs[key] = coeffs.get(key, Fraction(0)) + c * factor
        ((a1, b1), (a2, b2)) = self.interior
        return Laurent2(self.t, coeffs, ((a1 + m, b1), (a2 + m, b2)))

    def interior_items(self) -> list[tuple[tuple[Fraction, Fraction], Fraction]]:
        ((a1, b1), (a2, b2)) = self.interior
        return sorted(
            ((e, c) for e, c in self.coeffs.items()
             if a1 <= e[0] <= b1 and a2 <= e[1] <= b2),
        )

    def restricted_to_interior(self) -> "Laurent2":
        return Laurent2(self.t, dict(self.interior_items()), self.interior)

    @property
    def is_zero_on_interior(self) -> bool:
        return not self.interior_items()

    def to_json(self) -> dict:
        ((a1, b1), (a2, b2)) = self.interior
        return {
            "t": self.t,
            "interior": {"x1": [str(a1), str(b1)], "x2": [str(a2), str(b2)]},
            "terms": [
                {"x1": str(e1), "x2": str(e2), "coeff": str(c)}
                for (e1, e2), c in sorted(self.coeffs.items())
            ],
        }


@dataclass
class DeltaReport:
    m: int
    n: int
    residual: Laurent2
    holds_in_window: bool

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "holds_in_window": self.holds_in_window,
            "residual": self.residual.to_json(),
        }


def delta_identity_check(m: int, n: int, window) -> DeltaReport:
    """Evaluate (x1 - x2)^m (d/dx2)^n applied to the delta kernel on a window.

    For m > n the residual must vanish identically on the interior that
    remains exact after both operations; for m <= n a nonzero residual is
    allowed.  Raises WindowError when no interior survives.
    """
    if m < 0 or n < 0:
        raise ValueError("m and n must be nonnegative integers")
    series = Laurent2.delta_kernel(window)
    result = series.dx2(n).times_x1_minus_x2_pow(m)
    ((a1, b1), (a2, b2)) = result.interior
    if a1 > b1 or a2 > b2:
        raise WindowError(
            f"window {window!r} leaves no exact interior after m={m}, n={n}"
        )
    residual = result.restricted_to_interior()
    return DeltaReport(m, n, residual, residual.is_zero_on_interior)


def derivative_property_check(f: FieldId, v: ModuleVector, modes) -> bool:
    """Mode-level translation-derivative property on the vacuum module.

    For every mode n in ``modes`` this checks, on the given vector, that
    commuting L_{-1} past the field mode reproduces the mode of the shifted
    field: [L_{-1}, f_n] v = -n f_{n-1} v.
    """
    if v.desc.kind != VACUUM:
        raise InvalidProductModule("the derivative check runs on the vacuum module")
    lm1 = Generator("L", Fraction(-1))
    for n in modes:
        n = Fraction(n)
        lhs = act(lm1, field_mode(f, n, v)) - field_mode(f, n, act(lm1, v))
        rhs = field_mode(f, n - 1, v) * ParamPoly.const(-n)
        if lhs != rhs:
            return False
    return True
