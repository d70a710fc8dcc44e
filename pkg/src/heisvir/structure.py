"""Structural analysis: symmetry group, contravariant forms, characters.

This module determines the symmetry trichotomy of the vacuum module's vertex
algebra by deriving scale constraints from actual module computations,
builds contravariant Gram matrices on twisted Verma modules, extracts
singular vectors as exact kernels over Q, computes graded dimensions of the
irreducible quotients, and checks the splitting of the conformal vector into
a Heisenberg part and a commuting Virasoro complement.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import floor

from .algebra import Generator, bracket_elem
from .kernel import ParamPoly, Rational
from .modules import (
    CYCLIC,
    TWISTED_VERMA,
    ModuleDescriptor,
    ModuleVector,
    PBWMonomial,
    act,
    act_elem,
    basis_at_level,
    cyclic_vector,
    factor_generators,
    graded_dimension,
    lattice_levels,
    level_of,
    monomial_vector,
    vacuum_module,
)

__all__ = [
    "DomainError",
    "ConcreteParamsError",
    "AutReport",
    "automorphism_group",
    "GramMatrix",
    "gram_matrix",
    "gram_rank",
    "gram_nullity",
    "raising_generators",
    "singular_vectors",
    "irreducible_character",
    "verma_character",
    "ConformalReport",
    "conformal_decomposition_check",
]


class DomainError(ValueError):
    """An argument is outside the operation's mathematical domain."""


class ConcreteParamsError(ValueError):
    """The operation needs concrete rational parameters, not symbols."""


# -- symmetry group of the vacuum vertex algebra ------------------------------


@dataclass
class AutReport:
    """Symmetry-group case label together with the derived constraints.

    ``constraints`` lists, per defining relation, the polynomial in the
    scale variable ``a`` (with symbolic central parameters) that the scale
    of any symmetry must annihilate.
    """

    case: str
    l2: Rational
    l3: Rational
    constraints: list[tuple[str, ParamPoly]]

    def to_json(self) -> dict:
        return {
            "case": self.case,
            "l2": str(self.l2),
            "l3": str(self.l3),
            "constraints": [[name, str(poly)] for name, poly in self.constraints],
        }


def automorphism_group(l2, l3) -> AutReport:
    """Symmetry trichotomy of the vacuum vertex algebra at central values.

    Any symmetry fixes the conformal state and rescales the weight-one
    generator state by some a != 0.  Comparing a-scaled module computations
    with their unscaled images yields one constraint per relation; the
    constraints are computed on the symbolic vacuum module, then solved at
    the given rational (l2, l3).
    """
    l2 = Fraction(l2)
    l3 = Fraction(l3)
    desc = vacuum_module()
    a = ParamPoly.var("a")
    i_state = monomial_vector(desc, PBWMonomial((1,), ()))

    constraints: list[tuple[str, ParamPoly]] = []
    # L_1 applied to the generator state: scaled image minus fixed image.
    l1_image = act(Generator("L", Fraction(1)), i_state)
    diff = l1_image * a - l1_image
    constraints.append(("L1I", diff.coefficient(CYCLIC).monic()))
    # First I-mode product of the generator state with itself: the scale
    # enters quadratically.
    i1_image = act(Generator("I", Fraction(1)), i_state)
    diff = i1_image * (a * a) - i1_image
    constraints.append(("I1I", diff.coefficient(CYCLIC).monic()))

    if l2 != 0:
        case = "Trivial"
    elif l3 != 0:
        case = "Z2"
    else:
        case = "Cx"
    return AutReport(case, l2, l3, constraints)


# -- contravariant form --------------------------------------------------------


@dataclass
class GramMatrix:
    level: Fraction
    basis: list[PBWMonomial]
    entries: list[list[ParamPoly]]

    def to_json(self) -> dict:
        return {
            "level": str(self.level),
            "basis": [m.to_json() for m in self.basis],
            "entries": [[str(e) for e in row] for row in self.entries],
        }


def _raised(g: Generator) -> Generator:
    return Generator(g.kind, -g.index)


def _pair_with_cyclic(desc: ModuleDescriptor, mono: PBWMonomial, v: ModuleVector) -> ParamPoly:
    # Coefficient of the cyclic vector in theta(mono) . v, where theta is the
    # anti-involution L_n -> L_{-n}, I_r -> I_{-r} (it reverses words, so the
    # original leftmost factor is applied first).
    out = v
    for g in factor_generators(desc, mono):
        out = act(_raised(g), out)
        if out.is_zero:
            break
    return out.coefficient(CYCLIC)


def gram_matrix(desc: ModuleDescriptor, level) -> GramMatrix:
    """Contravariant form of a twisted Verma module at one positive level."""
    if desc.kind != TWISTED_VERMA:
        raise DomainError("the contravariant form is computed on twisted Vermas")
    level = Fraction(level)
    if level <= 0 or (level * desc.t).denominator != 1:
        raise DomainError(f"level must be positive on the (1/{desc.t})Z lattice")
    basis = basis_at_level(desc, level)
    columns = [monomial_vector(desc, m) for m in basis]
    entries = [
        [_pair_with_cyclic(desc, row_mono, col) for col in columns]
        for row_mono in basis
    ]
    return GramMatrix(level, basis, entries)


def _concrete_entries(gram: GramMatrix) -> list[list[Fraction]]:
    rows = []
    for row in gram.entries:
        try:
            rows.append([e.constant_value() for e in row])
        except ValueError:
            raise ConcreteParamsError(
                "Gram entries are symbolic; bind concrete parameters first"
            ) from None
    return rows


def gram_rank(gram: GramMatrix) -> int:
    return _rank(_concrete_entries(gram))


def gram_nullity(gram: GramMatrix) -> int:
    return len(gram.basis) - gram_rank(gram)


# -- exact linear algebra over Q ----------------------------------------------


def _rref(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    m = [row[:] for row in rows]
    pivots: list[int] = []
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                factor = m[i][c]
                m[i] = [x - factor * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def _rank(rows: list[list[Fraction]]) -> int:
    if not rows or not rows[0]:
        return 0
    return len(_rref(rows)[1])


def _nullspace(rows: list[list[Fraction]], ncols: int) -> list[list[Fraction]]:
    if not rows:
        return [
            [Fraction(i == j) for i in range(ncols)] for j in range(ncols)
        ]
    reduced, pivots = _rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for r, c in enumerate(pivots):
            vec[c] = -reduced[r][f]
        basis.append(vec)
    return basis


# -- singular vectors and characters ------------------------------------------


def raising_generators(desc: ModuleDescriptor) -> list[Generator]:
    """Raising set whose brackets generate every raising mode: L_1, L_2 and
    the first two positive I-modes."""
    t = desc.t
    if desc.kind == TWISTED_VERMA:
        i_modes = [Fraction(1, t), 1 + Fraction(1, t)]
    else:
        i_modes = [Fraction(1), Fraction(2)]
    return [
        Generator("L", Fraction(1)),
        Generator("L", Fraction(2)),
        Generator("I", i_modes[0]),
        Generator("I", i_modes[1]),
    ]


def singular_vectors(desc: ModuleDescriptor, level) -> list[ModuleVector]:
    """Exact kernel of the joint raising action at one level.

    Returns a basis (over Q) of the vectors annihilated by the whole raising
    set; at a positive level these are exactly the new highest-weight
    vectors.  Requires concrete rational parameters.
    """
    if not desc.is_concrete:
        raise ConcreteParamsError("singular vectors require concrete parameters")
    level = Fraction(level)
    basis = basis_at_level(desc, level)
    if not basis:
        return []
    rows: list[list[Fraction]] = []
    for g in raising_generators(desc):
        target_level = level - g.index
        target = basis_at_level(desc, target_level)
        if not target:
            continue
        index = {m: i for i, m in enumerate(target)}
        images = [act(g, monomial_vector(desc, m)) for m in basis]
        for r in range(len(target)):
            row = [Fraction(0)] * len(basis)
            for c, image in enumerate(images):
                coeff = image.coefficient(target[r])
                if not coeff.is_zero:
                    row[c] = coeff.constant_value()
            rows.append(row)
    kernel = _nullspace(rows, len(basis))
    out = []
    for vec in kernel:
        terms = {
            mono: ParamPoly.const(x) for mono, x in zip(basis, vec) if x
        }
        out.append(ModuleVector(desc, terms))
    return out


def verma_character(desc: ModuleDescriptor, max_level) -> list[tuple[Fraction, int]]:
    """Graded dimensions of the full induced module up to max_level."""
    return [
        (lv, graded_dimension(desc, lv)) for lv in lattice_levels(desc, max_level)
    ]


def irreducible_character(desc: ModuleDescriptor, max_level) -> list[tuple[Fraction, int]]:
    """Graded dimensions of the irreducible quotient up to max_level.

    At each positive level the dimension is the rank over Q of the
    contravariant form there: the form's radical is the maximal proper
    graded submodule, so the rank is what survives in the quotient.
    """
    if not desc.is_concrete:
        raise ConcreteParamsError("irreducible characters require concrete parameters")
    out: list[tuple[Fraction, int]] = []
    for lv in lattice_levels(desc, max_level):
        if lv == 0:
            out.append((lv, 1))
        elif graded_dimension(desc, lv) == 0:
            out.append((lv, 0))
        else:
            out.append((lv, gram_rank(gram_matrix(desc, lv))))
    return out


# -- conformal decomposition ---------------------------------------------------


@dataclass
class ConformalReport:
    l1: Rational
    l2: Rational
    l3: Rational
    central_charge: Rational
    max_level: Fraction
    max_mode: int
    commute_ok: bool
    virasoro_ok: bool
    checks: int
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.commute_ok and self.virasoro_ok

    def to_json(self) -> dict:
        return {
            "l1": str(self.l1),
            "l2": str(self.l2),
            "l3": str(self.l3),
            "central_charge": str(self.central_charge),
            "max_level": str(self.max_level),
            "max_mode": self.max_mode,
            "commute_ok": self.commute_ok,
            "virasoro_ok": self.virasoro_ok,
            "checks": self.checks,
            "failures": self.failures,
        }


class _HeisenbergVirasoro:
    """Mode operators of the Heisenberg conformal vector and its complement.

    The Heisenberg conformal vector is (1/(2 l3)) I_{-1} I_{-1} 1 +
    (l2/l3) I_{-2} 1; its j-th product mode acts through the normal-ordered
    quadratic expansion plus the derivative field of I_{-2} 1.  The
    complement modes are Lt_n = L_n - (omega_H)_{n+1}.
    """

    def __init__(self, desc: ModuleDescriptor, l2: Fraction, l3: Fraction):
        self.desc = desc
        self.c_quad = Fraction(1, 2 * l3)
        self.c_deriv = Fraction(l2, l3)

    def _i_mode(self, n: Fraction, v: ModuleVector) -> ModuleVector:
        return act(Generator("I", n), v)

    def omega_h_mode(self, j: int, v: ModuleVector) -> ModuleVector:
        if v.is_zero:
            return v
        mu = int(max(level_of(self.desc, m) for m in v._terms))
        out = ModuleVector(self.desc)
        # Quadratic part: annihilation-ordered pairs; only finitely many
        # inner modes survive on a vector of bounded level.
        for i in range(0, mu + 1):
            w = self._i_mode(Fraction(i), v)
            if not w.is_zero:
                out = out + self._i_mode(Fraction(j - 1 - i), w)
        i = -1
        while j - 1 - i <= mu:
            w = self._i_mode(Fraction(j - 1 - i), v)
            if not w.is_zero:
                out = out + self._i_mode(Fraction(i), w)
            i -= 1
        out = out * self.c_quad
        if self.c_deriv:
            out = out + self._i_mode(Fraction(j - 1), v) * (self.c_deriv * (-j))
        return out

    def lt_mode(self, n: int, v: ModuleVector) -> ModuleVector:
        return act(Generator("L", Fraction(n)), v) - self.omega_h_mode(n + 1, v)


def conformal_decomposition_check(
    l1, l2, l3, max_level, max_mode: int = 3
) -> ConformalReport:
    """Verify the conformal splitting at concrete central values.

    Checks, on every basis vector up to ``max_level`` and all mode indices
    up to ``max_mode`` in absolute value, that (i) the complement modes
    commute with the Heisenberg conformal modes and (ii) the complement
    modes satisfy the Virasoro relations with central charge
    l1 - 1 + 12 l2^2 / l3.
    """
    l1 = Fraction(l1)
    l2 = Fraction(l2)
    l3 = Fraction(l3)
    if l3 == 0:
        raise DomainError("the Heisenberg conformal vector needs l3 != 0")
    max_level = Fraction(max_level)
    desc = vacuum_module(l1, l2, l3)
    ops = _HeisenbergVirasoro(desc, l2, l3)
    charge = l1 - 1 + 12 * l2 * l2 / l3

    vectors: list[ModuleVector] = []
    for lv in lattice_levels(desc, max_level):
        vectors.extend(monomial_vector(desc, m) for m in basis_at_level(desc, lv))

    modes = range(-max_mode, max_mode + 1)
    commute_failures: list[str] = []
    virasoro_failures: list[str] = []
    checks = 0
    for v in vectors:
        lt_of: dict[int, ModuleVector] = {n: ops.lt_mode(n, v) for n in modes}
        oh_of: dict[int, ModuleVector] = {n: ops.omega_h_mode(n, v) for n in modes}
        for m in modes:
            for n in modes:
                checks += 1
                lhs = ops.lt_mode(m, oh_of[n]) - ops.omega_h_mode(n, lt_of[m])
                if not lhs.is_zero:
                    commute_failures.append(f"[Lt_{m}, (omega_H)_{n}] on {v}")
                checks += 1
                comm = ops.lt_mode(m, lt_of[n]) - ops.lt_mode(n, lt_of[m])
                expect = ops.lt_mode(m + n, v) * Fraction(m - n)
                if m + n == 0:
                    expect = expect + v * (charge * Fraction(m**3 - m, 12))
                if comm != expect:
                    virasoro_failures.append(f"[Lt_{m}, Lt_{n}] on {v}")
    return ConformalReport(
        l1,
        l2,
        l3,
        charge,
        max_level,
        max_mode,
        not commute_failures,
        not virasoro_failures,
        checks,
        commute_failures + virasoro_failures,
    )
