"""Compile a theory and a proof length into a cubic constraint system.

Every constraint is a polynomial that must vanish over the naturals.  Inner
constraints of degree <= 2 are wrapped by a guard pair

    u * E = 0,    u - 1 - v^2 = 0

which forces ``u >= 1`` and therefore ``E = 0`` while keeping the degree at
most 3.  The axiom membership test is already cubic and stays unwrapped.

Modus ponens uses one gadget per triple ``(i, j, k)`` with ``j, k < i``:

    u_mp * (b_mp - b_mp^2) = 0          guarded boolean          (degree 3)
    u_mp - 1 - v_mp^2 = 0               guard positivity         (degree 2)
    b_mp * (f_i - f_j - f_k) = 0        activated sum            (degree 2)

so the sum is enforced only for the triple whose boolean is set.  The
remainder ``r_i`` of the beta division is tied to the line value by a guarded
``r_i - f_i = 0``, so ``c mod (1 + (i+1)d) = f_i``.

Axiom membership selects one axiom with booleans ``s_{i,l}``:

    s_{i,l} (s_{i,l} - 1) = 0                                    (degree 2)
    u_A * (s_{i,1} + ... + s_{i,M} - b_ax_i) = 0                 (degree 2)
    s_{i,1} (f_i - g_1)^2 + ... + s_{i,M} (f_i - g_M)^2 = 0      (degree 3)

A bare ``b_ax_i * sum_l (f_i - g_l)^2`` would demand equality with every
axiom at once.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .errors import DegreeTooHigh, IndexViolation
from .numthy import digit_window, fibonacci
from .poly import Polynomial, Registry, Role, Var, poly_sum
from .theory import TheorySpec


class Kind(str, enum.Enum):
    BETA_DIV = "BetaDiv"
    BETA_LINK = "BetaLink"
    LOWER_BOUND = "LowerBound"
    UPPER_BOUND = "UpperBound"
    DIGIT_BOOL = "DigitBool"
    NON_ADJACENCY = "NonAdjacency"
    ZECK_SUM = "ZeckSum"
    AXIOM_BOOL = "AxiomBool"
    AXIOM_TEST = "AxiomTest"
    AXIOM_SELECT = "AxiomSelect"
    AXIOM_CHOICE = "AxiomChoice"
    MP_BOOL = "MpBool"
    MP_GUARD_POS = "MpGuardPos"
    MP_SUM = "MpSum"
    EXACTLY_ONE = "ExactlyOne"
    EXACTLY_ONE_GUARD_POS = "ExactlyOneGuardPos"
    TARGET = "Target"
    GLOBAL_MULT = "GlobalMult"
    GUARD_POS = "GuardPos"
    ACTIVATION = "Activation"
    SHIELD = "Shield"
    CANONICAL_GADGET = "CanonicalGadget"
    PLAIN = "Plain"


# exact degree of every constraint kind the encoder emits
KIND_DEGREE = {
    Kind.BETA_DIV: 3,
    Kind.BETA_LINK: 2,
    Kind.LOWER_BOUND: 3,
    Kind.UPPER_BOUND: 3,
    Kind.DIGIT_BOOL: 3,
    Kind.NON_ADJACENCY: 3,
    Kind.ZECK_SUM: 2,
    Kind.AXIOM_BOOL: 2,
    Kind.AXIOM_TEST: 3,
    Kind.AXIOM_SELECT: 2,
    Kind.AXIOM_CHOICE: 2,
    Kind.MP_BOOL: 3,
    Kind.MP_GUARD_POS: 2,
    Kind.MP_SUM: 2,
    Kind.EXACTLY_ONE: 2,
    Kind.EXACTLY_ONE_GUARD_POS: 2,
    Kind.TARGET: 2,
    Kind.GLOBAL_MULT: 2,
    Kind.GUARD_POS: 2,
    Kind.ACTIVATION: 2,
}


@dataclass(frozen=True)
class Constraint:
    poly: Polynomial
    kind: Kind = Kind.PLAIN
    indices: tuple[int, ...] = ()

    @property
    def degree(self) -> int:
        return self.poly.degree

    @property
    def label(self) -> str:
        return self.kind.value + "".join(f"[{i}]" for i in self.indices)


@dataclass(frozen=True)
class SystemParams:
    length: int
    window: int
    axioms: tuple[int, ...]
    target: int
    activation: bool = False

    @property
    def theory(self) -> TheorySpec:
        return TheorySpec(self.axioms, self.target)


@dataclass
class ConstraintSystem:
    registry: Registry
    constraints: list[Constraint] = field(default_factory=list)
    params: SystemParams | None = None

    def var(self, name: str) -> Var:
        return self.registry.get(name)

    def max_degree(self) -> int:
        return max((c.degree for c in self.constraints), default=0)

    def monomial_count(self) -> int:
        return sum(len(c.poly) for c in self.constraints)

    def stats(self) -> dict:
        return {
            "variables": len(self.registry),
            "constraints": len(self.constraints),
            "monomials": self.monomial_count(),
            "max_degree": self.max_degree(),
        }


# -- variable names --------------------------------------------------------------

def f_name(i): return f"f_{i}"
def q_name(i): return f"q_{i}"
def r_name(i): return f"r_{i}"
def digit_name(i, kappa): return f"d_{i}_{kappa}"
def bax_name(i): return f"b_ax_{i}"
def bmp_name(i, j, k): return f"b_mp_{i}_{j}_{k}"
def sel_name(i, ell): return f"s_ax_{i}_{ell}"


LOWER_SQUARES = ("a", "b", "c", "e")
UPPER_SQUARES = ("alpha", "beta", "gamma", "eta")


def mp_triples(length: int):
    """All (i, j, k) with 1 <= j, k < i <= length, in generation order."""
    for i in range(2, length + 1):
        for j in range(1, i):
            for k in range(1, i):
                yield i, j, k


def triple_count(length: int) -> int:
    return sum((i - 1) ** 2 for i in range(1, length + 1))


def expected_counts(length: int, window: int, n_axioms: int,
                    activation: bool = False) -> tuple[int, int]:
    """Closed-form (variable count, constraint count) of a built system."""
    n, k, m, t = length, window, n_axioms, triple_count(length)
    guards = n * (2 * k + 4) + t
    variables = 4 + n * (5 * k + m + 19) + 3 * t
    constraints = n * (4 * k + m + 10) + 3 * t + 2
    if activation:
        constraints += guards
    return variables, constraints


def default_window(theory: TheorySpec, length: int) -> int:
    """Digit window covering every value a proof of this length can reach.

    A line is at most twice the largest earlier line, so values stay below
    ``max(axioms) * 2**(length-1)``.
    """
    bound = max(max(theory.axioms) * 2 ** (length - 1), theory.target)
    return digit_window(bound)


class Encoder:
    """Stateful generator; owns the registry that receives fresh guard variables."""

    def __init__(self, length: int, window: int, n_axioms: int = 1,
                 registry: Registry | None = None):
        if length < 1:
            raise ValueError("proof length must be >= 1")
        if window < 2:
            raise ValueError("digit window must be >= 2")
        self.length = length
        self.window = window
        self.n_axioms = n_axioms
        self.registry = registry if registry is not None else Registry()
        self._declare()

    def _declare(self):
        reg = self.registry
        new = reg.new
        self.c = new("c", Role.BETA)
        self.d = new("d", Role.BETA)
        self.T = new("T", Role.GLOBAL)
        self.U = new("U", Role.GLOBAL)
        for i in range(1, self.length + 1):
            new(f_name(i), Role.SEQ)
            new(q_name(i), Role.QUOT)
            new(r_name(i), Role.REM)
            for s in LOWER_SQUARES + UPPER_SQUARES:
                new(f"{s}_{i}", Role.SQUARE)
            for kappa in range(2, self.window + 1):
                new(digit_name(i, kappa), Role.DIGIT)
            new(bax_name(i), Role.BOOL)
            for ell in range(1, self.n_axioms + 1):
                new(sel_name(i, ell), Role.BOOL)
        for i, j, k in mp_triples(self.length):
            new(bmp_name(i, j, k), Role.BOOL)

    def p(self, name: str) -> Polynomial:
        return Polynomial.var(self.registry.get(name))

    def guard_wrap(self, e: Polynomial, kind: Kind, tag: str, indices: tuple[int, ...],
                   pos_kind: Kind = Kind.GUARD_POS):
        """Return (guarded, positivity, u, v) for the inner constraint ``e``."""
        if e.degree > 2:
            raise DegreeTooHigh(f"cannot guard a degree-{e.degree} constraint")
        suffix = "_".join(str(i) for i in indices)
        u = self.registry.new(f"u_{tag}_{suffix}", Role.GUARD)
        v = self.registry.new(f"v_{tag}_{suffix}", Role.SLACK)
        U, V = Polynomial.var(u), Polynomial.var(v)
        guarded = Constraint(U * e, kind, indices)
        positivity = Constraint(U - 1 - V * V, pos_kind, indices)
        return guarded, positivity, u, v

    def _wrapped(self, e, kind, tag, indices, pos_kind=Kind.GUARD_POS):
        guarded, positivity, _, _ = self.guard_wrap(e, kind, tag, indices, pos_kind)
        return [guarded, positivity]

    def gen_beta(self, i: int) -> list[Constraint]:
        c, d = Polynomial.var(self.c), Polynomial.var(self.d)
        e = c - self.p(q_name(i)) * (1 + (i + 1) * d) - self.p(r_name(i))
        return self._wrapped(e, Kind.BETA_DIV, "beta", (i,))

    def gen_link(self, i: int) -> list[Constraint]:
        e = self.p(r_name(i)) - self.p(f_name(i))
        return self._wrapped(e, Kind.BETA_LINK, "R", (i,))

    def gen_bounds(self, i: int) -> list[Constraint]:
        d = Polynomial.var(self.d)
        r = self.p(r_name(i))
        lower = r - poly_sum(self.p(f"{s}_{i}") ** 2 for s in LOWER_SQUARES)
        upper = (i + 1) * d - r - 1 - poly_sum(self.p(f"{s}_{i}") ** 2 for s in UPPER_SQUARES)
        return (self._wrapped(lower, Kind.LOWER_BOUND, "L", (i,))
                + self._wrapped(upper, Kind.UPPER_BOUND, "U", (i,)))

    def gen_zeckendorf(self, i: int) -> list[Constraint]:
        K = self.window
        out = []
        digits = {kappa: self.p(digit_name(i, kappa)) for kappa in range(2, K + 1)}
        for kappa in range(2, K + 1):
            dk = digits[kappa]
            out += self._wrapped(dk - dk * dk, Kind.DIGIT_BOOL, "B", (i, kappa))
        for kappa in range(2, K):
            out += self._wrapped(digits[kappa] * digits[kappa + 1], Kind.NON_ADJACENCY,
                                 "N", (i, kappa))
        recon = self.p(f_name(i)) - poly_sum(fibonacci(kappa) * digits[kappa]
                                             for kappa in range(2, K + 1))
        out += self._wrapped(recon, Kind.ZECK_SUM, "Z", (i,))
        return out

    def gen_axiom_test(self, i: int, axioms) -> list[Constraint]:
        if not axioms:
            raise ValueError("axiom set must be nonempty")
        if len(axioms) != self.n_axioms:
            raise ValueError(f"encoder declared {self.n_axioms} axioms, got {len(axioms)}")
        b = self.p(bax_name(i))
        f = self.p(f_name(i))
        sel = [self.p(sel_name(i, ell)) for ell in range(1, len(axioms) + 1)]
        out = [Constraint(b * (b - 1), Kind.AXIOM_BOOL, (i,))]
        out += [Constraint(s * (s - 1), Kind.AXIOM_SELECT, (i, ell))
                for ell, s in enumerate(sel, 1)]
        out += self._wrapped(poly_sum(sel) - b, Kind.AXIOM_CHOICE, "A", (i,))
        membership = poly_sum(s * (f - g) ** 2 for s, g in zip(sel, axioms))
        out.append(Constraint(membership, Kind.AXIOM_TEST, (i,)))
        return out

    def gen_mp(self, i: int, j: int, k: int) -> list[Constraint]:
        if not (1 <= j < i and 1 <= k < i):
            raise IndexViolation(f"MP triple ({i},{j},{k}) needs 1 <= j, k < i")
        b = self.p(bmp_name(i, j, k))
        out = self._wrapped(b - b * b, Kind.MP_BOOL, "mp", (i, j, k), Kind.MP_GUARD_POS)
        total = self.p(f_name(i)) - self.p(f_name(j)) - self.p(f_name(k))
        out.append(Constraint(b * total, Kind.MP_SUM, (i, j, k)))
        return out

    def gen_exactly_one(self, i: int) -> list[Constraint]:
        e = self.p(bax_name(i)) - 1 + poly_sum(
            self.p(bmp_name(i, j, k)) for j in range(1, i) for k in range(1, i))
        return self._wrapped(e, Kind.EXACTLY_ONE, "J", (i,), Kind.EXACTLY_ONE_GUARD_POS)

    def gen_target(self, target: int) -> list[Constraint]:
        T, U = Polynomial.var(self.T), Polynomial.var(self.U)
        return [
            Constraint(T * (self.p(f_name(self.length)) - target), Kind.TARGET, (self.length,)),
            Constraint(T - 1 - U * U, Kind.GLOBAL_MULT),
        ]

    def gen_activation(self) -> list[Constraint]:
        """Selective activation T * (1 - u) = 0 for every guard u."""
        T = Polynomial.var(self.T)
        return [Constraint(T * (1 - Polynomial.var(u)), Kind.ACTIVATION, (u.index,))
                for u in self.registry.by_role(Role.GUARD)]


def build_system(theory: TheorySpec, length: int, window: int | None = None,
                 activation: bool = False) -> ConstraintSystem:
    """Complete constraint system for "the target has a proof of exactly ``length`` lines"."""
    if window is None:
        window = default_window(theory, length)
    enc = Encoder(length, window, len(theory.axioms))
    constraints: list[Constraint] = []
    for i in range(1, length + 1):
        constraints += enc.gen_beta(i)
        constraints += enc.gen_link(i)
        constraints += enc.gen_bounds(i)
        constraints += enc.gen_zeckendorf(i)
        constraints += enc.gen_axiom_test(i, theory.axioms)
        constraints += enc.gen_exactly_one(i)
    for i, j, k in mp_triples(length):
        constraints += enc.gen_mp(i, j, k)
    constraints += enc.gen_target(theory.target)
    if activation:
        constraints += enc.gen_activation()

    for con in constraints:
        want = KIND_DEGREE[con.kind]
        if con.degree != want:
            raise AssertionError(f"{con.label} has degree {con.degree}, expected {want}")
    system = ConstraintSystem(enc.registry, constraints,
                              SystemParams(length, window, theory.axioms, theory.target,
                                           activation))
    assert (len(system.registry), len(constraints)) == expected_counts(
        length, window, len(theory.axioms), activation)
    return system
