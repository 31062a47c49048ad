"""Sum-of-squares aggregation and degree reduction by monomial shielding.

Shielding splits a monomial ``m`` of degree ``d`` into ``m = p * q`` with
``deg p = ceil(d/2)`` and ``deg q = floor(d/2)``, shields every factor of
degree > 1 recursively and introduces a fresh ``y`` with ``y - p' * q' = 0``.
The split lists the variable occurrences in index order and gives the first
``floor(d/2)`` of them to ``q``, which is shielded first; for ``x^3 y^2 z``
this yields ``x^3 = x^2 * x`` then ``y^2 z = y z * y``.

Identical monomials and sub-factors share one fresh variable across a whole
reduction.
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass, field

from .encoder import Constraint, ConstraintSystem, Kind
from .errors import DegreeTooHigh
from .poly import Monomial, Polynomial, Registry, Role, Var, mono_degree, monomial, poly_sum


@dataclass(frozen=True)
class MergedPolynomial:
    poly: Polynomial
    source_count: int

    @property
    def degree(self) -> int:
        return self.poly.degree


def merge(system: ConstraintSystem) -> MergedPolynomial:
    """Replace the system {P_i = 0} by the single equation sum P_i^2 = 0."""
    for con in system.constraints:
        if con.degree > 3:
            raise DegreeTooHigh(f"{con.label} has degree {con.degree} > 3")
    poly = poly_sum(con.poly * con.poly for con in system.constraints)
    assert poly.degree <= 6
    return MergedPolynomial(poly, len(system.constraints))


@dataclass
class ReductionTrace:
    """Ordered shield definitions ``fresh = definition``."""

    substitutions: list[tuple[Var, Polynomial]] = field(default_factory=list)

    def __len__(self):
        return len(self.substitutions)

    def __iter__(self):
        return iter(self.substitutions)

    def constraints(self) -> list[Constraint]:
        return [Constraint(Polynomial.var(y) - definition, Kind.SHIELD, (y.index,))
                for y, definition in self.substitutions]


@dataclass
class Reduction:
    constraints: list[Constraint]
    reduced: Polynomial
    trace: ReductionTrace
    registry: Registry

    def max_degree(self) -> int:
        return max([self.reduced.degree] + [c.degree for c in self.constraints])


def _split(m: Monomial) -> tuple[Monomial, Monomial]:
    occurrences = [v for v, e in m for _ in range(e)]
    half = len(occurrences) // 2
    q = monomial(*occurrences[:half])
    p = monomial(*occurrences[half:])
    return p, q


class Shielder:
    """Fresh-variable allocator with a cache shared over one reduction."""

    def __init__(self, registry: Registry, prefix: str = "w"):
        self.registry = registry
        self.prefix = prefix
        self.cache: dict[Monomial, Var] = {}
        self.trace = ReductionTrace()

    def _factor(self, m: Monomial) -> Polynomial:
        if mono_degree(m) <= 1:
            return Polynomial({m: 1})
        return Polynomial.var(self.shield(m))

    def shield(self, m: Monomial) -> Var:
        """Variable standing for ``m``; emits the defining constraints once."""
        if m in self.cache:
            return self.cache[m]
        if mono_degree(m) < 2:
            raise ValueError("only monomials of degree >= 2 are shielded")
        p, q = _split(m)
        fq = self._factor(q)
        definition = self._factor(p) * fq
        y = self.registry.fresh(self.prefix, Role.SHIELD)
        self.cache[m] = y
        self.trace.substitutions.append((y, definition))
        return y


def shield_monomial(m: Monomial, registry: Registry) -> tuple[ReductionTrace, Var]:
    """Shield a single monomial of degree > 3; returns its trace and replacement."""
    d = mono_degree(m)
    if d <= 3:
        raise ValueError(f"monomial of degree {d} needs no shielding")
    sh = Shielder(registry)
    y = sh.shield(m)
    return sh.trace, y


def reduce_degree(r: Polynomial, registry: Registry, prefix: str = "w") -> Reduction:
    """Replace every monomial of degree > 3 in ``r`` by a shield variable.

    ``registry`` receives the fresh variables; pass a copy to keep the
    original untouched.
    """
    sh = Shielder(registry, prefix)
    mapping = {}
    for m, _ in r.items():
        d = mono_degree(m)
        if d > 3:
            before = len(sh.trace)
            mapping[m] = sh.shield(m)
            added = len(sh.trace) - before
            if added > d - 1:
                raise AssertionError(f"{added} fresh variables for a degree-{d} monomial")
    reduced = r.substitute(mapping)
    constraints = sh.trace.constraints()
    result = Reduction(constraints, reduced, sh.trace, registry)
    if result.max_degree() > 3:
        raise AssertionError("degree reduction left a term above degree 3")
    return result


def extend_witness(values: Mapping[str, int], trace: ReductionTrace) -> dict[str, int]:
    """Add values for every shield variable by evaluating definitions in order."""
    out = dict(values)
    for y, definition in trace:
        out[y.name] = definition.evaluate(out)
    return out


def canonical_gadget(e: Polynomial, registry: Registry) -> tuple[Constraint, Var, Var]:
    """Q_E = U * E - Z^2 with fresh U, Z.

    One-sided: U = 1, Z = 2 satisfies it for E = 4, so it does not force
    E = 0 and is kept out of the pipeline.
    """
    if e.degree > 2:
        raise DegreeTooHigh(f"canonical gadget needs degree <= 2, got {e.degree}")
    u = registry.fresh("U_g", Role.GUARD)
    z = registry.fresh("Z_g", Role.SLACK)
    Z = Polynomial.var(z)
    return Constraint(Polynomial.var(u) * e - Z * Z, Kind.CANONICAL_GADGET), u, z
