"""Witnesses from proofs, verification, and proof extraction from assignments."""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass, field

from .encoder import (
    LOWER_SQUARES, UPPER_SQUARES, Constraint, ConstraintSystem, bax_name, bmp_name,
    build_system, digit_name, f_name, mp_triples, q_name, r_name, sel_name,
)
from .errors import AmbiguousJustification, NotSatisfying, ProofInvalid, WindowTooSmall
from .numthy import beta_params, fibonacci, four_squares, zeckendorf
from .poly import Role
from .reducer import MergedPolynomial, Reduction, extend_witness, merge, reduce_degree
from .theory import Line, Proof, TheorySpec, pad_proof, proof_errors


@dataclass
class Failure:
    index: int
    label: str
    value: int


@dataclass
class VerificationReport:
    satisfied: bool
    failures: list[Failure] = field(default_factory=list)
    max_degree: int = 0
    checked: int = 0

    def to_json(self) -> dict:
        return {
            "satisfied": self.satisfied,
            "checked": self.checked,
            "max_degree": self.max_degree,
            "failures": [{"id": f.index, "constraint": f.label, "value": f.value}
                         for f in self.failures],
        }


def _witness_values(theory: TheorySpec, proof: Proof, system: ConstraintSystem) -> dict[str, int]:
    params = system.params
    n, K = params.length, params.window
    fs = proof.values
    top = fibonacci(K + 1)
    for value in fs:
        if value >= top:
            raise WindowTooSmall(K, value)

    values: dict[str, int] = {}
    # guards u = 1, v = 0; T = 1, U = 0
    for v in system.registry:
        if v.role == Role.GUARD:
            values[v.name] = 1
        elif v.role == Role.SLACK:
            values[v.name] = 0
    values["T"], values["U"] = 1, 0

    bp = beta_params(fs)
    values["c"], values["d"] = bp.c, bp.d
    for i, (value, line) in enumerate(zip(fs, proof.lines), 1):
        values[f_name(i)] = value
        modulus = bp.modulus(i)
        values[q_name(i)], values[r_name(i)] = divmod(bp.c, modulus)
        r = values[r_name(i)]
        for s, x in zip(LOWER_SQUARES, four_squares(r)):
            values[f"{s}_{i}"] = x
        for s, x in zip(UPPER_SQUARES, four_squares((i + 1) * bp.d - 1 - r)):
            values[f"{s}_{i}"] = x
        for kappa, bit in zeckendorf(value, K).as_dict().items():
            values[digit_name(i, kappa)] = bit
        values[bax_name(i)] = int(line.is_axiom)
        for ell, g in enumerate(params.axioms, 1):
            values[sel_name(i, ell)] = int(line.is_axiom and value == g)
    for i, j, k in mp_triples(n):
        values[bmp_name(i, j, k)] = int(proof.lines[i - 1].mp == (j, k))
    return values


def build_witness(theory: TheorySpec, proof: Proof, system: ConstraintSystem) -> dict[str, int]:
    """Satisfying assignment for ``system`` built from a valid proof.

    Proofs shorter than the system length are padded with leading axiom lines.
    """
    errors = proof_errors(theory, proof)
    if errors:
        raise ProofInvalid("; ".join(errors))
    params = system.params
    if params is None:
        raise ValueError("system carries no encoder parameters")
    if set(theory.axioms) != set(params.axioms) or theory.target != params.target:
        raise ProofInvalid("proof is for a different theory than the system")
    if len(proof) < params.length:
        proof = pad_proof(theory, proof, params.length)
    elif len(proof) > params.length:
        raise ProofInvalid(f"proof has {len(proof)} lines, system encodes {params.length}")
    values = _witness_values(theory, proof, system)
    missing = [v.name for v in system.registry if v.name not in values]
    assert not missing, missing
    return values


def verify_constraints(constraints: list[Constraint], values: Mapping[str, int]) -> VerificationReport:
    failures = []
    for idx, con in enumerate(constraints):
        value = con.poly.evaluate(values)
        if value != 0:
            failures.append(Failure(idx, con.label, value))
    max_degree = max((c.degree for c in constraints), default=0)
    return VerificationReport(not failures, failures, max_degree, len(constraints))


def verify(system: ConstraintSystem, values: Mapping[str, int]) -> VerificationReport:
    """Evaluate every constraint exactly; raises MissingVariable on partial input."""
    return verify_constraints(system.constraints, values)


def extract_proof(system: ConstraintSystem, values: Mapping[str, int]) -> Proof:
    """Read the proof encoded by a satisfying assignment."""
    report = verify(system, values)
    if not report.satisfied:
        raise NotSatisfying(f"{len(report.failures)} constraints do not vanish, "
                            f"first: {report.failures[0].label}")
    n = system.params.length
    lines = []
    for i in range(1, n + 1):
        value = values[f_name(i)]
        active = [(j, k) for j in range(1, i) for k in range(1, i)
                  if values[bmp_name(i, j, k)] == 1]
        axiom = values[bax_name(i)] == 1
        if axiom and not active:
            lines.append(Line(value))
        elif not axiom and len(active) == 1:
            lines.append(Line(value, active[0]))
        else:
            raise AmbiguousJustification(f"line {i}: axiom={axiom}, mp={active}")
    return Proof(tuple(lines))


@dataclass
class PipelineResult:
    system: ConstraintSystem
    proof: Proof
    witness: dict[str, int]
    system_report: VerificationReport
    merged: MergedPolynomial
    merged_value: int
    reduction: Reduction
    extended: dict[str, int]
    report: VerificationReport

    @property
    def max_degree(self) -> int:
        return self.reduction.max_degree()

    def stats(self) -> dict:
        return {
            "system": self.system.stats(),
            "merged": {"monomials": len(self.merged.poly), "degree": self.merged.degree,
                       "sources": self.merged.source_count},
            "reduced": {"shield_variables": len(self.reduction.trace),
                        "monomials": len(self.reduction.reduced),
                        "max_degree": self.max_degree},
        }


def pipeline_witness(theory: TheorySpec, proof: Proof, length: int | None = None,
                     window: int | None = None, activation: bool = False) -> PipelineResult:
    """Encode, witness, merge, reduce, extend and verify the reduced artifacts."""
    length = len(proof) if length is None else length
    system = build_system(theory, length, window, activation)
    witness = build_witness(theory, proof, system)
    system_report = verify(system, witness)
    merged = merge(system)
    merged_value = merged.poly.evaluate(witness)
    reduction = reduce_degree(merged.poly, system.registry.copy())
    extended = extend_witness(witness, reduction.trace)
    final = Constraint(reduction.reduced)
    report = verify_constraints(reduction.constraints + [final], extended)
    if report.max_degree > 3:
        raise AssertionError(f"reduced artifacts reach degree {report.max_degree}")
    if len(proof) < length:
        proof = pad_proof(theory, proof, length)
    return PipelineResult(system, proof, witness, system_report, merged, merged_value,
                          reduction, extended, report)
