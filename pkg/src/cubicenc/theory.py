"""The toy additive Hilbert-style theory.

Formulas are opaque Gödel numbers.  A line is either an axiom or follows by
modus ponens from two earlier lines, where modus ponens is arithmetised as
addition: ``f_i = f_j + f_k`` with ``j, k < i`` (``j == k`` allowed).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ProofInvalid


@dataclass(frozen=True)
class TheorySpec:
    axioms: tuple[int, ...]
    target: int

    def __post_init__(self):
        axioms = tuple(int(g) for g in self.axioms)
        object.__setattr__(self, "axioms", axioms)
        if not axioms:
            raise ValueError("axiom set must be nonempty")
        if len(set(axioms)) != len(axioms):
            raise ValueError(f"axioms must be distinct: {axioms}")
        if min(axioms) < 0:
            raise ValueError("axioms must be natural numbers")
        if self.target < 1:
            raise ValueError("target must be >= 1")


@dataclass(frozen=True)
class Line:
    value: int
    mp: tuple[int, int] | None = None  # None marks an axiom line

    @property
    def is_axiom(self) -> bool:
        return self.mp is None


@dataclass(frozen=True)
class Proof:
    lines: tuple[Line, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "lines", tuple(self.lines))

    def __len__(self):
        return len(self.lines)

    def __iter__(self):
        return iter(self.lines)

    @property
    def values(self) -> tuple[int, ...]:
        return tuple(line.value for line in self.lines)

    @classmethod
    def of(cls, *lines) -> "Proof":
        """Shorthand: ``Proof.of((3, "ax"), (5, "ax"), (8, (1, 2)))``."""
        out = []
        for value, just in lines:
            out.append(Line(value, None if just == "ax" else tuple(just)))
        return cls(tuple(out))


def proof_errors(theory: TheorySpec, proof: Proof) -> list[str]:
    """Reasons why ``proof`` is not a proof of the target; empty when valid."""
    errors = []
    if not proof.lines:
        return ["empty proof"]
    axioms = set(theory.axioms)
    for i, line in enumerate(proof.lines, 1):
        if line.value < 0:
            errors.append(f"line {i}: negative value {line.value}")
        if line.is_axiom:
            if line.value not in axioms:
                errors.append(f"line {i}: {line.value} is not an axiom")
            continue
        j, k = line.mp
        if not (1 <= j < i and 1 <= k < i):
            errors.append(f"line {i}: MP({j},{k}) does not cite earlier lines")
            continue
        fj, fk = proof.lines[j - 1].value, proof.lines[k - 1].value
        if line.value != fj + fk:
            errors.append(f"line {i}: {line.value} != {fj} + {fk}")
    if proof.lines[-1].value != theory.target:
        errors.append(f"last line {proof.lines[-1].value} is not the target {theory.target}")
    return errors


def check_proof(theory: TheorySpec, proof: Proof) -> bool:
    return not proof_errors(theory, proof)


def search_proof(theory: TheorySpec, max_len: int) -> Proof | None:
    """Shortest proof of the target with at most ``max_len`` lines, or None.

    Iterative deepening over sets of derived values.  Values above the target
    are never useful because every rule is monotone, and repeating a value
    never helps.
    """
    if max_len < 1:
        raise ValueError("max_len must be >= 1")
    target = theory.target
    axioms = sorted(g for g in theory.axioms if g <= target)

    def extend(lines: list[Line], budget: int, dead: set) -> list[Line] | None:
        values = [line.value for line in lines]
        key = (frozenset(values), budget)
        if budget == 0 or key in dead:
            return None
        candidates: dict[int, tuple[int, int] | None] = {}
        for g in axioms:
            candidates.setdefault(g, None)
        for j in range(len(values)):
            for k in range(j, len(values)):
                s = values[j] + values[k]
                if s <= target:
                    candidates.setdefault(s, (j + 1, k + 1))
        have = set(values)
        if target in candidates:
            return lines + [Line(target, candidates[target])]
        if budget > 1:
            for value in sorted(candidates):
                if value in have:
                    continue
                found = extend(lines + [Line(value, candidates[value])], budget - 1, dead)
                if found is not None:
                    return found
        dead.add(key)
        return None

    for length in range(1, max_len + 1):
        found = extend([], length, set())
        if found is not None:
            return Proof(tuple(found))
    return None


def pad_proof(theory: TheorySpec, proof: Proof, length: int) -> Proof:
    """Prepend axiom lines so the proof has exactly ``length`` lines."""
    if len(proof) > length:
        raise ProofInvalid(f"proof has {len(proof)} lines, more than {length}")
    pad = length - len(proof)
    g = theory.axioms[0]
    lines = [Line(g) for _ in range(pad)]
    for line in proof.lines:
        mp = None if line.mp is None else (line.mp[0] + pad, line.mp[1] + pad)
        lines.append(Line(line.value, mp))
    return Proof(tuple(lines))


def proof_to_json(theory: TheorySpec, proof: Proof) -> dict:
    return {
        "axioms": list(theory.axioms),
        "target": theory.target,
        "lines": [
            {"f": line.value, "just": "ax" if line.is_axiom else {"mp": list(line.mp)}}
            for line in proof.lines
        ],
    }


def proof_from_json(data: dict) -> tuple[TheorySpec, Proof]:
    theory = TheorySpec(tuple(data["axioms"]), int(data["target"]))
    lines = []
    for entry in data["lines"]:
        just = entry["just"]
        if just == "ax":
            lines.append(Line(int(entry["f"])))
        elif isinstance(just, dict) and "mp" in just and len(just["mp"]) == 2:
            j, k = just["mp"]
            lines.append(Line(int(entry["f"]), (int(j), int(k))))
        else:
            raise ValueError(f"bad justification {just!r}")
    return theory, Proof(tuple(lines))
