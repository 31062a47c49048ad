"""Bounded exhaustive search for satisfying assignments of small systems.

Line values range over ``0..value_bound``, digits and booleans over ``{0, 1}``
and guard slacks over ``0..slack_bound`` (each guard is then ``1 + v^2``).  The
beta parameters, quotients, remainders and four-square witnesses are not
enumerated: for a fixed line-value sequence they are filled in with the
canonical CRT and four-square completion.  Such a completion exists for every
sequence, so restricting to it loses no line-value sequences.

This is bounded verification of small instances, not a decision procedure.
Every slack choice survives once the guarded constraint vanishes, so a
``slack_bound`` above 0 multiplies the work by ``(slack_bound + 1)`` per guard.
"""

from __future__ import annotations

from collections.abc import Iterator

from .encoder import (
    LOWER_SQUARES, UPPER_SQUARES, ConstraintSystem, bax_name, bmp_name, digit_name, f_name,
    q_name, r_name, sel_name,
)
from .numthy import beta_params, four_squares
from .poly import Role


def default_value_bound(system: ConstraintSystem) -> int:
    p = system.params
    return max(max(p.axioms) * 2 ** (p.length - 1), p.target)


def _aux_completion(system: ConstraintSystem, fs: tuple[int, ...]) -> dict[str, int] | None:
    n = system.params.length
    bp = beta_params(fs)
    out = {"c": bp.c, "d": bp.d}
    for i in range(1, n + 1):
        q, r = divmod(bp.c, bp.modulus(i))
        out[q_name(i)], out[r_name(i)] = q, r
        slack = (i + 1) * bp.d - 1 - r
        if slack < 0:
            return None
        for s, x in zip(LOWER_SQUARES, four_squares(r)):
            out[f"{s}_{i}"] = x
        for s, x in zip(UPPER_SQUARES, four_squares(slack)):
            out[f"{s}_{i}"] = x
    return out


def bounded_solutions(system: ConstraintSystem, value_bound: int | None = None,
                      slack_bound: int = 0) -> Iterator[dict[str, int]]:
    """Yield every satisfying assignment inside the search box."""
    if system.params is None:
        raise ValueError("bounded search needs an encoder-built system")
    n = system.params.length
    if value_bound is None:
        value_bound = default_value_bound(system)
    reg = system.registry

    slacks = [v.name for v in reg if v.role == Role.SLACK] + ["U"]
    guards = [v.name for v in reg if v.role == Role.GUARD] + ["T"]
    guard_slack = {u: ("U" if u == "T" else "v" + u[1:]) for u in guards}
    aux_roles = (Role.BETA, Role.QUOT, Role.REM, Role.SQUARE)
    aux = [v.name for v in reg if v.role in aux_roles]
    n_axioms = len(system.params.axioms)
    window = system.params.window
    per_line: list[str] = []
    for i in range(1, n + 1):
        # booleans before digits so the axiom and MP tests prune early
        per_line.append(f_name(i))
        per_line += [sel_name(i, ell) for ell in range(1, n_axioms + 1)]
        per_line.append(bax_name(i))
        per_line += [bmp_name(i, j, k) for j in range(1, i) for k in range(1, i)]
        per_line += [digit_name(i, kappa) for kappa in range(2, window + 1)]
    order = slacks + guards + per_line + aux
    assert sorted(order) == sorted(v.name for v in reg), "search order must cover the registry"

    position = {name: k for k, name in enumerate(order)}
    buckets: list[list] = [[] for _ in order]
    for con in system.constraints:
        names = [v.name for v in con.poly.variables()]
        last = max((position[x] for x in names), default=0)
        buckets[last].append(con.poly)

    fs_names = [f_name(i) for i in range(1, n + 1)]
    cache: dict[tuple, dict | None] = {}
    values: dict[str, int] = {}

    def domain(k: int):
        name = order[k]
        if k < len(slacks):
            return range(slack_bound + 1)
        if k < len(slacks) + len(guards):
            return (1 + values[guard_slack[name]] ** 2,)
        if k < len(slacks) + len(guards) + len(per_line):
            return range(value_bound + 1) if name in fs_names else (0, 1)
        fs = tuple(values[x] for x in fs_names)
        if fs not in cache:
            cache[fs] = _aux_completion(system, fs)
        completion = cache[fs]
        return () if completion is None else (completion[name],)

    def walk(k: int):
        if k == len(order):
            yield dict(values)
            return
        name = order[k]
        for val in domain(k):
            values[name] = val
            if all(p.evaluate(values) == 0 for p in buckets[k]):
                yield from walk(k + 1)
        values.pop(name, None)

    yield from walk(0)


def has_bounded_solution(system: ConstraintSystem, value_bound: int | None = None,
                         slack_bound: int = 0) -> bool:
    return next(bounded_solutions(system, value_bound, slack_bound), None) is not None
