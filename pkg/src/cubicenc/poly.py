"""Sparse multivariate polynomials with exact integer coefficients.

Variables are :class:`Var` objects allocated by a :class:`Registry`; a
monomial is a tuple of ``(Var, exponent)`` pairs sorted by variable index.
Polynomials are immutable and always stored in canonical form: no zero
coefficients, terms in graded-lexicographic order (highest total degree
first, ties broken by exponent vector in variable-index order).

Text format
-----------
::

    expr    := ["-"] term (("+" | "-") term)*
    term    := power ("*" power)*
    power   := atom ["^" exponent]
    atom    := coeff | name | "(" expr ")"
    name    := [A-Za-z][A-Za-z0-9_]*
    coeff, exponent := decimal digits

Canonical output separates terms by ``" + "`` / ``" - "``, omits a unit
coefficient on non-constant terms and writes factors in variable-index order,
e.g. ``u_beta_1*c - 2*u_beta_1*q_1*d - u_beta_1*r_1``.  Parsing canonical
text and printing it again is the identity.
"""

from __future__ import annotations

import enum
import math
import re
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field

from .errors import MissingVariable, ParseError


class Role(str, enum.Enum):
    SEQ = "seq"            # proof line value f_i
    BETA = "beta"          # beta-function parameters c, d
    QUOT = "quot"          # quotient q_i
    REM = "rem"            # remainder r_i
    SQUARE = "square"      # four-square witnesses
    DIGIT = "digit"        # Zeckendorf digit d_{i,k}
    BOOL = "bool"          # activation booleans b_ax, b_mp
    GUARD = "guard"        # guard u
    SLACK = "slack"        # guard slack v
    GLOBAL = "global"      # global multiplier T and its slack U
    SHIELD = "shield"      # fresh variables from degree reduction
    FREE = "free"          # variables of hand-written polynomials


@dataclass(frozen=True, order=True)
class Var:
    index: int
    name: str
    role: Role = field(default=Role.FREE, compare=False)

    def __str__(self):
        return self.name


Monomial = tuple  # tuple[tuple[Var, int], ...]

ONE: Monomial = ()

_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


class Registry:
    """Ordered, append-only table of variables with unique names."""

    def __init__(self, variables: Iterable[Var] = ()):
        self._vars: list[Var] = []
        self._by_name: dict[str, Var] = {}
        for v in variables:
            self._add(v)

    def _add(self, v: Var) -> Var:
        if v.name in self._by_name:
            raise ValueError(f"duplicate variable name {v.name!r}")
        if not _NAME_RE.match(v.name):
            raise ValueError(f"invalid variable name {v.name!r}")
        self._vars.append(v)
        self._by_name[v.name] = v
        return v

    def new(self, name: str, role: Role = Role.FREE) -> Var:
        index = self._vars[-1].index + 1 if self._vars else 0
        return self._add(Var(index, name, Role(role)))

    def fresh(self, prefix: str, role: Role = Role.SHIELD) -> Var:
        n = 1
        while f"{prefix}_{n}" in self._by_name:
            n += 1
        return self.new(f"{prefix}_{n}", role)

    def get(self, name: str) -> Var:
        try:
            return self._by_name[name]
        except KeyError:
            raise MissingVariable(name) from None

    def ensure(self, name: str, role: Role = Role.FREE) -> Var:
        v = self._by_name.get(name)
        return v if v is not None else self.new(name, role)

    def copy(self) -> "Registry":
        return Registry(self._vars)

    def __contains__(self, name) -> bool:
        if isinstance(name, Var):
            return self._by_name.get(name.name) == name
        return name in self._by_name

    def __iter__(self):
        return iter(self._vars)

    def __len__(self):
        return len(self._vars)

    def __getitem__(self, name: str) -> Var:
        return self.get(name)

    def by_role(self, role: Role) -> list[Var]:
        return [v for v in self._vars if v.role == role]


# -- monomials -----------------------------------------------------------------

def monomial(*factors) -> Monomial:
    """Build a monomial from ``Var`` or ``(Var, exponent)`` arguments."""
    exps: dict[Var, int] = {}
    for f in factors:
        v, e = (f, 1) if isinstance(f, Var) else f
        if e < 0:
            raise ValueError("negative exponent")
        if e:
            exps[v] = exps.get(v, 0) + e
    return tuple(sorted(exps.items()))


def mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for v, e in b:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(exps.items()))


def _mono_key(m: Monomial):
    return (-mono_degree(m), tuple((v.index, -e) for v, e in m) + ((math.inf, 0),))


def _mono_text(m: Monomial) -> str:
    return "*".join(v.name if e == 1 else f"{v.name}^{e}" for v, e in m)


# -- polynomials ---------------------------------------------------------------

class Polynomial:
    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, int] | None = None):
        items = [] if terms is None else [(m, int(c)) for m, c in terms.items() if c]
        items.sort(key=lambda t: _mono_key(t[0]))
        self._terms: dict[Monomial, int] = dict(items)
        self._hash = None

    @classmethod
    def const(cls, c: int) -> "Polynomial":
        return cls({ONE: c})

    @classmethod
    def var(cls, v: Var) -> "Polynomial":
        return cls({((v, 1),): 1})

    @classmethod
    def _coerce(cls, x) -> "Polynomial":
        if isinstance(x, Polynomial):
            return x
        if isinstance(x, Var):
            return cls.var(x)
        if isinstance(x, int):
            return cls.const(x)
        return NotImplemented

    @property
    def terms(self) -> dict[Monomial, int]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    @property
    def degree(self) -> int:
        return max((mono_degree(m) for m in self._terms), default=0)

    def variables(self) -> tuple[Var, ...]:
        seen = {v for m in self._terms for v, _ in m}
        return tuple(sorted(seen))

    def coefficient(self, m: Monomial) -> int:
        return self._terms.get(m, 0)

    def constant(self) -> int:
        return self._terms.get(ONE, 0)

    # arithmetic

    def __add__(self, other):
        other = Polynomial._coerce(other)
        if other is NotImplemented:
            return other
        acc = dict(self._terms)
        for m, c in other._terms.items():
            acc[m] = acc.get(m, 0) + c
        return Polynomial(acc)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = Polynomial._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = Polynomial._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = Polynomial._coerce(other)
        if other is NotImplemented:
            return other
        acc: dict[Monomial, int] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = mono_mul(m1, m2)
                acc[m] = acc.get(m, 0) + c1 * c2
        return Polynomial(acc)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = Polynomial.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        other = Polynomial._coerce(other)
        if other is NotImplemented:
            return other
        return list(self._terms.items()) == list(other._terms.items())

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    # evaluation

    def evaluate(self, values: Mapping[str, object]):
        """Evaluate exactly; ``values`` maps variable names to numbers.

        Plain ints give exact results.  Any type supporting ``+``, ``*`` and
        ``**`` (e.g. numpy arrays) also works.
        """
        total = 0
        for m, c in self._terms.items():
            t = c
            for v, e in m:
                try:
                    x = values[v.name]
                except KeyError:
                    raise MissingVariable(v.name) from None
                t = t * (x if e == 1 else x**e)
            total = total + t
        return total

    def substitute(self, mapping: Mapping[Monomial, Var]) -> "Polynomial":
        """Replace whole monomials by variables (coefficients kept)."""
        acc: dict[Monomial, int] = {}
        for m, c in self._terms.items():
            if m in mapping:
                m = ((mapping[m], 1),)
            acc[m] = acc.get(m, 0) + c
        return Polynomial(acc)

    # serialization

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for i, (m, c) in enumerate(self._terms.items()):
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not m:
                body = str(a)
            elif a == 1:
                body = _mono_text(m)
            else:
                body = f"{a}*{_mono_text(m)}"
            if i == 0:
                parts.append(body if sign == "+" else f"-{body}")
            else:
                parts.append(f" {sign} {body}")
        return "".join(parts)

    __str__ = to_text

    def __repr__(self):
        return f"Polynomial({self.to_text()!r})"

    def to_tree(self) -> list:
        return [[c, [[v.name, e] for v, e in m]] for m, c in self._terms.items()]

    @classmethod
    def from_tree(cls, tree, registry: Registry, create: bool = False) -> "Polynomial":
        lookup = registry.ensure if create else registry.get
        acc: dict[Monomial, int] = {}
        for c, factors in tree:
            m = monomial(*((lookup(name), int(e)) for name, e in factors))
            acc[m] = acc.get(m, 0) + int(c)
        return cls(acc)

    @classmethod
    def parse(cls, text: str, registry: Registry, create: bool = False) -> "Polynomial":
        return parse(text, registry, create)


_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9_]*)|(\S))")


def _tokens(text: str):
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected input at {pos}: {text[pos:]!r}")
        num, name, sym = m.groups()
        if num is not None:
            yield ("num", int(num))
        elif name is not None:
            yield ("name", name)
        else:
            yield ("sym", sym)
        pos = m.end()


def parse(text: str, registry: Registry, create: bool = False) -> Polynomial:
    """Parse the text format; unknown names raise unless ``create`` is set."""
    lookup = registry.ensure if create else registry.get
    toks = list(_tokens(text))
    if not toks:
        raise ParseError("empty polynomial")
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else (None, None)

    def take(kind, value=None):
        nonlocal pos
        tok = peek()
        if tok[0] != kind or (value is not None and tok[1] != value):
            raise ParseError(f"expected {value or kind} at token {pos} in {text!r}")
        pos += 1
        return tok[1]

    def expr() -> Polynomial:
        negate = peek() == ("sym", "-")
        if negate:
            take("sym")
        out = term()
        if negate:
            out = -out
        while peek() in (("sym", "+"), ("sym", "-")):
            op = take("sym")
            rhs = term()
            out = out + rhs if op == "+" else out - rhs
        return out

    def term() -> Polynomial:
        out = power()
        while peek() == ("sym", "*"):
            take("sym")
            out = out * power()
        return out

    def power() -> Polynomial:
        base = atom()
        if peek() == ("sym", "^"):
            take("sym")
            base = base ** take("num")
        return base

    def atom() -> Polynomial:
        kind, value = peek()
        if kind == "num":
            return Polynomial.const(take("num"))
        if kind == "name":
            return Polynomial.var(lookup(take("name")))
        take("sym", "(")
        inner = expr()
        take("sym", ")")
        return inner

    result = expr()
    if pos != len(toks):
        raise ParseError(f"unexpected token {toks[pos][1]!r} in {text!r}")
    return result


# -- functional surface ----------------------------------------------------------

def add(p: Polynomial, q: Polynomial) -> Polynomial:
    return p + q


def mul(p: Polynomial, q: Polynomial) -> Polynomial:
    return p * q


def square(p: Polynomial) -> Polynomial:
    return p * p


def evaluate(p: Polynomial, values: Mapping[str, object]):
    return p.evaluate(values)


def degree(p: Polynomial) -> int:
    return p.degree


def poly_sum(polys: Iterable[Polynomial]) -> Polynomial:
    """Sum many polynomials with a single canonicalisation."""
    acc: dict[Monomial, int] = {}
    for p in polys:
        for m, c in p.items():
            acc[m] = acc.get(m, 0) + c
    return Polynomial(acc)
