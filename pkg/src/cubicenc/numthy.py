"""Number-theoretic kernels: Fibonacci/Zeckendorf, four squares, beta-function."""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

from .errors import IndexOutOfRange, IndexZero

PHI = (1 + math.sqrt(5)) / 2


_FIB = [0, 1, 1]


def fibonacci(k: int) -> int:
    """k-th Fibonacci number with F_1 = F_2 = 1."""
    if k < 1:
        raise IndexZero(f"Fibonacci index must be >= 1, got {k}")
    while len(_FIB) <= k:
        _FIB.append(_FIB[-1] + _FIB[-2])
    return _FIB[k]


@dataclass(frozen=True)
class ZeckendorfDigits:
    """Digits d_2..d_K of a Zeckendorf representation."""

    window: int
    bits: tuple[int, ...]  # bits[0] is the digit for F_2

    def __getitem__(self, kappa: int) -> int:
        if not 2 <= kappa <= self.window:
            raise IndexOutOfRange(f"digit index {kappa} outside 2..{self.window}")
        return self.bits[kappa - 2]

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(k for k, b in zip(range(2, self.window + 1), self.bits) if b)

    def value(self) -> int:
        return sum(fibonacci(k) for k in self.support)

    def is_non_adjacent(self) -> bool:
        return all(not (a and b) for a, b in zip(self.bits, self.bits[1:]))

    def as_dict(self) -> dict[int, int]:
        return dict(zip(range(2, self.window + 1), self.bits))


def zeckendorf(n: int, window: int | None = None) -> ZeckendorfDigits:
    """Greedy Zeckendorf digits of ``n`` over indices 2..window.

    With no window the smallest one that fits is used (minimum 2).  Raises
    ``ValueError`` if ``n`` does not fit into the requested window.
    """
    if n < 0:
        raise ValueError("n must be a natural number")
    top = 2
    while fibonacci(top + 1) <= n:
        top += 1
    if window is None:
        window = top
    elif n >= fibonacci(window + 1):
        raise ValueError(f"{n} does not fit in a Zeckendorf window of size {window}")
    bits = [0] * (window - 1)
    rest = n
    for k in range(min(top, window), 1, -1):
        if fibonacci(k) <= rest:
            bits[k - 2] = 1
            rest -= fibonacci(k)
    assert rest == 0
    return ZeckendorfDigits(window, tuple(bits))


def digit_window(maxval: int) -> int:
    """Digit window K = ceil(log_phi(maxval)) + 2, raised until F_{K+1} > maxval."""
    maxval = max(int(maxval), 1)
    k = math.ceil(math.log(maxval) / math.log(PHI)) + 2
    k = max(k, 2)
    while fibonacci(k + 1) <= maxval:
        k += 1
    return k


@dataclass(frozen=True)
class FourSquares:
    a: int
    b: int
    c: int
    e: int

    def __iter__(self):
        return iter((self.a, self.b, self.c, self.e))

    def total(self) -> int:
        return self.a**2 + self.b**2 + self.c**2 + self.e**2


def _is_three_square_free_form(n: int) -> bool:
    # Legendre: n is a sum of three squares unless n = 4^a (8b + 7)
    if n == 0:
        return False
    while n % 4 == 0:
        n //= 4
    return n % 8 == 7


def _squares(n: int, k: int, cap: int) -> tuple[int, ...] | None:
    """Non-increasing k-tuple with entries <= cap whose squares sum to n."""
    if k == 1:
        r = math.isqrt(n)
        return (r,) if r * r == n and r <= cap else None
    if n == 0:
        return (0,) * k
    hi = min(math.isqrt(n), cap)
    for x in range(hi, -1, -1):
        if k * x * x < n:
            break  # the largest entry must carry at least n/k
        rest = n - x * x
        if k == 3 and _is_three_square_free_form(rest):
            continue
        tail = _squares(rest, k - 1, x)
        if tail is not None:
            return (x,) + tail
    return None


def four_squares(n: int) -> FourSquares:
    """Deterministic decomposition n = a^2 + b^2 + c^2 + e^2 with a >= b >= c >= e.

    Descending greedy search with backtracking.
    """
    if n < 0:
        raise ValueError("n must be a natural number")
    found = _squares(n, 4, math.isqrt(n))
    assert found is not None, n  # Lagrange
    return FourSquares(*found)


@dataclass(frozen=True)
class BetaParams:
    c: int
    d: int
    n: int

    def modulus(self, i: int) -> int:
        return 1 + (i + 1) * self.d


def beta_params(seq) -> BetaParams:
    """Parameters (c, d) with c mod (1 + (i+1)d) = seq[i-1] for i = 1..n.

    d = lcm(1..s) with s = max(n+1, max(seq)+1), so every modulus exceeds its
    element; c is the least non-negative CRT solution.
    """
    seq = [int(x) for x in seq]
    if not seq:
        raise ValueError("sequence must be nonempty")
    if min(seq) < 0:
        raise ValueError("sequence elements must be natural numbers")
    n = len(seq)
    s = max(n + 1, max(seq) + 1)
    d = math.lcm(*range(1, s + 1))
    moduli = [1 + (i + 1) * d for i in range(1, n + 1)]
    for (i, mi), (j, mj) in combinations(enumerate(moduli, 1), 2):
        if math.gcd(mi, mj) != 1:
            raise AssertionError(f"moduli for {i} and {j} share a factor")
    c, m = 0, 1
    for a, mi in zip(seq, moduli):
        # lift c (mod m) to c (mod m*mi) with c = a (mod mi)
        t = ((a - c) * pow(m, -1, mi)) % mi
        c += m * t
        m *= mi
    return BetaParams(c=c, d=d, n=n)


def beta(c: int, d: int, i: int) -> int:
    return c % (1 + (i + 1) * d)


def beta_decode(params: BetaParams, i: int) -> int:
    if not 1 <= i <= params.n:
        raise IndexOutOfRange(f"index {i} outside 1..{params.n}")
    return beta(params.c, params.d, i)
