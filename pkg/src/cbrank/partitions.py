"""Partitions, Young diagrams, and sl_n dominant weights.

Everything downstream (Schubert classes, quantum classes, rank queries)
is indexed by partitions, so this module keeps them cheap: a Partition is
a plain tuple subclass in canonical form (weakly decreasing, trailing
zeros stripped) and can be used directly as a dict key.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import comb
from typing import Iterable, Iterator


class Partition(tuple):
    """Weakly decreasing sequence of nonnegative integers.

    Trailing zeros are stripped on construction, so two partitions are
    equal exactly when their zero-stripped part sequences agree.
    """

    __slots__ = ()

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(parts)
        end = len(parts)
        while end and parts[end - 1] == 0:
            end -= 1
        parts = parts[:end]
        prev = None
        for p in parts:
            if not isinstance(p, int) or p < 0:
                raise ValueError("partition parts must be nonnegative integers: %r" % (parts,))
            if prev is not None and p > prev:
                raise ValueError("partition parts must be weakly decreasing: %r" % (parts,))
            prev = p
        return tuple.__new__(cls, parts)

    def size(self) -> int:
        """Total number of boxes."""
        return sum(self)

    def part(self, i: int) -> int:
        """The i-th part (1-based), 0 beyond the last row."""
        return self[i - 1] if 1 <= i <= len(self) else 0

    def conjugate(self) -> "Partition":
        """Transpose of the Young diagram."""
        if not self:
            return Partition()
        cols = [0] * self[0]
        for p in self:
            for j in range(p):
                cols[j] += 1
        return Partition(cols)

    def fits_in_box(self, ctx: "GrassmannianContext") -> bool:
        """True iff the diagram fits in the k x (N-k) grid of ctx."""
        return len(self) <= ctx.k and (not self or self[0] <= ctx.width)

    def padded(self, length: int) -> tuple:
        """Parts padded with zeros to the given length."""
        if length < len(self):
            raise ValueError("cannot pad %r to length %d" % (self, length))
        return tuple(self) + (0,) * (length - len(self))

    def __str__(self) -> str:
        return "[%s]" % ",".join(str(p) for p in self)

    def __repr__(self) -> str:
        return "Partition(%s)" % str(self)


def parse_partition(text: str) -> Partition:
    """Parse the bracket syntax, e.g. "[2,2,1]" or "[]"."""
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise ValueError("expected partition like [2,1], got %r" % text)
    inner = text[1:-1].strip()
    if not inner:
        return Partition()
    try:
        parts = [int(tok) for tok in inner.split(",")]
    except ValueError:
        raise ValueError("bad partition %r" % text) from None
    return Partition(parts)


@dataclass(frozen=True)
class GrassmannianContext:
    """The Grassmannian Gr(k, N), fixing the k x (N-k) box for diagrams.

    k is the number of rows available to a Schubert partition; width
    N - k bounds the parts.
    """

    k: int
    N: int

    def __post_init__(self):
        if not 0 < self.k < self.N:
            raise ValueError("need 0 < k < N, got Gr(%d, %d)" % (self.k, self.N))

    @property
    def width(self) -> int:
        return self.N - self.k

    def __str__(self) -> str:
        return "Gr(%d,%d)" % (self.k, self.N)


@dataclass(frozen=True)
class SlnWeight:
    """Dominant integral weight of sl_n, stored by fundamental coefficients.

    coeffs[i] is the multiplicity of the i+1-st fundamental weight, so the
    associated partition has parts lam_j = sum(coeffs[j-1:]).
    """

    n: int
    coeffs: tuple

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("need n >= 2")
        coeffs = tuple(self.coeffs)
        if len(coeffs) != self.n - 1:
            raise ValueError("expected %d coefficients, got %d" % (self.n - 1, len(coeffs)))
        if any(not isinstance(c, int) or c < 0 for c in coeffs):
            raise ValueError("coefficients must be nonnegative integers: %r" % (coeffs,))
        object.__setattr__(self, "coeffs", coeffs)

    def level(self) -> int:
        """Sum of the fundamental coefficients; equals the first part."""
        return sum(self.coeffs)

    def partition(self) -> Partition:
        return weight_to_partition(self)

    def __str__(self) -> str:
        return "w(%s)" % ",".join(str(c) for c in self.coeffs)


def weight_to_partition(w: SlnWeight) -> Partition:
    """Partition with lam_j = sum of coefficients c_j..c_{n-1}."""
    parts = []
    total = 0
    for c in reversed(w.coeffs):
        total += c
        parts.append(total)
    parts.reverse()
    return Partition(parts)


def partition_to_weight(lam: Partition, n: int) -> SlnWeight:
    """Inverse of weight_to_partition; normalizes first if lam has n rows."""
    lam = normalize_sln(lam, n)
    padded = lam.padded(n)
    coeffs = tuple(padded[j] - padded[j + 1] for j in range(n - 1))
    return SlnWeight(n, coeffs)


def normalize_sln(lam: Partition, n: int) -> Partition:
    """Strip full columns of height n, which act trivially on sl_n weights."""
    if len(lam) > n:
        raise ValueError("%r has more than %d nonzero parts" % (lam, n))
    if len(lam) < n:
        return Partition(lam)
    last = lam[n - 1]
    return Partition(p - last for p in lam)


def partitions_in_box(rows: int, width: int) -> Iterator[Partition]:
    """All partitions with at most `rows` parts, each at most `width`.

    Deterministic order: empty first, then ascending lexicographically.
    """

    def gen(rows_left, cap):
        yield ()
        if rows_left == 0:
            return
        for first in range(1, cap + 1):
            for tail in gen(rows_left - 1, first):
                yield (first,) + tail

    for parts in gen(rows, width):
        yield Partition(parts)


def enumerate_weights(n: int, level: int) -> Iterator[SlnWeight]:
    """All dominant sl_n weights of level <= level, each exactly once.

    These are the partitions in the (n-1) x level box, so the count is
    comb(n - 1 + level, level).
    """
    if n < 2 or level < 1:
        raise ValueError("need n >= 2 and level >= 1")
    for lam in partitions_in_box(n - 1, level):
        yield partition_to_weight(lam, n)


def count_weights(n: int, level: int) -> int:
    """Closed form for the number of weights enumerate_weights yields."""
    return comb(n - 1 + level, level)


_TERM_RE = re.compile(r"^(?:(\d+)\*)?w_(\d+)$")


def parse_weight(text: str, n: int) -> SlnWeight:
    """Parse a weight for sl_n.

    Accepts the coefficient form "w(c1,...,c_{n-1})", sums of fundamental
    weights like "w_3" or "2*w_1+w_4", the partition form "[3,1]", or "0"
    for the zero weight.
    """
    text = text.strip().replace(" ", "")
    if text == "0":
        return SlnWeight(n, (0,) * (n - 1))
    if text.startswith("w(") and text.endswith(")"):
        inner = text[2:-1]
        try:
            coeffs = tuple(int(t) for t in inner.split(",")) if inner else ()
        except ValueError:
            raise ValueError("bad weight %r" % text) from None
        return SlnWeight(n, coeffs)
    if text.startswith("["):
        return partition_to_weight(parse_partition(text), n)
    coeffs = [0] * (n - 1)
    for term in text.split("+"):
        m = _TERM_RE.match(term)
        if not m:
            raise ValueError("bad weight term %r in %r" % (term, text))
        mult = int(m.group(1)) if m.group(1) else 1
        idx = int(m.group(2))
        if not 0 <= idx <= n:
            raise ValueError("fundamental weight index %d out of range for sl_%d" % (idx, n))
        if idx in (0, n):
            continue  # w_0 and w_n are the zero weight of sl_n
        coeffs[idx - 1] += mult
    return SlnWeight(n, tuple(coeffs))
