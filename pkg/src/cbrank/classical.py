"""The cohomology ring of Gr(k, N) in the Schubert basis.

Products are computed from the only two rules the presentation gives us:
the Pieri rule for special classes sigma_p (one-row partitions), and the
Giambelli determinant

    sigma_lam = det(sigma_{lam_i + j - i})_{1 <= i,j <= r}

which rewrites any basis class as an integer polynomial in special
classes (sigma_0 = 1, sigma_p = 0 for p < 0 or p > N - k).  A general
product expands one factor through its Giambelli polynomial and applies
Pieri repeatedly.  Littlewood-Richardson coefficients are nonnegative,
so a negative coefficient in an assembled product is an internal error,
never a value.

lr_coefficient_oracle is an independent cross-check: it counts LR skew
tableaux directly and shares no code with the Pieri/Giambelli path.
"""

from __future__ import annotations

from functools import lru_cache

from .partitions import GrassmannianContext, Partition


class NegativeCoefficientError(RuntimeError):
    """A Schubert-basis expansion came out negative; the engine is inconsistent."""


# ---------------------------------------------------------------------------
# Giambelli expansion into special classes


@lru_cache(maxsize=None)
def special_class_expansion(parts: tuple, width: int) -> tuple:
    """Expand the Giambelli determinant of `parts` over special classes.

    Returns a tuple of (monomial, coefficient) pairs where a monomial is a
    descending tuple of strip sizes p with 1 <= p <= width (sigma_0 factors
    are dropped).  Entries sigma_p with p < 0 or p > width vanish, which
    keeps the determinant expansion sparse.
    """
    r = len(parts)
    if r == 0:
        return (((), 1),)

    # Expand column by column; the state is the set of rows still unused.
    memo = {0: {(): 1}}

    def expand(mask):
        try:
            return memo[mask]
        except KeyError:
            pass
        rows = [i for i in range(r) if mask & (1 << i)]
        col = r - len(rows)  # 0-based column index
        poly = {}
        for pos, i in enumerate(rows):
            e = parts[i] + col - i
            if e < 0 or e > width:
                continue
            sub = expand(mask & ~(1 << i))
            sign = -1 if pos % 2 else 1
            for mono, c in sub.items():
                if e:
                    mono = tuple(sorted(mono + (e,), reverse=True))
                poly[mono] = poly.get(mono, 0) + sign * c
        poly = {m: c for m, c in poly.items() if c}
        memo[mask] = poly
        return poly

    full = expand((1 << r) - 1)
    return tuple(sorted(full.items()))


# ---------------------------------------------------------------------------
# Pieri rule

_strip_cache = {}


def horizontal_strips(parts: tuple, p: int, rows: int, width: int) -> tuple:
    """Partitions obtained from `parts` by adding a horizontal p-strip.

    Adds p boxes, no two in the same column, staying inside the
    rows x width box.  Results are part tuples with zeros stripped.
    """
    key = (parts, p, rows, width)
    try:
        return _strip_cache[key]
    except KeyError:
        pass
    nrows = min(rows, len(parts) + 1)
    lam = parts + (0,) * (nrows - len(parts))
    out = []
    mu = [0] * nrows

    def rec(i, rem):
        if i == nrows:
            if rem == 0:
                end = nrows
                while end and mu[end - 1] == 0:
                    end -= 1
                out.append(tuple(mu[:end]))
            return
        lo = lam[i]
        hi = width if i == 0 else lam[i - 1]
        hi = min(hi, lo + rem)
        for v in range(lo, hi + 1):
            mu[i] = v
            rec(i + 1, rem - (v - lo))
        mu[i] = 0

    rec(0, p)
    result = tuple(out)
    _strip_cache[key] = result
    return result


# ---------------------------------------------------------------------------
# Ring elements


class CohomologyElement:
    """Sparse integer combination of Schubert classes of one Grassmannian.

    Treat instances as immutable; `terms` maps Partition -> coefficient
    with no zero values stored.
    """

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: GrassmannianContext, terms=None):
        self.ctx = ctx
        clean = {}
        if terms:
            for parts, c in terms.items():
                if c:
                    clean[Partition(parts)] = c
        self.terms = clean

    def coefficient(self, lam) -> int:
        return self.terms.get(tuple(lam), 0)

    def is_zero(self) -> bool:
        return not self.terms

    def items_sorted(self):
        return sorted(self.terms.items())

    def __eq__(self, other):
        return (
            isinstance(other, CohomologyElement)
            and self.ctx == other.ctx
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.ctx, frozenset(self.terms.items())))

    def __add__(self, other):
        self._check_ctx(other)
        merged = dict(self.terms)
        for parts, c in other.terms.items():
            merged[parts] = merged.get(parts, 0) + c
        return CohomologyElement(self.ctx, merged)

    def __sub__(self, other):
        self._check_ctx(other)
        merged = dict(self.terms)
        for parts, c in other.terms.items():
            merged[parts] = merged.get(parts, 0) - c
        return CohomologyElement(self.ctx, merged)

    def __rmul__(self, scalar):
        if not isinstance(scalar, int):
            return NotImplemented
        return CohomologyElement(self.ctx, {p: scalar * c for p, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.__rmul__(other)
        return giambelli_mul(self, other)

    def _check_ctx(self, other):
        if self.ctx != other.ctx:
            raise ValueError("context mismatch: %s vs %s" % (self.ctx, other.ctx))

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for parts, c in self.items_sorted():
            bits.append("%d*s%s" % (c, Partition(parts)))
        return " + ".join(bits)

    def __repr__(self):
        return "CohomologyElement(%s, %s)" % (self.ctx, str(self))


def schubert_class(ctx: GrassmannianContext, lam) -> CohomologyElement:
    """The basis class sigma_lam; lam must fit the box."""
    lam = Partition(lam)
    if not lam.fits_in_box(ctx):
        raise ValueError("%s does not fit the box of %s" % (lam, ctx))
    return CohomologyElement(ctx, {lam: 1})


def unit(ctx: GrassmannianContext) -> CohomologyElement:
    return CohomologyElement(ctx, {Partition(): 1})


def point_class_partition(ctx: GrassmannianContext) -> Partition:
    """The top class (width, ..., width) with k rows."""
    return Partition((ctx.width,) * ctx.k)


def dual_partition(lam, ctx: GrassmannianContext) -> Partition:
    """Complement of lam in the box, rotated; pairs to the point class."""
    lam = Partition(lam)
    if not lam.fits_in_box(ctx):
        raise ValueError("%s does not fit the box of %s" % (lam, ctx))
    padded = lam.padded(ctx.k)
    return Partition(ctx.width - padded[i] for i in range(ctx.k - 1, -1, -1))


def coefficient_of(x: CohomologyElement, lam) -> int:
    """Stored coefficient of sigma_lam, 0 if absent or outside the box."""
    return x.coefficient(Partition(lam))


def pieri_mul(x: CohomologyElement, p: int) -> CohomologyElement:
    """Multiply by the special class sigma_p.

    Adds a horizontal p-strip to each term in all ways; results leaving
    the box are discarded.
    """
    ctx = x.ctx
    if not 0 <= p <= ctx.width:
        raise ValueError("special class index %d outside 0..%d" % (p, ctx.width))
    if p == 0:
        return x
    out = {}
    k, w = ctx.k, ctx.width
    for parts, c in x.terms.items():
        for mu in horizontal_strips(tuple(parts), p, k, w):
            out[mu] = out.get(mu, 0) + c
    return CohomologyElement(ctx, out)


def _fold_monomials(terms: dict, expansion, k: int, w: int) -> dict:
    """Apply a signed polynomial in special classes to a raw term dict.

    `terms` maps part tuples to coefficients; monomials sharing a prefix
    of strip sizes share the intermediate Pieri applications.
    """
    result = {}

    def apply_strip(cur, p):
        nxt = {}
        for parts, c in cur.items():
            for mu in horizontal_strips(parts, p, k, w):
                nxt[mu] = nxt.get(mu, 0) + c
        return nxt

    def walk(cur, monos):
        i = 0
        n = len(monos)
        while i < n:
            mono, coeff = monos[i]
            if not mono:
                for parts, c in cur.items():
                    result[parts] = result.get(parts, 0) + coeff * c
                i += 1
                continue
            head = mono[0]
            j = i
            group = []
            while j < n and monos[j][0] and monos[j][0][0] == head:
                group.append((monos[j][0][1:], monos[j][1]))
                j += 1
            walk(apply_strip(cur, head), group)
            i = j

    walk(dict(terms), sorted(expansion))
    return {parts: c for parts, c in result.items() if c}


_basis_product_cache = {}


def _basis_product(ctx: GrassmannianContext, a: tuple, b: tuple) -> dict:
    """Memoized sigma_a . sigma_b as a raw dict of part tuples."""
    if a > b:
        a, b = b, a
    key = (ctx.k, ctx.N, a, b)
    try:
        return _basis_product_cache[key]
    except KeyError:
        pass
    # Expand the factor with fewer rows; fold from the other one.
    expand, base = (a, b) if len(a) <= len(b) else (b, a)
    expansion = special_class_expansion(expand, ctx.width)
    result = _fold_monomials({base: 1}, expansion, ctx.k, ctx.width)
    for parts, c in result.items():
        if c < 0:
            raise NegativeCoefficientError(
                "negative coefficient %d of %r in sigma_%r . sigma_%r on %s"
                % (c, parts, a, b, ctx)
            )
    _basis_product_cache[key] = result
    return result


def giambelli_mul(x: CohomologyElement, y: CohomologyElement) -> CohomologyElement:
    """Cup product, bilinear over memoized basis-class products."""
    x._check_ctx(y)
    out = {}
    for pa, ca in x.terms.items():
        for pb, cb in y.terms.items():
            c = ca * cb
            for parts, m in _basis_product(x.ctx, tuple(pa), tuple(pb)).items():
                out[parts] = out.get(parts, 0) + c * m
    return CohomologyElement(x.ctx, out)


def clear_caches():
    """Drop the memoized strips and basis products (mainly for benchmarks)."""
    _strip_cache.clear()
    _basis_product_cache.clear()
    special_class_expansion.cache_clear()


# ---------------------------------------------------------------------------
# Independent Littlewood-Richardson oracle


def lr_coefficient_oracle(lam, mu, nu) -> int:
    """Count LR skew tableaux of shape nu/lam and content mu.

    Direct enumeration of semistandard fillings whose reverse reading
    word is a lattice word; returns 0 for incompatible shapes.  This is
    the cross-check for giambelli_mul and deliberately avoids the
    Pieri/Giambelli machinery.
    """
    lam, mu, nu = Partition(lam), Partition(mu), Partition(nu)
    if nu.size() != lam.size() + mu.size():
        return 0
    if len(lam) > len(nu):
        return 0
    inner = lam.padded(len(nu))
    for i in range(len(nu)):
        if inner[i] > nu[i]:
            return 0  # lam not contained in nu
    nvals = len(mu)
    if nvals == 0:
        return 1  # nu == lam by the size check

    # Cells in reverse reading order: rows top to bottom, right to left.
    # Filling in this order makes the lattice condition a running check.
    cells = []
    for i in range(len(nu)):
        for j in range(nu[i] - 1, inner[i] - 1, -1):
            cells.append((i, j))
    grid = {}
    counts = [0] * (nvals + 1)
    total = 0

    def rec(idx):
        nonlocal total
        if idx == len(cells):
            total += 1
            return
        i, j = cells[idx]
        hi = nvals
        right = grid.get((i, j + 1))
        if right is not None:
            hi = min(hi, right)  # weakly increasing along rows
        # Cells of the inner shape are never in `grid`, so this only
        # constrains against a filled skew cell directly above.
        above = grid.get((i - 1, j))
        lo = above + 1 if above is not None else 1  # strictly increasing down columns
        for v in range(lo, hi + 1):
            if counts[v] >= mu[v - 1]:
                continue
            if v > 1 and counts[v] + 1 > counts[v - 1]:
                continue  # lattice word violated
            counts[v] += 1
            grid[(i, j)] = v
            rec(idx + 1)
            del grid[(i, j)]
            counts[v] -= 1

    rec(0)
    return total
