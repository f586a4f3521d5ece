"""The small quantum cohomology ring of Gr(k, N).

Elements are integer combinations of q^d * sigma_lam.  The deformation
parameter q has degree N = k + width, so every term of a product of
basis classes satisfies |nu| + N*q_degree = |lam| + |mu|.

Multiplication uses the quantum Giambelli determinant (same expansion
into special classes as the classical ring, with sigma_p = 0 for
p > width) and the quantum Pieri rule for each special-class factor.
"""

from __future__ import annotations

from .classical import (
    CohomologyElement,
    NegativeCoefficientError,
    horizontal_strips,
    special_class_expansion,
)
from .partitions import GrassmannianContext, Partition

_removal_cache = {}


def quantum_rim_removals(parts: tuple, p: int, rows: int, width: int) -> tuple:
    """The q-term partitions of sigma_parts * sigma_p on Gr(rows, rows+width).

    nu appears iff parts has all `rows` parts nonzero and interlaces it
    shifted down by one:

        parts[i] - 1 >= nu[i] >= parts[i+1] - 1   (1 <= i <= rows)

    with |nu| = |parts| + p - (rows + width).  This is the row form of
    the removal rule.  The looser reading "remove rows+width-p boxes, at
    least one from each column" admits spurious classes: on Gr(7, 9) it
    would let sigma_(2,2,1,1,1,1,1) * sigma_2 produce q*sigma_(2), but
    the q-part of that product is exactly q*sigma_(1,1), which is what
    the interlacing form yields (and what sigma_l^{*(k+l)} = q^l forces).
    """
    key = (parts, p, rows, width)
    try:
        return _removal_cache[key]
    except KeyError:
        pass
    result = ()
    if len(parts) == rows:  # diagrams with an empty row have no q-term
        target = sum(parts) + p - (rows + width)
        if target >= 0:
            out = []
            nu = [0] * rows
            lo_tail = [0] * (rows + 1)
            for i in range(rows - 1, -1, -1):
                lo_tail[i] = lo_tail[i + 1] + max(parts[i + 1] - 1 if i + 1 < rows else 0, 0)

            def rec(i, rem):
                if i == rows:
                    if rem == 0:
                        end = rows
                        while end and nu[end - 1] == 0:
                            end -= 1
                        out.append(tuple(nu[:end]))
                    return
                lo = max(parts[i + 1] - 1 if i + 1 < rows else 0, 0)
                hi = min(parts[i] - 1, rem - lo_tail[i + 1])
                for v in range(lo, hi + 1):
                    nu[i] = v
                    rec(i + 1, rem - v)
                nu[i] = 0

            rec(0, target)
            result = tuple(out)
    _removal_cache[key] = result
    return result


class QuantumElement:
    """Sparse integer combination of q^d * sigma_lam on one Grassmannian.

    Treat instances as immutable; `terms` maps (q_degree, Partition) to
    nonzero coefficients.
    """

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: GrassmannianContext, terms=None):
        self.ctx = ctx
        clean = {}
        if terms:
            for (d, parts), c in terms.items():
                if c:
                    clean[(d, Partition(parts))] = c
        self.terms = clean

    def coefficient(self, q_degree: int, lam) -> int:
        return self.terms.get((q_degree, tuple(lam)), 0)

    def is_zero(self) -> bool:
        return not self.terms

    def items_sorted(self):
        return sorted(self.terms.items())

    def __eq__(self, other):
        return (
            isinstance(other, QuantumElement)
            and self.ctx == other.ctx
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.ctx, frozenset(self.terms.items())))

    def __add__(self, other):
        self._check_ctx(other)
        merged = dict(self.terms)
        for key, c in other.terms.items():
            merged[key] = merged.get(key, 0) + c
        return QuantumElement(self.ctx, merged)

    def __sub__(self, other):
        self._check_ctx(other)
        merged = dict(self.terms)
        for key, c in other.terms.items():
            merged[key] = merged.get(key, 0) - c
        return QuantumElement(self.ctx, merged)

    def __rmul__(self, scalar):
        if not isinstance(scalar, int):
            return NotImplemented
        return QuantumElement(self.ctx, {k: scalar * c for k, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.__rmul__(other)
        return qmul(self, other)

    def _check_ctx(self, other):
        if self.ctx != other.ctx:
            raise ValueError("context mismatch: %s vs %s" % (self.ctx, other.ctx))

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for (d, parts), c in self.items_sorted():
            bits.append("%d*q^%d*s%s" % (c, d, Partition(parts)))
        return " + ".join(bits)

    def __repr__(self):
        return "QuantumElement(%s, %s)" % (self.ctx, str(self))


def quantum_class(ctx: GrassmannianContext, lam, q_degree: int = 0) -> QuantumElement:
    lam = Partition(lam)
    if not lam.fits_in_box(ctx):
        raise ValueError("%s does not fit the box of %s" % (lam, ctx))
    if q_degree < 0:
        raise ValueError("q degree must be nonnegative")
    return QuantumElement(ctx, {(q_degree, lam): 1})


def qunit(ctx: GrassmannianContext) -> QuantumElement:
    return quantum_class(ctx, ())


def from_classical(x: CohomologyElement) -> QuantumElement:
    return QuantumElement(x.ctx, {(0, parts): c for parts, c in x.terms.items()})


def qcoefficient_of(x: QuantumElement, s: int, lam) -> int:
    """Stored coefficient of q^s * sigma_lam, 0 if absent."""
    return x.coefficient(s, Partition(lam))


def classical_limit(x: QuantumElement) -> CohomologyElement:
    """Set q = 0: keep only the q-degree-zero terms."""
    return CohomologyElement(
        x.ctx, {parts: c for (d, parts), c in x.terms.items() if d == 0}
    )


def _qpieri_terms(terms: dict, p: int, k: int, w: int, qmax=None) -> dict:
    """One quantum Pieri step on a raw {(d, parts): c} dict."""
    out = {}
    for (d, parts), c in terms.items():
        parts = tuple(parts)
        for mu in horizontal_strips(parts, p, k, w):
            key = (d, mu)
            out[key] = out.get(key, 0) + c
        if qmax is None or d < qmax:
            for nu in quantum_rim_removals(parts, p, k, w):
                key = (d + 1, nu)
                out[key] = out.get(key, 0) + c
    return out


def qpieri_mul(x: QuantumElement, p: int) -> QuantumElement:
    """Multiply by the special class sigma_p in the quantum ring."""
    ctx = x.ctx
    if not 0 <= p <= ctx.width:
        raise ValueError("special class index %d outside 0..%d" % (p, ctx.width))
    if p == 0:
        return x
    return QuantumElement(ctx, _qpieri_terms(x.terms, p, ctx.k, ctx.width))


def _fold_monomials_q(terms: dict, expansion, k: int, w: int, qmax=None) -> dict:
    """Quantum analogue of the classical monomial fold (see classical.py)."""
    result = {}

    def walk(cur, monos):
        i = 0
        n = len(monos)
        while i < n:
            mono, coeff = monos[i]
            if not mono:
                for key, c in cur.items():
                    result[key] = result.get(key, 0) + coeff * c
                i += 1
                continue
            head = mono[0]
            j = i
            group = []
            while j < n and monos[j][0] and monos[j][0][0] == head:
                group.append((monos[j][0][1:], monos[j][1]))
                j += 1
            walk(_qpieri_terms(cur, head, k, w, qmax), group)
            i = j

    walk(dict(terms), sorted(expansion))
    return {key: c for key, c in result.items() if c}


_basis_qproduct_cache = {}


def _basis_qproduct(ctx: GrassmannianContext, a: tuple, b: tuple) -> dict:
    """Memoized sigma_a * sigma_b as a raw {(d, parts): c} dict."""
    if a > b:
        a, b = b, a
    key = (ctx.k, ctx.N, a, b)
    try:
        return _basis_qproduct_cache[key]
    except KeyError:
        pass
    expand, base = (a, b) if len(a) <= len(b) else (b, a)
    expansion = special_class_expansion(expand, ctx.width)
    result = _fold_monomials_q({(0, base): 1}, expansion, ctx.k, ctx.width)
    for (d, parts), c in result.items():
        if c < 0:
            raise NegativeCoefficientError(
                "negative coefficient %d of q^%d*%r in sigma_%r * sigma_%r on %s"
                % (c, d, parts, a, b, ctx)
            )
    _basis_qproduct_cache[key] = result
    return result


def qmul(x: QuantumElement, y: QuantumElement) -> QuantumElement:
    """Quantum product, bilinear over memoized basis-class products."""
    x._check_ctx(y)
    out = {}
    for (da, pa), ca in x.terms.items():
        for (db, pb), cb in y.terms.items():
            c = ca * cb
            d0 = da + db
            for (d, parts), m in _basis_qproduct(x.ctx, tuple(pa), tuple(pb)).items():
                key = (d0 + d, parts)
                out[key] = out.get(key, 0) + c * m
    return QuantumElement(x.ctx, out)


def qpower(x: QuantumElement, e: int) -> QuantumElement:
    """e-fold quantum product; qpower(x, 0) is the unit."""
    if e < 0:
        raise ValueError("exponent must be nonnegative")
    acc = qunit(x.ctx)
    for _ in range(e):
        acc = qmul(acc, x)
    return acc


def clear_caches():
    _removal_cache.clear()
    _basis_qproduct_cache.clear()
