"""Modules over the Laurent ring and their cyclic-quotient invariants.

A module is presented as Lambda^n / (row span); the k-th quotient by
(t^k - 1) is an honest finitely generated abelian group carrying the
residual action of t, and everything downstream (orders, invariant
factors, periodicity, structure checkers) is computed there with exact
integer arithmetic.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Optional

from .errors import ParseError, PreconditionError
from .laurent import (LaurentPoly, ZERO, ONE, ONE_MINUS_T, parse_poly,
                      normalize_unit, gcd_primitive, reduce_mod_cyclic,
                      divides, exact_div)
from .zmodule import (IntMatrix, cokernel, induced_endo, is_automorphism,
                      GroupEndo, FgAbelianGroup, charpoly)

EXPANSION_LIMIT = 4096


class ExpansionTooLarge(PreconditionError):
    """k * ncols would exceed the configured expansion limit."""


class ZeroPolynomial(PreconditionError):
    """The zero polynomial carries no finite-generation information."""


class EvenOrder(PreconditionError):
    """An even order was passed where only odd orders can be realized."""


class NotTorsion(UserWarning):
    """The module has free Lambda-rank, so its torsion polynomial is 0."""


class ReduciblePresentation(UserWarning):
    """The presentation graph is disconnected; quotient identities that
    assume irreducibility are not guaranteed."""


@dataclass(frozen=True)
class LambdaPresentation:
    """Lambda^ncols modulo the span of the given rows."""

    ncols: int
    rows: tuple

    def __init__(self, ncols, rows=()):
        rows = tuple(tuple(entry for entry in row) for row in rows)
        if ncols < 0:
            raise PreconditionError("column count must be >= 0")
        for row in rows:
            if len(row) != ncols:
                raise PreconditionError(
                    f"row of length {len(row)} in a {ncols}-column presentation")
            if not all(isinstance(entry, LaurentPoly) for entry in row):
                raise TypeError("rows must contain LaurentPoly entries")
        object.__setattr__(self, "ncols", ncols)
        object.__setattr__(self, "rows", rows)


@dataclass(frozen=True)
class DerivedModule:
    """The quotient of a Lambda-module by (t^k - 1), as an abelian group
    with the residual t-action."""

    k: int
    group: FgAbelianGroup
    t_action: GroupEndo
    t1_invertible: bool
    t_order: Optional[int]
    order: Optional[int]


def _divisors(k: int):
    return [d for d in range(1, k + 1) if k % d == 0]


def _shift_matrix(ncols: int, k: int) -> IntMatrix:
    """Block-diagonal cyclic shift: multiplication by t on Z[t]/(t^k-1)^ncols."""
    n = ncols * k
    entries = [[0] * n for _ in range(n)]
    for g in range(ncols):
        for e in range(k):
            entries[g * k + (e + 1) % k][g * k + e] = 1
    return IntMatrix(entries)


def derived(P: LambdaPresentation, k: int) -> DerivedModule:
    """The abelian group P/(t^k - 1)P with its induced t-action.

    Each Lambda-generator splits into k integer generators (the powers
    t^0..t^{k-1}) and each Lambda-relation row r into the k columns
    r, t*r, ..., t^{k-1}*r reduced mod t^k - 1.

    >>> P = LambdaPresentation(1, [(parse_poly("2t - 1"),)])
    >>> D = derived(P, 2)
    >>> D.group.invariant_factors, D.t1_invertible
    ((3,), True)
    """
    if k < 1:
        raise PreconditionError(f"quotient degree must be >= 1, got {k}")
    if k * P.ncols > EXPANSION_LIMIT:
        raise ExpansionTooLarge(
            f"k * ncols = {k} * {P.ncols} exceeds the limit {EXPANSION_LIMIT}")
    n = P.ncols * k
    columns = []
    for row in P.rows:
        for s in range(k):
            col = [0] * n
            for g, poly in enumerate(row):
                coeffs = reduce_mod_cyclic(poly.shift(s), k)
                for e in range(k):
                    col[g * k + e] = coeffs[e]
            columns.append(col)
    R = IntMatrix.from_columns(columns, n)
    group = cokernel(R)
    T = _shift_matrix(P.ncols, k)
    if n <= 48:
        assert T ** k == IntMatrix.identity(n)
    endo = induced_endo(T, group)
    if group.is_trivial:
        return DerivedModule(k=k, group=group, t_action=endo,
                             t1_invertible=True, t_order=1, order=1)
    shifted = induced_endo(T - IntMatrix.identity(n), group)
    t1 = is_automorphism(shifted)
    t_order = None
    for d in _divisors(k):
        power = T ** d
        delta = power - IntMatrix.identity(n)
        if all(group.snf.in_column_span(delta.column(j)) for j in range(n)):
            t_order = d
            break
    assert t_order is not None  # t^k - 1 annihilates the quotient
    return DerivedModule(k=k, group=group, t_action=endo,
                         t1_invertible=t1, t_order=t_order, order=group.order)


def group_module(p) -> "LambdaPresentation":
    """The module presented by the reduced derivative matrix of a
    C-presentation.

    A disconnected presentation graph triggers a ReduciblePresentation
    warning: the reduced matrix still presents a module, but the covering
    interpretations assume irreducibility.
    """
    from .cgroup import graph_and_deficiency, reduced_matrix
    _, components, _ = graph_and_deficiency(p)
    if components != 1:
        warnings.warn(ReduciblePresentation(
            f"presentation graph has {components} components"))
    return LambdaPresentation(p.m - 1, reduced_matrix(p))


def derived_of_group(p, k: int) -> DerivedModule:
    """Derived module of a C-presentation via its reduced derivative
    matrix; see group_module for the reducibility warning."""
    return derived(group_module(p), k)


def _det(rows) -> LaurentPoly:
    n = len(rows)
    if n == 0:
        return ONE
    if n == 1:
        return rows[0][0]
    total = ZERO
    for idx in range(n):
        entry = rows[idx][0]
        if entry.is_zero:
            continue
        minor = [r[1:] for p, r in enumerate(rows) if p != idx]
        term = entry * _det(minor)
        total = total + term if idx % 2 == 0 else total - term
    return total


def alexander_polynomial(P: LambdaPresentation) -> LaurentPoly:
    """GCD of the maximal minors of the relation matrix, unit-normalized.

    A presentation with fewer (independent) rows than columns has free
    Lambda-rank, in which case the answer is 0 and NotTorsion is warned.

    >>> q = parse_poly("t^2 - t + 1")
    >>> P = LambdaPresentation(1, [(q,)])
    >>> print(alexander_polynomial(P))
    t^2 - t + 1
    """
    m = P.ncols
    if m == 0:
        return ONE
    if len(P.rows) < m:
        warnings.warn(NotTorsion(
            f"{len(P.rows)} rows cannot span a rank-{m} module"))
        return ZERO
    from itertools import combinations
    g = ZERO
    for picked in combinations(P.rows, m):
        g = gcd_primitive(g, _det([list(r) for r in picked]))
    if g.is_zero:
        warnings.warn(NotTorsion("all maximal minors vanish"))
        return ZERO
    return normalize_unit(g)


def is_finitely_z_generated(delta: LaurentPoly) -> bool:
    """Whether Lambda/(delta) is a finitely generated abelian group: both
    extreme coefficients of the normalized polynomial must be +-1.

    >>> is_finitely_z_generated(parse_poly("t^2 - t + 1"))
    True
    >>> is_finitely_z_generated(parse_poly("3t - 2"))
    False
    """
    if delta.is_zero:
        raise ZeroPolynomial("the zero polynomial presents a non-torsion module")
    d = normalize_unit(delta)
    return abs(d.leading_coefficient) == 1 and abs(d.coefficient(0)) == 1


@dataclass(frozen=True)
class Fingerprint:
    """Isomorphism invariants of (group, t-action); equality is a necessary
    (not proven sufficient) condition for module isomorphism, and is stable
    under changing the quotient degree that produced the module."""

    invariant_factors: tuple
    free_rank: int
    t_order: int
    cyclic_cokernels: tuple  # ((d, (factors, rank)) for each divisor d of t_order)
    char_poly: LaurentPoly


def fingerprint(D: DerivedModule) -> Fingerprint:
    """Collect the comparison invariants of a derived module.

    The cokernels of t^d - 1 are keyed by the divisors of the t-order
    rather than of the quotient degree k, so that isomorphic modules
    reached at different k compare equal.
    """
    group = D.group
    T = D.t_action.T
    n = group.ambient_rank
    assert D.t_order is not None
    cokernels = []
    for d in _divisors(D.t_order):
        if d == D.t_order:
            cokernels.append((d, (group.invariant_factors, group.free_rank)))
            continue
        delta = T ** d - IntMatrix.identity(n)
        quot = cokernel(group.relations.hstack(delta))
        cokernels.append((d, (quot.invariant_factors, quot.free_rank)))
    dec = group.snf
    basis = dec.u_inv @ T @ dec.U
    rank = dec.rank
    free_block = IntMatrix([[basis.at(i, j) for j in range(rank, n)]
                            for i in range(rank, n)])
    coeffs = charpoly(free_block)
    degree = len(coeffs) - 1
    poly = LaurentPoly({degree - i: c for i, c in enumerate(coeffs) if c})
    return Fingerprint(invariant_factors=group.invariant_factors,
                       free_rank=group.free_rank,
                       t_order=D.t_order,
                       cyclic_cokernels=tuple(cokernels),
                       char_poly=normalize_unit(poly))


def sequence(P: LambdaPresentation, K: int):
    """Fingerprints of the quotients at k = 1..K plus the smallest detected
    period p with fp(A_n) = fp(A_{n+p}) for every tested n <= K - p.

    >>> P = LambdaPresentation(1, [(parse_poly("t^2 - t + 1"),)])
    >>> fps, period = sequence(P, 13)
    >>> period
    6
    """
    if K < 1:
        raise PreconditionError(f"sequence length must be >= 1, got {K}")
    fps = [fingerprint(derived(P, k)) for k in range(1, K + 1)]
    period = None
    for p in range(1, K):
        if all(fps[n - 1] == fps[n + p - 1] for n in range(1, K - p + 1)):
            period = p
            break
    return fps, period


def direct_sum(P1: LambdaPresentation, P2: LambdaPresentation) -> LambdaPresentation:
    """Block-diagonal sum; quotients of the sum decompose summand-wise."""
    pad1 = (ZERO,) * P2.ncols
    pad2 = (ZERO,) * P1.ncols
    rows = [row + pad1 for row in P1.rows] + [pad2 + row for row in P2.rows]
    return LambdaPresentation(P1.ncols + P2.ncols, rows)


# ---------------------------------------------------------------------------
# structure-existence checkers


def _prime_factors(n: int):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _is_prime(n: int) -> bool:
    return n >= 2 and _prime_factors(n) == [n]


def cyclic_admits(n: int, k: int) -> dict:
    """Whether Z/n carries a module structure whose degree-k quotient is all
    of Z/n: every prime p | n needs a residue a != 1 with
    1 + a + ... + a^{k-1} = 0 (mod p).

    >>> cyclic_admits(3, 2)
    {'ok': True, 'witnesses': {3: 2}}
    >>> cyclic_admits(3, 3)["ok"]
    False
    """
    if n < 2 or k < 2:
        raise PreconditionError("need n >= 2 and k >= 2")
    witnesses = {}
    ok = True
    for p in _prime_factors(n):
        found = None
        for a in range(p):
            if a == 1:
                continue
            if sum(pow(a, i, p) for i in range(k)) % p == 0:
                found = a
                break
        witnesses[p] = found
        if found is None:
            ok = False
    return {"ok": ok, "witnesses": witnesses}


def cyclic_structure_count(p: int, r: int):
    """Count the multiplications tv = av that make Z/p^r a module with both
    a and a - 1 invertible; returns (count, multipliers).

    >>> cyclic_structure_count(3, 2)
    (3, [2, 5, 8])
    >>> cyclic_structure_count(2, 1)
    (0, [])
    """
    if not _is_prime(p):
        raise PreconditionError(f"{p} is not prime")
    if r < 1:
        raise PreconditionError("exponent must be >= 1")
    modulus = p ** r
    multipliers = [a for a in range(modulus)
                   if a % p != 0 and (a - 1) % p != 0]
    return len(multipliers), multipliers


def two_group_admits(two_blocks, odd_orders=()) -> dict:
    """Existence test for a module structure on a finite 2-group (times an
    optional odd part) given as homocyclic blocks (exponent r, multiplicity
    m): possible exactly when every multiplicity is >= 2, and then witnessed
    by the explicit presentation sum of Lambda/(2^r, t^m - t + 1) blocks
    (plus Lambda/(q, 2t - 1) for each odd order q).

    >>> two_group_admits([(1, 1)])["ok"]
    False
    >>> result = two_group_admits([(1, 2)])
    >>> result["ok"], result["construction"].ncols
    (True, 1)
    """
    blocks = [(int(r), int(m)) for r, m in two_blocks]
    exponents = [r for r, _ in blocks]
    if len(set(exponents)) != len(exponents):
        raise PreconditionError("block exponents must be distinct")
    for r, m in blocks:
        if r < 1 or m < 1:
            raise PreconditionError("exponents and multiplicities must be >= 1")
    odd_orders = [int(q) for q in odd_orders]
    for q in odd_orders:
        if q < 3 or q % 2 == 0:
            raise PreconditionError(f"odd part must have odd orders >= 3, got {q}")
    if any(m < 2 for _, m in blocks):
        return {"ok": False, "construction": None}
    construction = LambdaPresentation(0, ())
    for r, m in blocks:
        piece = LambdaPresentation(1, [
            (LaurentPoly.constant(2 ** r),),
            (LaurentPoly({m: 1, 1: -1, 0: 1}),),
        ])
        construction = direct_sum(construction, piece)
    for q in odd_orders:
        piece = LambdaPresentation(1, [
            (LaurentPoly.constant(q),),
            (parse_poly("2t - 1"),),
        ])
        construction = direct_sum(construction, piece)
    return {"ok": True, "construction": construction}


def odd_group_as_A2(orders) -> LambdaPresentation:
    """The module whose degree-2 quotient is the direct sum of cyclic groups
    of the given odd orders: sum of Lambda/((m+1)t - m) with m = (q-1)/2.

    >>> P = odd_group_as_A2([5])
    >>> print(P.rows[0][0])
    3t - 2
    >>> derived(P, 2).group.invariant_factors
    (5,)
    """
    out = LambdaPresentation(0, ())
    for q in orders:
        q = int(q)
        if q % 2 == 0:
            raise EvenOrder(f"{q} is even; only odd orders arise at degree 2")
        if q < 1:
            raise PreconditionError(f"orders must be positive, got {q}")
        m = (q - 1) // 2
        piece = LambdaPresentation(1, [(LaurentPoly({1: m + 1, 0: -m}),)])
        out = direct_sum(out, piece)
    return out


# ---------------------------------------------------------------------------
# normal forms for realization


def realization_presentation(nf) -> LambdaPresentation:
    """The module Lambda^m / (f_i e_i rows + (1-t) g rows) that a
    realization normal form presents directly."""
    m = nf.m
    rows = []
    for i, f in enumerate(nf.f):
        rows.append(tuple(f if j == i else ZERO for j in range(m)))
    for g_row in nf.g_rows:
        rows.append(tuple(ONE_MINUS_T * g for g in g_row))
    return LambdaPresentation(m, rows)


def as_realization_data(P: LambdaPresentation):
    """Recognize a presentation in realization normal form: the first ncols
    rows must be a diagonal of polynomials with value 1 at t = 1, and every
    later row must be divisible by 1 - t entrywise."""
    from .cgroup import RealizationData
    from .laurent import eval_at
    m = P.ncols
    if m < 1:
        raise PreconditionError("normal form needs at least one column")
    if len(P.rows) < m:
        raise PreconditionError(
            f"normal form needs {m} diagonal rows, found {len(P.rows)}")
    f = []
    for i in range(m):
        row = P.rows[i]
        for j, entry in enumerate(row):
            if j != i and not entry.is_zero:
                raise PreconditionError(
                    f"row {i + 1} is not diagonal (column {j + 1} nonzero)")
        if not row[i].is_polynomial or eval_at(row[i], 1) != 1:
            raise PreconditionError(
                f"diagonal entry {i + 1} must be a polynomial with value 1 at t=1")
        f.append(row[i])
    g_rows = []
    for row in P.rows[m:]:
        g_row = []
        for entry in row:
            if not divides(ONE_MINUS_T, entry):
                raise PreconditionError(
                    "trailing rows must be divisible by 1 - t entrywise")
            g_row.append(exact_div(entry, ONE_MINUS_T) if not entry.is_zero
                         else ZERO)
        g_rows.append(tuple(g_row))
    return RealizationData(m, tuple(f), tuple(g_rows))


# ---------------------------------------------------------------------------
# module file format


def parse_lm(text: str, filename: Optional[str] = None) -> LambdaPresentation:
    """Parse the line-based module format: "cols <n>" then "row p , p , ...".

    >>> parse_lm("cols 1\\nrow 2t - 1\\n").rows[0][0]
    LaurentPoly('2t - 1')
    """
    def where(lineno):
        return f"{filename}:{lineno}" if filename else f"line {lineno}"

    ncols = None
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        directive, _, rest = line.partition(" ")
        rest = rest.strip()
        if directive == "cols":
            if ncols is not None:
                raise ParseError(f"{where(lineno)}: duplicate cols directive")
            try:
                ncols = int(rest)
            except ValueError:
                raise ParseError(f"{where(lineno)}: cols needs an integer, "
                                 f"got {rest!r}") from None
            if ncols < 0:
                raise ParseError(f"{where(lineno)}: cols must be >= 0")
        elif directive == "row":
            if ncols is None:
                raise ParseError(f"{where(lineno)}: row before cols")
            if rest:
                pieces = rest.split(",")
            else:
                pieces = []
            if len(pieces) != ncols:
                raise ParseError(f"{where(lineno)}: expected {ncols} entries, "
                                 f"got {len(pieces)}")
            rows.append(tuple(parse_poly(piece.strip(),
                                         filename=filename, line=lineno)
                              for piece in pieces))
        else:
            raise ParseError(f"{where(lineno)}: unknown directive {directive!r}")
    if ncols is None:
        raise ParseError((f"{filename}: " if filename else "")
                         + "missing cols directive")
    return LambdaPresentation(ncols, rows)


def serialize_lm(P: LambdaPresentation) -> str:
    lines = [f"cols {P.ncols}"]
    for row in P.rows:
        lines.append("row " + " , ".join(str(entry) for entry in row))
    return "\n".join(lines) + "\n"
