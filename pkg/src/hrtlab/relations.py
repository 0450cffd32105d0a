"""Rational dependence detection over {1, x_1, ..., x_N}.

Two routes share one interface.  Values written in the exact grammar
(rationals and a/b + c/d*sqrt(n)) are decided by symbolic linear algebra
over Q, with zero ambiguity.  Plain floats go through integer relation
search: lattice reduction on the rows [I | round(x / tol)], candidates
capped at max_den and verified numerically.  Detections that only pass
at a 10x looser tolerance raise instead of guessing; a silently wrong
relation would poison every torus decomposition built on top of it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

from .errors import PrecisionExhausted
from .exactnum import SqrtExpr, parse_exact

ExactLike = Union[int, Fraction, str, SqrtExpr]
ValueLike = Union[float, ExactLike]


@dataclass(frozen=True)
class Relation:
    """x_j = u + sum_l d[l] * x_{basis[l]}, coefficients in lowest terms."""

    j: int
    u: Fraction
    d: Tuple[Fraction, ...]


@dataclass(frozen=True)
class RelationBasis:
    """Outcome of a detection run.

    basis holds the 0-based indices of a maximal rationally independent
    subset (greedy, first index preferred); every other index j carries
    a Relation over that basis.  L is the lcm of the denominators of all
    rational coefficients u, d appearing in the relations (1 when there
    are none).
    """

    size: int
    basis: Tuple[int, ...]
    relations: Tuple[Relation, ...]
    L: int
    exact: bool
    max_den: int
    tol: float

    def to_json(self) -> dict:
        return {
            "basis": list(self.basis),
            "relations": [
                {"j": r.j, "u": str(r.u), "d": [str(x) for x in r.d]}
                for r in self.relations
            ],
            "L": self.L,
        }


@dataclass(frozen=True)
class IndependenceCertificate:
    """Search-bounded verdict: independent up to coefficient size max_den,
    or dependent with an explicit integer relation summing to zero."""

    independent: bool
    relation: Optional[Tuple[int, ...]]
    max_den: int
    tol: float
    exact: bool


@dataclass(frozen=True)
class GroupClosureDescriptor:
    """Shape of the closed group generated by the diagonal monomials.

    torus_dimension is the count of independent irrationals m; the group
    has component_count = L connected pieces.  monomial_exponents[k] is
    the integer vector E_k with entry k of the (qL)-th power matrix equal
    to prod_l z_l ** (q * E_k[l]); for basis indices E_k = L * e_l.
    """

    torus_dimension: int
    component_count: int
    monomial_exponents: Tuple[Tuple[int, ...], ...]


# ---------------------------------------------------------------------------
# exact route


def _as_exact(v: ExactLike) -> SqrtExpr:
    if isinstance(v, SqrtExpr):
        return v
    if isinstance(v, str):
        return parse_exact(v)
    if isinstance(v, (int, Fraction)):
        return SqrtExpr.from_rational(Fraction(v))
    raise TypeError(f"not an exact value: {v!r}")


def _is_exactable(v: ValueLike) -> bool:
    return isinstance(v, (SqrtExpr, str, int, Fraction)) and not isinstance(
        v, bool
    )


def _coordinates(vals: Sequence[SqrtExpr]) -> List[List[Fraction]]:
    keys = [1]
    for v in vals:
        for k in v.radicals():
            if k not in keys:
                keys.append(k)
    keys = [1] + sorted(k for k in keys if k != 1)
    return [[v.coefficient(k) for k in keys] for v in vals]


def _solve_exact(
    cols: List[List[Fraction]], target: List[Fraction]
) -> Optional[List[Fraction]]:
    """Solve sum_c sol[c] * cols[c] = target over Q, or None if outside
    the span.  Columns are assumed linearly independent."""
    nrows = len(target)
    ncols = len(cols)
    aug = [
        [cols[c][r] for c in range(ncols)] + [target[r]]
        for r in range(nrows)
    ]
    pivots: List[Tuple[int, int]] = []
    row = 0
    for col in range(ncols):
        piv = next((r for r in range(row, nrows) if aug[r][col] != 0), None)
        if piv is None:
            continue
        aug[row], aug[piv] = aug[piv], aug[row]
        inv = aug[row][col]
        aug[row] = [x / inv for x in aug[row]]
        for r in range(nrows):
            if r != row and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[row])]
        pivots.append((row, col))
        row += 1
        if row == nrows:
            break
    for r in range(nrows):
        if all(aug[r][c] == 0 for c in range(ncols)) and aug[r][ncols] != 0:
            return None
    sol = [Fraction(0)] * ncols
    for rr, cc in pivots:
        sol[cc] = aug[rr][ncols]
    return sol


# ---------------------------------------------------------------------------
# float route: exact-rational LLL on integer rows


def _lll_reduce(
    rows: Sequence[Sequence[int]], delta: Fraction = Fraction(3, 4)
) -> List[List[int]]:
    """Lenstra-Lenstra-Lovasz reduction with exact rational bookkeeping.

    Input rows must be linearly independent (ours are [I | column], so
    always).  Dimensions here are tiny; exactness buys determinism and
    spares us from tuning a floating-point Gram-Schmidt.
    """
    b = [list(map(int, r)) for r in rows]
    n = len(b)
    if n <= 1:
        return b
    dim = len(b[0])

    # one-time Gram-Schmidt for mu and the squared norms B
    mu = [[Fraction(0)] * n for _ in range(n)]
    B = [Fraction(0)] * n
    bstar = [[Fraction(0)] * dim for _ in range(n)]
    for i in range(n):
        v = [Fraction(x) for x in b[i]]
        for j in range(i):
            dot = sum(Fraction(b[i][t]) * bstar[j][t] for t in range(dim))
            mu[i][j] = dot / B[j]
            v = [a - mu[i][j] * c for a, c in zip(v, bstar[j])]
        bstar[i] = v
        B[i] = sum(x * x for x in v)
    del bstar

    def red(k: int, l: int) -> None:
        if abs(mu[k][l]) * 2 <= 1:
            return
        q = round(mu[k][l])
        b[k] = [a - q * c for a, c in zip(b[k], b[l])]
        mu[k][l] -= q
        for i in range(l):
            mu[k][i] -= q * mu[l][i]

    k = 1
    while k < n:
        red(k, k - 1)
        if B[k] < (delta - mu[k][k - 1] ** 2) * B[k - 1]:
            m = mu[k][k - 1]
            B_new = B[k] + m * m * B[k - 1]
            mu[k][k - 1] = m * B[k - 1] / B_new
            B[k] = B[k - 1] * B[k] / B_new
            B[k - 1] = B_new
            b[k], b[k - 1] = b[k - 1], b[k]
            for j in range(k - 1):
                mu[k][j], mu[k - 1][j] = mu[k - 1][j], mu[k][j]
            for i in range(k + 1, n):
                t = mu[i][k]
                mu[i][k] = mu[i][k - 1] - m * t
                mu[i][k - 1] = t + mu[k][k - 1] * mu[i][k]
            k = max(k - 1, 1)
        else:
            for l in range(k - 2, -1, -1):
                red(k, l)
            k += 1
    return b


def _best_int_relation(
    vec: Sequence[float],
    max_den: int,
    tol: float,
    require_last: bool,
) -> Optional[Tuple[int, ...]]:
    """Shortest verified integer vector q with sum q[i] vec[i] = 0 (to tol),
    all |q[i]| <= max_den; None when the reduced lattice offers nothing.
    require_last demands q[-1] != 0 so the relation actually resolves the
    newest value."""
    n = len(vec)
    scale = round(1.0 / tol)
    rows = [
        [1 if j == i else 0 for j in range(n)] + [round(scale * vec[i])]
        for i in range(n)
    ]
    reduced = _lll_reduce(rows)
    verified: List[Tuple[Tuple[int, int], Tuple[int, ...]]] = []
    ambiguous: List[Tuple[int, ...]] = []
    for row in reduced:
        q = tuple(row[:n])
        if all(v == 0 for v in q):
            continue
        if require_last and q[-1] == 0:
            continue
        if max(abs(v) for v in q) > max_den:
            continue
        resid = abs(math.fsum(qi * vi for qi, vi in zip(q, vec)))
        if resid <= tol:
            norm_inf = max(abs(v) for v in q)
            norm_sq = sum(v * v for v in q)
            verified.append(((norm_inf, norm_sq), q))
        elif resid <= 10.0 * tol:
            ambiguous.append(q)
    if verified:
        verified.sort(key=lambda item: (item[0], item[1]))
        return verified[0][1]
    if ambiguous:
        raise PrecisionExhausted(
            f"candidate relation {ambiguous[0]} verifies only between "
            f"tol={tol:g} and 10*tol; refusing to guess"
        )
    return None


# ---------------------------------------------------------------------------
# public interface


def _lcm_of_denominators(relations: Sequence[Relation]) -> int:
    L = 1
    for r in relations:
        L = math.lcm(L, r.u.denominator)
        for x in r.d:
            L = math.lcm(L, x.denominator)
    return L


def detect_relations(
    values: Sequence[ValueLike],
    max_den: int,
    tol: float = 1e-12,
) -> RelationBasis:
    """Greedy scan: each value either joins the basis or gets written as
    u + sum d_l * (earlier basis values).

    All-exact inputs take the symbolic route and max_den / tol play no
    role in the decisions (they are recorded for provenance only).
    """
    if not values:
        raise ValueError("values must be nonempty")
    if max_den < 1:
        raise ValueError("max_den must be >= 1")
    if tol <= 0:
        raise ValueError("tol must be positive")

    exact = all(_is_exactable(v) for v in values)
    basis: List[int] = []
    relations: List[Relation] = []

    if exact:
        exprs = [_as_exact(v) for v in values]
        coords = _coordinates(exprs)
        dim = len(coords[0]) if coords else 1
        const = [Fraction(1)] + [Fraction(0)] * (dim - 1)
        for i, vec in enumerate(coords):
            cols = [const] + [coords[b] for b in basis]
            sol = _solve_exact(cols, vec)
            if sol is None:
                basis.append(i)
            else:
                relations.append(
                    Relation(j=i, u=sol[0], d=tuple(sol[1:]))
                )
    else:
        floats = [
            float(v) if not isinstance(v, str) else float(parse_exact(v))
            for v in values
        ]
        for i, x in enumerate(floats):
            vec = [1.0] + [floats[b] for b in basis] + [x]
            q = _best_int_relation(vec, max_den, tol, require_last=True)
            if q is None:
                basis.append(i)
            else:
                last = q[-1]
                relations.append(
                    Relation(
                        j=i,
                        u=Fraction(-q[0], last),
                        d=tuple(
                            Fraction(-q[1 + l], last)
                            for l in range(len(basis))
                        ),
                    )
                )

    return RelationBasis(
        size=len(values),
        basis=tuple(basis),
        relations=tuple(relations),
        L=_lcm_of_denominators(relations),
        exact=exact,
        max_den=int(max_den),
        tol=float(tol),
    )


def is_rationally_independent(
    values: Sequence[ValueLike],
    max_den: int,
    tol: float = 1e-12,
) -> IndependenceCertificate:
    """Homogeneous test: does any integer vector q with |q| <= max_den give
    sum q_i values_i = 0?  Note the constant 1 is NOT implicit here; pass
    it as a value if the affine span is meant."""
    if not values:
        raise ValueError("values must be nonempty")
    exact = all(_is_exactable(v) for v in values)
    if exact:
        exprs = [_as_exact(v) for v in values]
        coords = _coordinates(exprs)
        kernel = _kernel_vector(coords)
        if kernel is None:
            return IndependenceCertificate(
                independent=True,
                relation=None,
                max_den=int(max_den),
                tol=float(tol),
                exact=True,
            )
        return IndependenceCertificate(
            independent=False,
            relation=kernel,
            max_den=int(max_den),
            tol=float(tol),
            exact=True,
        )
    floats = [
        float(v) if not isinstance(v, str) else float(parse_exact(v))
        for v in values
    ]
    if len(floats) == 1:
        # a single value is dependent iff it is zero
        if abs(floats[0]) <= tol:
            return IndependenceCertificate(
                False, (1,), int(max_den), float(tol), False
            )
        return IndependenceCertificate(
            True, None, int(max_den), float(tol), False
        )
    q = _best_int_relation(floats, max_den, tol, require_last=False)
    if q is None:
        return IndependenceCertificate(
            True, None, int(max_den), float(tol), False
        )
    return IndependenceCertificate(
        False, _normalize_sign(q), int(max_den), float(tol), False
    )


def _normalize_sign(q: Tuple[int, ...]) -> Tuple[int, ...]:
    for v in q:
        if v != 0:
            return q if v > 0 else tuple(-x for x in q)
    return q


def _kernel_vector(
    coords: List[List[Fraction]],
) -> Optional[Tuple[int, ...]]:
    """A nonzero integer vector in the rational kernel of the column
    matrix, normalized primitive with positive leading entry; None when
    the columns are independent."""
    ncols = len(coords)
    for split in range(ncols):
        cols = [coords[c] for c in range(ncols) if c != split]
        target = coords[split]
        sol = _solve_exact(cols, target) if cols else (
            [] if all(x == 0 for x in target) else None
        )
        if not cols and sol is None:
            continue
        if not cols:
            # single zero column: relation is just that column
            vec = [Fraction(0)] * ncols
            vec[split] = Fraction(1)
        elif sol is None:
            continue
        else:
            vec = [Fraction(0)] * ncols
            pos = 0
            for c in range(ncols):
                if c == split:
                    vec[c] = Fraction(-1)
                else:
                    vec[c] = sol[pos]
                    pos += 1
        denom_lcm = 1
        for x in vec:
            denom_lcm = math.lcm(denom_lcm, x.denominator)
        ints = [int(x * denom_lcm) for x in vec]
        g = 0
        for v in ints:
            g = math.gcd(g, abs(v))
        ints = [v // g for v in ints]
        return _normalize_sign(tuple(ints))
    return None


def group_closure(rb: RelationBasis) -> GroupClosureDescriptor:
    """Read the torus-times-cyclic shape straight off a relation basis.

    Substituting x_j = u_j + sum d_jl x_l into the diagonal monomials and
    raising to the power L kills every rational phase (the lcm clears all
    denominators), leaving pure monomials in the m independent
    generators; L counts the connected components swept before closing.
    """
    m = len(rb.basis)
    pos = {idx: l for l, idx in enumerate(rb.basis)}
    rel = {r.j: r for r in rb.relations}
    exps: List[Tuple[int, ...]] = []
    for k in range(rb.size):
        if k in pos:
            vec = [0] * m
            vec[pos[k]] = rb.L
            exps.append(tuple(vec))
        else:
            r = rel[k]
            vec = []
            for l in range(m):
                scaled = r.d[l] * rb.L if l < len(r.d) else Fraction(0)
                if scaled.denominator != 1:
                    raise ValueError(
                        "L does not clear the coefficient denominators; "
                        "relation basis is inconsistent"
                    )
                vec.append(int(scaled))
            exps.append(tuple(vec))
    return GroupClosureDescriptor(
        torus_dimension=m,
        component_count=rb.L,
        monomial_exponents=tuple(exps),
    )
