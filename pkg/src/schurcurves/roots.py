"""Root-lattice arithmetic for symmetric Kac-Moody root systems.

Everything is exact integer arithmetic on coefficient vectors in the
simple-root basis.  A Cartan matrix here is symmetric with 2 on the diagonal
and non-positive integers off it; the bilinear form is (alpha_i, alpha_j) =
a_ij and the simple reflection is s_i(x) = x - (alpha_i, x) alpha_i.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .words import Word, check_word, free_reduce, is_palindrome

Root = tuple[int, ...]


class NotARootError(ValueError):
    """Raised when a vector is not (plus or minus) a positive real root."""


@dataclass(frozen=True)
class CartanMatrix:
    """Symmetric generalized Cartan matrix."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        n = len(self.rows)
        for i, row in enumerate(self.rows):
            if len(row) != n:
                raise ValueError("Cartan matrix must be square")
            if row[i] != 2:
                raise ValueError("Cartan diagonal must be 2")
            for j, a in enumerate(row):
                if i != j and a > 0:
                    raise ValueError("Cartan off-diagonal must be <= 0")
                if a != self.rows[j][i]:
                    raise ValueError("Cartan matrix must be symmetric")

    @property
    def n(self) -> int:
        return len(self.rows)

    @classmethod
    def symmetric_rank3(cls, arrows: int = 2) -> "CartanMatrix":
        """Rank-3 Cartan with every off-diagonal equal to -arrows."""
        a = -arrows
        return cls(((2, a, a), (a, 2, a), (a, a, 2)))

    @classmethod
    def from_edges(cls, n: int, edges: dict[tuple[int, int], int]) -> "CartanMatrix":
        """Build from 1-based edge multiplicities {(i, j): m} with a_ij = -m."""
        rows = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
        for (i, j), m in edges.items():
            rows[i - 1][j - 1] = -m
            rows[j - 1][i - 1] = -m
        return cls(tuple(tuple(r) for r in rows))

    def is_free_regime(self) -> bool:
        """True when every off-diagonal entry is <= -2 (all braid orders infinite)."""
        return all(
            self.rows[i][j] <= -2
            for i in range(self.n)
            for j in range(self.n)
            if i != j
        )


def simple_root(n: int, i: int) -> Root:
    """alpha_i as a coefficient vector (i is 1-based)."""
    return tuple(1 if j == i - 1 else 0 for j in range(n))


def pairing(cartan: CartanMatrix, x: Root, y: Root) -> int:
    """Bilinear form x^T A y."""
    if len(x) != cartan.n or len(y) != cartan.n:
        raise ValueError("dimension mismatch")
    rows = cartan.rows
    return sum(xi * sum(a * yj for a, yj in zip(rows[i], y)) for i, xi in enumerate(x) if xi)


def reflect(cartan: CartanMatrix, i: int, x: Root) -> Root:
    """s_i(x) = x - (alpha_i, x) alpha_i."""
    if not 1 <= i <= cartan.n:
        raise IndexError(f"reflection index {i} out of range 1..{cartan.n}")
    row = cartan.rows[i - 1]
    c = sum(a * xj for a, xj in zip(row, x))
    if c == 0:
        return x
    k = i - 1
    return tuple(xj - c if j == k else xj for j, xj in enumerate(x))


def apply_word(cartan: CartanMatrix, w: Word, x: Root) -> Root:
    """s_{w_1} s_{w_2} ... s_{w_k} (x); the rightmost letter acts first."""
    rows = cartan.rows
    n = cartan.n
    v = list(x)
    for i in reversed(w):
        if not 1 <= i <= n:
            raise IndexError(f"reflection index {i} out of range 1..{n}")
        row = rows[i - 1]
        c = sum(a * vj for a, vj in zip(row, v))
        if c:
            v[i - 1] -= c
    return tuple(v)


def positive_representative(v: Root) -> Root:
    """Return v or -v, whichever is non-negative; mixed signs are an error."""
    if all(c <= 0 for c in v):
        return tuple(-c for c in v)
    if all(c >= 0 for c in v):
        return v
    raise NotARootError(f"mixed-sign vector {v} is not +- a positive root")


def word_matrix(cartan: CartanMatrix, w: Word) -> tuple[Root, ...]:
    """Matrix of s_w on the root lattice, as a tuple of column images of alpha_i."""
    n = cartan.n
    return tuple(apply_word(cartan, w, simple_root(n, i)) for i in range(1, n + 1))


def _identity(n: int) -> tuple[Root, ...]:
    return tuple(simple_root(n, i) for i in range(1, n + 1))


def _mat_apply(cols: tuple[Root, ...], x: Root) -> Root:
    n = len(x)
    out = [0] * n
    for j, xj in enumerate(x):
        if xj:
            col = cols[j]
            for i in range(n):
                out[i] += xj * col[i]
    return tuple(out)


def _rank(cols: tuple[Root, ...]) -> int:
    # exact Gaussian elimination over Q on the column matrix
    n = len(cols)
    m = [[Fraction(cols[j][i]) for j in range(n)] for i in range(n)]
    rank = 0
    for col in range(n):
        piv = next((r for r in range(rank, n) if m[r][col]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = 1 / m[rank][col]
        m[rank] = [a * inv for a in m[rank]]
        for r in range(n):
            if r != rank and m[r][col]:
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


def _neg_one_eigenvector(cols: tuple[Root, ...]) -> Root | None:
    """Primitive integer kernel vector of (M + I), if the kernel is 1-dimensional."""
    n = len(cols)
    m = [[Fraction(cols[j][i] + (1 if i == j else 0)) for j in range(n)] for i in range(n)]
    pivots: list[int] = []
    rank = 0
    for col in range(n):
        piv = next((r for r in range(rank, n) if m[r][col]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = 1 / m[rank][col]
        m[rank] = [a * inv for a in m[rank]]
        for r in range(n):
            if r != rank and m[r][col]:
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        pivots.append(col)
        rank += 1
    free = [c for c in range(n) if c not in pivots]
    if len(free) != 1:
        return None
    fc = free[0]
    vec = [Fraction(0)] * n
    vec[fc] = Fraction(1)
    for r, pc in enumerate(pivots):
        vec[pc] = -m[r][fc]
    den = 1
    for a in vec:
        den = den * a.denominator // _gcd(den, a.denominator)
    ints = [int(a * den) for a in vec]
    g = 0
    for a in ints:
        g = _gcd(g, abs(a))
    return tuple(a // g for a in ints)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def is_positive_real_root(cartan: CartanMatrix, v: Root, max_steps: int = 10**6) -> bool:
    """Descent test: reflect down to a simple root, or get stuck (imaginary)."""
    if any(c < 0 for c in v) or not any(v):
        return False
    cur = v
    for _ in range(max_steps):
        if sum(cur) == 1 and all(c in (0, 1) for c in cur):
            return True
        best = None
        for i in range(1, cartan.n + 1):
            c = sum(a * xj for a, xj in zip(cartan.rows[i - 1], cur))
            if c > 0:
                best = (i, c)
                break
        if best is None:
            return False  # anti-dominant and not simple: imaginary or not a root
        i, c = best
        nxt = list(cur)
        nxt[i - 1] -= c
        if any(x < 0 for x in nxt):
            return False
        cur = tuple(nxt)
    raise RuntimeError("descent did not terminate within step bound")


def reflection_root_of_word(cartan: CartanMatrix, u: Word) -> Root:
    """Positive real root of a reflection word, with full verification.

    For odd u = u_1 ... u_k, the candidate is s_{u_1}...s_{u_(k-1)/2} applied
    to alpha of the middle letter.  The result is accepted only if s_u equals
    the reflection in that root as a linear map on the whole lattice.
    """
    check_word(u, cartan.n)
    if len(u) % 2 == 0:
        raise NotARootError(f"even-length word has no reflection root: {u}")
    mid = len(u) // 2
    beta = apply_word(cartan, u[:mid], simple_root(cartan.n, u[mid]))
    beta = positive_representative(beta)
    if pairing(cartan, beta, beta) != 2:
        raise NotARootError(f"candidate {beta} has norm != 2")
    # verify s_u = r_beta columnwise
    n = cartan.n
    for i in range(1, n + 1):
        e = simple_root(n, i)
        lhs = apply_word(cartan, u, e)
        c = pairing(cartan, beta, e)
        rhs = tuple(ej - c * bj for ej, bj in zip(e, beta))
        if lhs != rhs:
            raise NotARootError(f"word {u} does not act as the reflection in {beta}")
    return beta


def is_reflection_matrix(cartan: CartanMatrix, u: Word) -> bool:
    """Lattice criterion: M != I, M^2 = I, rank(M - I) = 1, root (-1)-direction."""
    cols = word_matrix(cartan, u)
    ident = _identity(cartan.n)
    if cols == ident:
        return False
    sq = tuple(_mat_apply(cols, col) for col in cols)
    if sq != ident:
        return False
    diff = tuple(
        tuple(cols[j][i] - (1 if i == j else 0) for i in range(cartan.n))
        for j in range(cartan.n)
    )
    if _rank(diff) != 1:
        return False
    v = _neg_one_eigenvector(cols)
    if v is None:
        return False
    try:
        v = positive_representative(v)
    except NotARootError:
        return False
    return is_positive_real_root(cartan, v)


def is_reflection(cartan: CartanMatrix, u: Word) -> bool:
    """True iff s_u is a reflection of the Weyl group.

    When every braid order is infinite (all off-diagonals <= -2) the group is
    a free product of Z/2's, and s_u is a reflection exactly when the freely
    reduced word is a non-empty odd palindrome.  Otherwise fall back to the
    lattice-matrix criterion.
    """
    check_word(u, cartan.n)
    if cartan.is_free_regime():
        r = free_reduce(u)
        return bool(r) and len(r) % 2 == 1 and is_palindrome(r)
    return is_reflection_matrix(cartan, u)


def positive_roots_closure(cartan: CartanMatrix, height_cap: int) -> set[Root]:
    """All positive real roots of height <= cap, by closing simples under s_i.

    Independent brute-force enumerator used as the oracle for the finite-type
    suites; it never consults the closed-form root lists being tested.
    """
    frontier = {simple_root(cartan.n, i) for i in range(1, cartan.n + 1)}
    seen = set(frontier)
    while frontier:
        nxt = set()
        for v in frontier:
            for i in range(1, cartan.n + 1):
                w = reflect(cartan, i, v)
                if w in seen or any(c < 0 for c in w):
                    continue
                if sum(w) <= height_cap:
                    nxt.add(w)
        seen |= nxt
        frontier = nxt
    return seen


def root_to_json(v: Root) -> list[str]:
    """Serialize as decimal strings (coordinates can exceed 64-bit)."""
    return [str(c) for c in v]
