"""Exact cluster-seed mutation with sparse Laurent polynomials.

This is the ground-truth engine: every mutation performs the actual exchange
arithmetic in Z[x1^-1, x2^-1, x3^-1], asserts that the division is exact and
that numerators carry no monomial factor, and reads denominator vectors off
the reduced form.  It is depth-limited by a per-polynomial term budget;
deeper words are delegated to the reflection engine.

Internally a Laurent polynomial is a min-stripped numerator with non-negative
packed exponents plus an integer monomial shift, so the kernel only ever sees
non-negative exponents.  The kernel is the compiled extension when available.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from math import comb, gcd
from typing import Iterable

if os.environ.get("SCHURCURVES_PURE"):
    from . import _poly_py as kernel
else:
    try:
        from . import _poly_kernel as kernel  # type: ignore[no-redef]
    except ImportError:
        from . import _poly_py as kernel  # type: ignore[no-redef]

from .quiver import INITIAL_B, ExchangeMatrix
from .roots import Root
from .words import Word, check_word, format_word

InexactDivision = kernel.InexactDivision

SLOT_BITS = 21
SLOT_MASK = (1 << SLOT_BITS) - 1
MAX_EXPONENT = SLOT_MASK
DEFAULT_BUDGET = 5_000_000

Exponents = tuple[int, int, int]


class BudgetExceeded(RuntimeError):
    """A polynomial grew past the term budget; carries the last safe prefix."""

    def __init__(self, message: str, completed_prefix: Word = ()):
        super().__init__(message)
        self.completed_prefix = completed_prefix


class LaurentPhenomenonError(RuntimeError):
    """Exact division failed: would contradict Laurent-ness, so it is a bug."""


def _pack(e: Exponents) -> int:
    return (e[0] << 42) | (e[1] << 21) | e[2]


def _unpack(k: int) -> Exponents:
    return (k >> 42, (k >> 21) & SLOT_MASK, k & SLOT_MASK)


@dataclass(frozen=True)
class LaurentPoly:
    """Sparse Laurent polynomial: num (packed, exponents >= 0) times x^shift."""

    num: dict
    shift: Exponents

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, LaurentPoly)
            and self.shift == other.shift
            and self.num == other.num
        )

    def __hash__(self) -> int:  # pragma: no cover - not used as dict key
        return hash((self.shift, frozenset(self.num.items())))

    @classmethod
    def from_terms(cls, terms: dict[Exponents, int] | Iterable[tuple[Exponents, int]]) -> "LaurentPoly":
        items = terms.items() if isinstance(terms, dict) else list(terms)
        num: dict = {}
        for e, c in items:
            if c == 0:
                continue
            k = _pack((e[0] + (1 << 19), e[1] + (1 << 19), e[2] + (1 << 19)))
            num[k] = num.get(k, 0) + c
        num = {k: c for k, c in num.items() if c}
        bias = (1 << 19, 1 << 19, 1 << 19)
        return _normalize(num, tuple(-b for b in bias))

    @classmethod
    def variable(cls, i: int) -> "LaurentPoly":
        """The initial cluster variable x_i."""
        shift = tuple(1 if j == i - 1 else 0 for j in range(3))
        return cls({0: 1}, shift)  # type: ignore[arg-type]

    @property
    def is_zero(self) -> bool:
        return not self.num

    def term_count(self) -> int:
        return len(self.num)

    def terms(self) -> dict[Exponents, int]:
        """Terms with true Laurent exponents."""
        s = self.shift
        return {
            tuple(a + b for a, b in zip(_unpack(k), s)): c  # type: ignore[misc]
            for k, c in self.num.items()
        }

    def min_exponents(self) -> Exponents:
        """Per-variable minimum exponent (the negated denominator vector)."""
        if not self.num:
            raise ValueError("zero polynomial has no valuation")
        return self.shift

    def dump(self) -> str:
        """Lines "coeff e1 e2 e3" in descending lex order of exponents."""
        rows = sorted(self.terms().items(), reverse=True)
        return "\n".join(f"{c} {e[0]} {e[1]} {e[2]}" for e, c in rows)


def _normalize(num: dict, shift: Exponents) -> LaurentPoly:
    """Strip the common monomial so every variable has minimum exponent 0."""
    if not num:
        return LaurentPoly({}, (0, 0, 0))
    m0 = m1 = m2 = MAX_EXPONENT
    for k in num:
        e0 = k >> 42
        e1 = (k >> 21) & SLOT_MASK
        e2 = k & SLOT_MASK
        if e0 < m0:
            m0 = e0
        if e1 < m1:
            m1 = e1
        if e2 < m2:
            m2 = e2
    k0 = (m0 << 42) | (m1 << 21) | m2
    if k0:
        num = {k - k0: c for k, c in num.items()}
    return LaurentPoly(num, (shift[0] + m0, shift[1] + m1, shift[2] + m2))


def denominator_vector(p: LaurentPoly) -> Root:
    """d-vector of a reduced Laurent polynomial: negated minimum exponents."""
    return tuple(-s for s in p.min_exponents())


def _max_exponents(p: dict) -> Exponents:
    m0 = m1 = m2 = 0
    for k in p:
        e0 = k >> 42
        e1 = (k >> 21) & SLOT_MASK
        e2 = k & SLOT_MASK
        if e0 > m0:
            m0 = e0
        if e1 > m1:
            m1 = e1
        if e2 > m2:
            m2 = e2
    return (m0, m1, m2)


def _pow_estimate(p: dict, n: int) -> int:
    """Cheap lower-ish bound on the support of p**n used for budget guards."""
    t = len(p)
    if t == 1:
        return 1
    if t == 2:
        return n + 1
    # lattice points of the dilated Newton polytope, capped by compositions
    m = _max_exponents(p)
    box = 1
    for d in m:
        box *= min(n * d + 1, 1 << 40)
        if box > 1 << 62:
            break
    return min(comb(n + t - 1, t - 1), box)


def poly_pow(p: dict, n: int, budget: int) -> dict:
    """p**n with a term budget; picks a strategy from the base size."""
    if n == 0:
        return {0: 1}
    if n == 1:
        return dict(p)
    if len(p) == 1:
        ((k, c),) = p.items()
        return {k * n: c**n}
    est = _pow_estimate(p, n)
    if est > budget:
        raise BudgetExceeded(f"power support ~{est} exceeds budget {budget}")
    if len(p) == 2:
        return _pow_binomial(p, n)
    # make sure the exponents fit the packing before any multiplication
    me = _max_exponents(p)
    if max(me) * n > MAX_EXPONENT:
        raise BudgetExceeded("exponent capacity exceeded in power")
    if len(p) <= 6 and n > 16:
        return _pow_iterative(p, n, budget)
    return _pow_square(p, n, budget)


def _pow_binomial(p: dict, n: int) -> dict:
    (ka, ca), (kb, cb) = p.items()
    if ka * n > _pack((MAX_EXPONENT,) * 3) or kb * n > _pack((MAX_EXPONENT,) * 3):
        raise BudgetExceeded("exponent capacity exceeded in power")
    out = {}
    coeff = ca**n
    pa, pb = ca, cb
    term = coeff
    for k in range(n + 1):
        out[ka * (n - k) + kb * k] = term
        if k < n:
            term = term * (n - k) * pb
            assert term % ((k + 1) * pa) == 0
            term //= (k + 1) * pa
    return out


def _pow_iterative(p: dict, n: int, budget: int) -> dict:
    out = dict(p)
    for _ in range(n - 1):
        out = kernel.mul_capped(out, p, budget)
    return out


def _pow_square(p: dict, n: int, budget: int) -> dict:
    result: dict | None = None
    base = p
    while n:
        if n & 1:
            result = base if result is None else kernel.mul_capped(result, base, budget)
        n >>= 1
        if n:
            base = kernel.mul_capped(base, base, budget)
    assert result is not None
    return result


@dataclass(frozen=True)
class Seed:
    """Cluster of three Laurent polynomials plus an exchange matrix."""

    cluster: tuple[LaurentPoly, LaurentPoly, LaurentPoly]
    matrix: ExchangeMatrix
    budget: int = DEFAULT_BUDGET

    @classmethod
    def initial(cls, matrix: ExchangeMatrix = INITIAL_B, budget: int = DEFAULT_BUDGET) -> "Seed":
        return cls(
            (LaurentPoly.variable(1), LaurentPoly.variable(2), LaurentPoly.variable(3)),
            matrix,
            budget,
        )

    def dvectors(self) -> tuple[Root, Root, Root]:
        return tuple(denominator_vector(p) for p in self.cluster)  # type: ignore[return-value]

    def mutate(self, k: int) -> "Seed":
        return mutate_seed(self, k)


def mutate_seed(seed: Seed, k: int) -> Seed:
    """Seed mutation at direction k via the exchange relation.

    The new variable is (prod x_i^[b_ik]+ + prod x_i^[-b_ik]+) / x_k computed
    by numerator products and one exact division; the matrix mutates alongside.
    """
    if not 1 <= k <= 3:
        raise IndexError(f"mutation index {k} out of range 1..3")
    col = seed.matrix.column(k)
    budget = seed.budget
    pos: dict = {0: 1}
    neg: dict = {0: 1}
    pos_shift = [0, 0, 0]
    neg_shift = [0, 0, 0]
    for i, b in enumerate(col):
        if b == 0:
            continue
        var = seed.cluster[i]
        e = abs(b)
        power = poly_pow(var.num, e, budget)
        if b > 0:
            pos = kernel.mul_capped(pos, power, budget)
            for t in range(3):
                pos_shift[t] += e * var.shift[t]
        else:
            neg = kernel.mul_capped(neg, power, budget)
            for t in range(3):
                neg_shift[t] += e * var.shift[t]
    base = [min(a, b) for a, b in zip(pos_shift, neg_shift)]
    dpos = _pack(tuple(a - b for a, b in zip(pos_shift, base)))  # type: ignore[arg-type]
    dneg = _pack(tuple(a - b for a, b in zip(neg_shift, base)))  # type: ignore[arg-type]
    if max(_max_exponents(pos)) + max(_unpack(dpos)) > MAX_EXPONENT or (
        max(_max_exponents(neg)) + max(_unpack(dneg)) > MAX_EXPONENT
    ):
        raise BudgetExceeded("exponent capacity exceeded in exchange sum")
    total: dict = {k0 + dpos: c for k0, c in pos.items()}
    for k0, c in neg.items():
        kk = k0 + dneg
        v = total.get(kk, 0) + c
        if v:
            total[kk] = v
        else:
            del total[kk]
    if len(total) > budget:
        raise BudgetExceeded(f"exchange sum has {len(total)} terms > budget")
    old = seed.cluster[k - 1]
    try:
        qnum = kernel.divexact(total, old.num)
    except InexactDivision as exc:  # pragma: no cover - would be a genuine bug
        raise LaurentPhenomenonError(
            f"exchange numerator not divisible by x_{k} numerator: {exc}"
        ) from exc
    new = _normalize(qnum, tuple(a - b for a, b in zip(base, old.shift)))  # type: ignore[arg-type]
    # reduced form: after normalization no variable divides the numerator
    assert all(
        any(_unpack(kk)[t] == 0 for kk in new.num) for t in range(3)
    ) or not new.num
    cluster = list(seed.cluster)
    cluster[k - 1] = new
    return Seed(tuple(cluster), seed.matrix.mutate(k), budget)  # type: ignore[arg-type]


@dataclass(frozen=True)
class RunResult:
    seed: Seed
    word: Word
    dvectors: tuple[Root, Root, Root]

    @property
    def last_dvector(self) -> Root:
        return self.dvectors[self.word[-1] - 1]


def run_word(word: Word, matrix: ExchangeMatrix = INITIAL_B, budget: int = DEFAULT_BUDGET) -> RunResult:
    """Mutate the initial seed along word (leftmost letter first).

    Raises BudgetExceeded carrying the deepest completed prefix when a
    polynomial outgrows the budget.
    """
    check_word(word, 3)
    if not word:
        raise ValueError("empty mutation word")
    seed = Seed.initial(matrix, budget)
    for idx, k in enumerate(word):
        try:
            seed = mutate_seed(seed, k)
        except BudgetExceeded as exc:
            raise BudgetExceeded(
                f"budget exceeded at prefix {format_word(word[: idx + 1])}: {exc}",
                completed_prefix=word[:idx],
            ) from None
    return RunResult(seed=seed, word=word, dvectors=seed.dvectors())


def kernel_name() -> str:
    return kernel.IMPL
