"""Exchange matrices, matrix mutation, and acyclic-prefix decomposition."""

from __future__ import annotations

from dataclasses import dataclass

from .roots import CartanMatrix
from .words import Word, check_word, format_word


@dataclass(frozen=True)
class ExchangeMatrix:
    """Skew-symmetric integer matrix; entry b_ij counts arrows i -> j when > 0."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        n = len(self.rows)
        for i, row in enumerate(self.rows):
            if len(row) != n:
                raise ValueError("exchange matrix must be square")
            for j, b in enumerate(row):
                if b != -self.rows[j][i]:
                    raise ValueError("exchange matrix must be skew-symmetric")

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.rows[i - 1][j - 1]

    def column(self, k: int) -> tuple[int, ...]:
        return tuple(row[k - 1] for row in self.rows)

    def mutate(self, k: int) -> "ExchangeMatrix":
        """Matrix mutation at direction k (1-based); an involution."""
        n = self.n
        if not 1 <= k <= n:
            raise IndexError(f"mutation index {k} out of range 1..{n}")
        kk = k - 1
        b = self.rows
        new = []
        for i in range(n):
            row = []
            for j in range(n):
                if i == kk or j == kk:
                    row.append(-b[i][j])
                elif b[i][kk] * b[kk][j] > 0:
                    sgn = 1 if b[i][kk] > 0 else -1
                    row.append(b[i][j] + sgn * b[i][kk] * b[kk][j])
                else:
                    row.append(b[i][j])
            new.append(tuple(row))
        return ExchangeMatrix(tuple(new))

    def mutate_word(self, w: Word) -> "ExchangeMatrix":
        """Apply mutations left to right."""
        m = self
        for k in w:
            m = m.mutate(k)
        return m

    def is_acyclic(self) -> bool:
        """No directed cycle among the arrows i -> j (b_ij > 0)."""
        n = self.n
        adj = [[j for j in range(n) if self.rows[i][j] > 0] for i in range(n)]
        state = [0] * n  # 0 unseen, 1 on stack, 2 done

        def dfs(i: int) -> bool:
            state[i] = 1
            for j in adj[i]:
                if state[j] == 1:
                    return False
                if state[j] == 0 and not dfs(j):
                    return False
            state[i] = 2
            return True

        return all(state[i] or dfs(i) for i in range(n))

    def is_two_complete(self) -> bool:
        return all(
            abs(self.rows[i][j]) >= 2
            for i in range(self.n)
            for j in range(self.n)
            if i != j
        )

    def cartan(self) -> CartanMatrix:
        """Associated symmetric Cartan matrix (a_ij = -|b_ij|)."""
        return CartanMatrix(
            tuple(
                tuple(2 if i == j else -abs(b) for j, b in enumerate(row))
                for i, row in enumerate(self.rows)
            )
        )

    def to_json(self) -> list[int]:
        return [b for row in self.rows for b in row]


#: Initial seed matrix of the 2-complete rank-3 engine: 1 source, 2 node, 3 sink.
INITIAL_B = ExchangeMatrix(((0, 2, 2), (-2, 0, 2), (-2, -2, 0)))


def _is_source_node_sink(b: ExchangeMatrix) -> bool:
    """True for rank-3 matrices shaped like INITIAL_B (all of b12, b13, b23 > 0)."""
    return b.n == 3 and b[1, 2] > 0 and b[1, 3] > 0 and b[2, 3] > 0


def acyclic_pattern_prefix(w: Word) -> int:
    """Length of the longest prefix of w following 123123... or 321321...

    For the source-node-sink 2-complete rank-3 seed these pattern prefixes are
    exactly the mutation words with acyclic exchange matrix.
    """
    if not w or w[0] == 2:
        return 0
    pattern = (1, 2, 3) if w[0] == 1 else (3, 2, 1)
    r = 0
    for idx, c in enumerate(w):
        if c != pattern[idx % 3]:
            break
        r = idx + 1
    return r


@dataclass(frozen=True)
class Decomposition:
    """Split of a word at its longest acyclic prefix."""

    prefix: Word
    tail: Word
    rho: int

    @property
    def word(self) -> Word:
        return self.prefix + self.tail


def decompose(b0: ExchangeMatrix, w: Word) -> Decomposition:
    """Split w = prefix + tail with prefix the longest acyclic mutation prefix.

    The prefix is found by walking matrices.  For the rank-3 source-node-sink
    2-complete seed the 123.../321... pattern answer is computed as well and
    the two are required to agree.
    """
    check_word(w, b0.n)
    if not w:
        raise ValueError("cannot decompose the empty word")
    rho = 0
    m = b0
    for idx, k in enumerate(w):
        m = m.mutate(k)
        if m.is_acyclic():
            rho = idx + 1
        else:
            break
    if b0 == INITIAL_B or (_is_source_node_sink(b0) and b0.is_two_complete()):
        pat = acyclic_pattern_prefix(w)
        if pat != rho:
            raise RuntimeError(
                f"pattern prefix {pat} != matrix prefix {rho} for {format_word(w)}"
            )
    return Decomposition(prefix=w[:rho], tail=w[rho:], rho=rho)


def delta_case(w: Word, b0: ExchangeMatrix = INITIAL_B) -> tuple[int, int, int, int]:
    """Return (ell, delta, rho, case_label) for a word.

    delta is the farthest position reachable from q = max(1, rho-1) using only
    two distinct letters; the case label 1..7 splits on how far ell exceeds
    delta and rho.  Words of length 1 take delta = 1 by convention.
    """
    if not w:
        raise ValueError("empty word has no case label")
    ell = len(w)
    rho = decompose(b0, w).rho
    if ell == 1:
        delta = 1
    else:
        q = max(1, rho - 1)
        delta = q  # positions are 1-based; extend while only two letters seen
        letters = {w[q - 1]}
        for p in range(q + 1, ell + 1):
            letters = letters | {w[p - 1]}
            if len(letters) > 2:
                break
            delta = p
    if ell == delta == rho:
        case = 1
    elif ell == delta == rho + 1:
        case = 2
    elif ell == delta and ell >= rho + 2:
        case = 3
    elif ell == delta + 1:
        case = 4
    elif ell == delta + 2:
        case = 5
    elif ell == delta + 3:
        case = 6
    else:
        case = 7
    return ell, delta, rho, case
