"""Square matrices over a semiring.

Used for the stack-free degeneration of ω-pushdown automata (plain Büchi
automata over lasso words) and wherever a reflexive-transitive closure is
needed. Dense and immutable; sized for a few dozen rows.
"""

from __future__ import annotations

from collections.abc import Collection, Mapping, Sequence
from dataclasses import dataclass

from omega_pushdown.algebra.semiring import BOOLEAN, Semiring, SemiringValue

Rows = tuple[tuple[SemiringValue, ...], ...]


@dataclass(frozen=True)
class SqMatrix:
    """A square matrix with entries in ``semiring``, stored row-major."""

    semiring: Semiring
    rows: Rows

    def __post_init__(self) -> None:
        n = len(self.rows)
        if n < 1:
            raise ValueError("matrix dimension must be at least 1")
        if any(len(row) != n for row in self.rows):
            raise ValueError("matrix is not square")

    @classmethod
    def from_rows(cls, semiring: Semiring, rows: Sequence[Sequence[object]]) -> SqMatrix:
        """Build a matrix, coercing each entry into ``semiring``."""
        return cls(
            semiring,
            tuple(tuple(semiring.coerce(value) for value in row) for row in rows),  # type: ignore[arg-type]
        )

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, index: tuple[int, int]) -> SemiringValue:
        i, j = index
        return self.rows[i][j]


def zeros(semiring: Semiring, n: int) -> SqMatrix:
    return SqMatrix(semiring, tuple((semiring.zero,) * n for _ in range(n)))


def identity(semiring: Semiring, n: int) -> SqMatrix:
    return SqMatrix(
        semiring,
        tuple(
            tuple(semiring.one if i == j else semiring.zero for j in range(n)) for i in range(n)
        ),
    )


def _check_same_shape(a: SqMatrix, b: SqMatrix) -> None:
    if a.n != b.n:
        raise ValueError(f"dimension mismatch: {a.n} vs {b.n}")
    if a.semiring != b.semiring:
        raise ValueError("matrices are over different semirings")


def mat_add(a: SqMatrix, b: SqMatrix) -> SqMatrix:
    _check_same_shape(a, b)
    return SqMatrix(a.semiring, _add(a.semiring, a.rows, b.rows))


def mat_mul(a: SqMatrix, b: SqMatrix) -> SqMatrix:
    """Semiring matrix product."""
    _check_same_shape(a, b)
    return SqMatrix(a.semiring, _mul(a.semiring, a.rows, b.rows))


def mat_star(a: SqMatrix) -> SqMatrix:
    """Kleene star A* = Σ_{j≥0} A^j by recursive 2×2 block decomposition."""
    return SqMatrix(a.semiring, _star(a.semiring, a.rows))


# Rectangular helpers on raw rows; blocks produced by splitting are not square.


def _add(sr: Semiring, a: Rows, b: Rows) -> Rows:
    return tuple(
        tuple(sr.add(x, y) for x, y in zip(ra, rb, strict=True)) for ra, rb in zip(a, b, strict=True)
    )


def _mul(sr: Semiring, a: Rows, b: Rows) -> Rows:
    if not a:
        return ()
    inner = len(b)
    cols = len(b[0]) if b else 0
    out = []
    for row in a:
        acc = [sr.zero] * cols
        for k in range(inner):
            x = row[k]
            if sr.is_zero(x):
                continue
            bk = b[k]
            for j in range(cols):
                if not sr.is_zero(bk[j]):
                    acc[j] = sr.add(acc[j], sr.mul(x, bk[j]))
        out.append(tuple(acc))
    return tuple(out)


def _split(rows: Rows, k: int) -> tuple[Rows, Rows, Rows, Rows]:
    top, bottom = rows[:k], rows[k:]
    return (
        tuple(r[:k] for r in top),
        tuple(r[k:] for r in top),
        tuple(r[:k] for r in bottom),
        tuple(r[k:] for r in bottom),
    )


def _star(sr: Semiring, rows: Rows) -> Rows:
    n = len(rows)
    if n == 1:
        return ((sr.star(rows[0][0]),),)
    k = n // 2
    a, b, c, d = _split(rows, k)
    a_star = _star(sr, a)
    a_star_b = _mul(sr, a_star, b)
    c_a_star = _mul(sr, c, a_star)
    d_prime = _star(sr, _add(sr, d, _mul(sr, c, a_star_b)))
    top_right = _mul(sr, a_star_b, d_prime)
    bottom_left = _mul(sr, d_prime, c_a_star)
    top_left = _add(sr, a_star, _mul(sr, top_right, c_a_star))
    upper = tuple(x + y for x, y in zip(top_left, top_right, strict=True))
    lower = tuple(x + y for x, y in zip(bottom_left, d_prime, strict=True))
    return upper + lower


def nfa_buchi_lasso_accept(
    a_by_letter: Mapping[str, SqMatrix],
    initial: Sequence[object],
    repeated: Collection[int],
    u: str,
    v: str,
) -> bool:
    """Büchi acceptance of u·v^ω by a finite automaton given as letter matrices.

    States are 1-based in ``repeated``; ``initial`` is positional. The key
    ``""`` holds ε-moves, which never count as consuming a letter. The word is
    accepted iff from an initial node of the state × lasso-position product a
    cycle is reachable that reads a letter and passes a repeated state.
    """
    if not v:
        raise ValueError("lasso period v must be nonempty")
    n = len(initial)
    length = len(u) + len(v)
    stream = u + v

    def node(state: int, pos: int) -> int:
        return state * length + pos

    def next_pos(pos: int) -> int:
        return pos + 1 if pos + 1 < length else len(u)

    size = n * length
    adjacency = [[False] * size for _ in range(size)]
    consuming: list[tuple[int, int]] = []
    for letter, matrix in a_by_letter.items():
        if matrix.n != n:
            raise ValueError(f"letter matrix {letter!r} has dimension {matrix.n}, expected {n}")
        for i in range(n):
            for j in range(n):
                if matrix.semiring.is_zero(matrix[i, j]):
                    continue
                for pos in range(length):
                    if letter == "":
                        adjacency[node(i, pos)][node(j, pos)] = True
                    elif stream[pos] == letter:
                        edge = (node(i, pos), node(j, next_pos(pos)))
                        adjacency[edge[0]][edge[1]] = True
                        consuming.append(edge)

    closure = mat_star(SqMatrix.from_rows(BOOLEAN, adjacency))
    starts = [node(i, 0) for i in range(n) if initial[i]]
    repeated_nodes = [node(s - 1, pos) for s in repeated if 1 <= s <= n for pos in range(length)]
    for x, y in consuming:
        if not any(closure[s, x] for s in starts):
            continue
        if not closure[y, x]:
            continue
        if any(closure[x, r] and closure[r, x] for r in repeated_nodes):
            return True
    return False
