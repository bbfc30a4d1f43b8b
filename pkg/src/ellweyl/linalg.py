"""Exact linear algebra over the integers and rationals.

Everything in this package computes with integer matrices (as nested tuples,
so values are hashable and safe to share) and falls back to `Fraction` for
kernels, inverses and signatures.  No floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction

Vec = tuple[int, ...]
Mat = tuple[Vec, ...]
FracVec = tuple[Fraction, ...]
FracMat = tuple[FracVec, ...]


def identity(n: int) -> Mat:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def zeros(m: int, n: int) -> Mat:
    return tuple((0,) * n for _ in range(m))


def transpose(a) -> Mat:
    return tuple(zip(*a))


def mat_mul(a: Mat, b: Mat) -> Mat:
    bt = tuple(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def mat_vec(a: Mat, v: Vec) -> Vec:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def vec_add(u: Vec, v: Vec) -> Vec:
    return tuple(x + y for x, y in zip(u, v))


def vec_sub(u: Vec, v: Vec) -> Vec:
    return tuple(x - y for x, y in zip(u, v))


def vec_scale(c: int, v: Vec) -> Vec:
    return tuple(c * x for x in v)


def vec_neg(v: Vec) -> Vec:
    return tuple(-x for x in v)


def mat_pow(a: Mat, e: int) -> Mat:
    if e < 0:
        raise ValueError("negative exponent")
    result = identity(len(a))
    base = a
    while e:
        if e & 1:
            result = mat_mul(result, base)
        base = mat_mul(base, base)
        e >>= 1
    return result


def is_symmetric(a) -> bool:
    n = len(a)
    return all(len(row) == n for row in a) and all(
        a[i][j] == a[j][i] for i in range(n) for j in range(i + 1, n)
    )


def to_fractions(a) -> list[list[Fraction]]:
    return [[Fraction(x) for x in row] for row in a]


def rref(a) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over the rationals; returns (matrix, pivot columns)."""
    m = to_fractions(a)
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def kernel_basis(a) -> list[FracVec]:
    """Basis of the right kernel {v : a v = 0}, itself in reduced row echelon form."""
    rows = len(a)
    cols = len(a[0]) if rows else 0
    if rows == 0:
        return [tuple(Fraction(1 if i == j else 0) for j in range(cols)) for i in range(cols)]
    red, pivots = rref(a)
    free = [c for c in range(cols) if c not in pivots]
    basis: list[FracVec] = []
    for f in free:
        v = [Fraction(0)] * cols
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -red[r][f]
        basis.append(tuple(v))
    if not basis:
        return []
    red2, _ = rref(basis)
    return [tuple(row) for row in red2 if any(x != 0 for x in row)]


def frac_inverse(a) -> FracMat:
    n = len(a)
    aug = [[Fraction(x) for x in row] + [Fraction(1 if i == j else 0) for j in range(n)]
           for i, row in enumerate(a)]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return tuple(tuple(row[n:]) for row in red[:n])


def int_inverse(a: Mat) -> Mat:
    """Inverse of an integer matrix that is invertible over the integers."""
    inv = frac_inverse(a)
    out = []
    for row in inv:
        for x in row:
            if x.denominator != 1:
                raise ValueError("inverse is not integral")
        out.append(tuple(int(x) for x in row))
    return tuple(out)


def signature(a) -> tuple[int, int, int]:
    """Signature (positive, negative, zero) of a symmetric matrix.

    Computed by congruence diagonalization over the rationals: symmetric row
    and column elimination, with the row+column addition trick when every
    remaining diagonal entry vanishes.  Exact by Sylvester's law of inertia.
    """
    if not is_symmetric(a):
        raise ValueError("signature requires a symmetric matrix")
    m = to_fractions(a)
    n = len(m)
    pos = neg = 0
    done: set[int] = set()
    for _ in range(n):
        pivot = next((i for i in range(n) if i not in done and m[i][i] != 0), None)
        if pivot is None:
            # all remaining diagonal entries vanish; borrow from an off-diagonal pair
            pair = next(
                ((i, j) for i in range(n) if i not in done
                 for j in range(n) if j not in done and j != i and m[i][j] != 0),
                None,
            )
            if pair is None:
                break
            i, j = pair
            for c in range(n):
                m[i][c] += m[j][c]
            for r in range(n):
                m[r][i] += m[r][j]
            pivot = i
        d = m[pivot][pivot]
        for k in range(n):
            if k == pivot or k in done or m[k][pivot] == 0:
                continue
            f = m[k][pivot] / d
            for c in range(n):
                m[k][c] -= f * m[pivot][c]
            for r in range(n):
                m[r][k] -= f * m[r][pivot]
        done.add(pivot)
        if d > 0:
            pos += 1
        else:
            neg += 1
    return pos, neg, n - pos - neg
