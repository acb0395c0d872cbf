"""Exact linear algebra over the coefficient fields and polynomial rings.

Scalar matrices support rank, determinant and right kernel bases.  Rational
matrices are scaled row-wise to integers and eliminated fraction-free
(Bareiss), so no Fraction arithmetic happens in the elimination loop; prime
field matrices use plain modular elimination.

Polynomial matrices provide exact minors.  All k x k minors of a submatrix
selection are expanded through one dynamic program per row subset: partial
determinants are indexed by column subsets, so every Laplace subproblem is
computed once and shared across overlapping minors.
"""

from collections import namedtuple
from fractions import Fraction
from math import comb, gcd
from random import Random

from .errors import LayoutError, RingMismatchError
from .fields import QQ


class ScalarMatrix:
    """Dense matrix with entries in a coefficient field."""

    def __init__(self, field, rows):
        self.field = field
        self.rows = [list(r) for r in rows]
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        for r in self.rows:
            if len(r) != self.ncols:
                raise LayoutError("ragged matrix rows")

    @classmethod
    def from_int_rows(cls, field, rows):
        return cls(field, [[field.from_int(a) for a in r] for r in rows])

    def transpose(self):
        return ScalarMatrix(
            self.field, [list(col) for col in zip(*self.rows)]
        ) if self.rows else ScalarMatrix(self.field, [])

    def stack(self, other):
        if other.ncols != self.ncols:
            raise LayoutError("column count mismatch in stack")
        return ScalarMatrix(self.field, self.rows + other.rows)

    def rank(self):
        if not self.rows or self.ncols == 0:
            return 0
        if self.field.tag == "q":
            return _bareiss_rank(_integer_rows(self.rows))
        return _mod_rank([list(r) for r in self.rows], self.field.characteristic)

    def det(self):
        if self.nrows != self.ncols:
            raise LayoutError("determinant of a nonsquare matrix")
        if self.nrows == 0:
            return self.field.one
        if self.field.tag == "q":
            rows, scale = _integer_rows_scaled(self.rows)
            d = _bareiss_det(rows)
            return Fraction(d, scale)
        return self.field.from_int(
            _mod_det([list(r) for r in self.rows], self.field.characteristic)
        )

    def kernel_basis(self):
        """Basis of the right null space, echelon-normalized."""
        field = self.field
        rows = [list(r) for r in self.rows]
        ncols = self.ncols
        pivots = []
        prow = 0
        for col in range(ncols):
            pivot = None
            for i in range(prow, len(rows)):
                if not field.is_zero(rows[i][col]):
                    pivot = i
                    break
            if pivot is None:
                continue
            rows[prow], rows[pivot] = rows[pivot], rows[prow]
            inv = field.inv(rows[prow][col])
            rows[prow] = [field.mul(inv, a) for a in rows[prow]]
            for i in range(len(rows)):
                if i != prow and not field.is_zero(rows[i][col]):
                    c = rows[i][col]
                    rows[i] = [
                        field.sub(a, field.mul(c, b))
                        for a, b in zip(rows[i], rows[prow])
                    ]
            pivots.append(col)
            prow += 1
            if prow == len(rows):
                break
        free = [c for c in range(ncols) if c not in pivots]
        basis = []
        for f in free:
            vec = [field.zero] * ncols
            vec[f] = field.one
            for r, pc in enumerate(pivots):
                vec[pc] = field.neg(rows[r][f])
            basis.append(vec)
        return basis

    def __repr__(self):
        return "ScalarMatrix(%dx%d over %s)" % (self.nrows, self.ncols, self.field.tag)


def _integer_rows(rows):
    """Clear denominators row by row (rank preserving)."""
    out = []
    for r in rows:
        den = 1
        for a in r:
            den = den * a.denominator // gcd(den, a.denominator)
        out.append([int(a * den) for a in r])
    return out


def _integer_rows_scaled(rows):
    out = []
    scale = 1
    for r in rows:
        den = 1
        for a in r:
            den = den * a.denominator // gcd(den, a.denominator)
        scale *= den
        out.append([int(a * den) for a in r])
    return out, scale


def _bareiss_rank(rows):
    """Rank via fraction-free elimination with first-nonzero pivoting."""
    m = [r[:] for r in rows]
    nrows = len(m)
    ncols = len(m[0])
    prev = 1
    prow = 0
    for col in range(ncols):
        pivot = None
        for i in range(prow, nrows):
            if m[i][col]:
                pivot = i
                break
        if pivot is None:
            continue
        if pivot != prow:
            m[prow], m[pivot] = m[pivot], m[prow]
        pv = m[prow][col]
        for i in range(prow + 1, nrows):
            row = m[i]
            f = row[col]
            top = m[prow]
            for j in range(col + 1, ncols):
                row[j] = (row[j] * pv - f * top[j]) // prev
            row[col] = 0
        prev = pv
        prow += 1
        if prow == nrows:
            break
    return prow


def _bareiss_det(rows):
    m = [r[:] for r in rows]
    n = len(m)
    prev = 1
    sign = 1
    for col in range(n):
        pivot = None
        for i in range(col, n):
            if m[i][col]:
                pivot = i
                break
        if pivot is None:
            return 0
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            sign = -sign
        pv = m[col][col]
        for i in range(col + 1, n):
            row = m[i]
            f = row[col]
            top = m[col]
            for j in range(col + 1, n):
                row[j] = (row[j] * pv - f * top[j]) // prev
            row[col] = 0
        prev = pv
    return sign * m[n - 1][n - 1]


def _mod_rank(rows, p):
    nrows = len(rows)
    ncols = len(rows[0])
    for r in rows:
        for j in range(ncols):
            r[j] %= p
    prow = 0
    for col in range(ncols):
        pivot = None
        for i in range(prow, nrows):
            if rows[i][col]:
                pivot = i
                break
        if pivot is None:
            continue
        rows[prow], rows[pivot] = rows[pivot], rows[prow]
        inv = pow(rows[prow][col], p - 2, p)
        top = [a * inv % p for a in rows[prow]]
        rows[prow] = top
        for i in range(prow + 1, nrows):
            f = rows[i][col]
            if f:
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], top)]
        prow += 1
        if prow == nrows:
            break
    return prow


def _mod_det(rows, p):
    n = len(rows)
    for r in rows:
        for j in range(n):
            r[j] %= p
    det = 1
    for col in range(n):
        pivot = None
        for i in range(col, n):
            if rows[i][col]:
                pivot = i
                break
        if pivot is None:
            return 0
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            det = -det % p
        pv = rows[col][col]
        det = det * pv % p
        inv = pow(pv, p - 2, p)
        top = [a * inv % p for a in rows[col]]
        rows[col] = top
        for i in range(col + 1, n):
            f = rows[i][col]
            if f:
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], top)]
    return det


MinorsResult = namedtuple("MinorsResult", ["minors", "capped"])


class PolyMatrix:
    """Matrix with polynomial entries from a common ring."""

    def __init__(self, ring, rows):
        self.ring = ring
        self.rows = [list(r) for r in rows]
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        for r in self.rows:
            if len(r) != self.ncols:
                raise LayoutError("ragged matrix rows")
            for f in r:
                if f.ring is not ring:
                    ring.check_same(f.ring)

    def transpose(self):
        return PolyMatrix(self.ring, [list(col) for col in zip(*self.rows)])

    def stack(self, other):
        if other.ncols != self.ncols:
            raise LayoutError("column count mismatch in stack")
        self.ring.check_same(other.ring)
        return PolyMatrix(self.ring, self.rows + other.rows)

    def evaluate(self, values):
        """Entrywise evaluation into a scalar matrix."""
        return ScalarMatrix(
            self.ring.field,
            [[f.evaluate(values) for f in r] for r in self.rows],
        )

    def map_to(self, target, var_map=None, coeff_map=None):
        return PolyMatrix(
            target,
            [
                [f.map_to(target, var_map, coeff_map) for f in r]
                for r in self.rows
            ],
        )

    def minor(self, row_idx, col_idx):
        """Determinant of the submatrix on the given index tuples."""
        if len(row_idx) != len(col_idx):
            raise LayoutError("minor needs a square selection")
        terms = _det_terms(self.ring, self.rows, tuple(row_idx), tuple(col_idx))
        return _poly_from_acc(self.ring, terms)

    def det(self):
        if self.nrows != self.ncols:
            raise LayoutError("determinant of a nonsquare matrix")
        return self.minor(range(self.nrows), range(self.ncols))

    def k_minors(self, k, cap=None, seed=0):
        """All k x k minors in lexicographic (row set, column set) order.

        When the number of minors exceeds cap, a seeded sample of exactly
        cap index pairs is computed instead and the result is flagged.
        """
        if not 1 <= k <= min(self.nrows, self.ncols):
            raise LayoutError(
                "minor size %d out of range for %dx%d" % (k, self.nrows, self.ncols)
            )
        n_row = comb(self.nrows, k)
        n_col = comb(self.ncols, k)
        total = n_row * n_col
        capped = cap is not None and total > cap
        if capped:
            picks = sorted(Random(seed).sample(range(total), cap))
            pairs = [
                (
                    _comb_unrank(self.nrows, k, t // n_col),
                    _comb_unrank(self.ncols, k, t % n_col),
                )
                for t in picks
            ]
            by_rows = {}
            for rs, cs in pairs:
                by_rows.setdefault(rs, []).append(cs)
        else:
            by_rows = {
                rs: None for rs in _comb_iter(self.nrows, k)
            }
        minors = []
        for rs, col_sets in by_rows.items():
            dets = _row_subset_minors(self.ring, self.rows, rs, k, col_sets)
            minors.extend(dets)
        return MinorsResult(minors, capped)


def _comb_iter(n, k):
    from itertools import combinations

    return combinations(range(n), k)


def _comb_unrank(n, k, rank):
    """Lexicographic unranking of k-subsets of range(n)."""
    out = []
    x = 0
    for slot in range(k, 0, -1):
        while True:
            rest = comb(n - x - 1, slot - 1)
            if rank < rest:
                break
            rank -= rest
            x += 1
        out.append(x)
        x += 1
    return tuple(out)


def _axpy(ring, acc, entry_terms, sub_terms, sign):
    """acc += sign * entry * sub, all in packed-key dict form."""
    if not entry_terms or not sub_terms:
        return
    one = ring.one_key
    field = ring.field
    get = acc.get
    if field.tag == "q":
        for ke, ce in entry_terms:
            if sign < 0:
                ce = -ce
            sh = ke - one
            for ks, cs in sub_terms.items():
                k = ks + sh
                acc[k] = get(k, 0) + ce * cs
    else:
        p = field.characteristic
        for ke, ce in entry_terms:
            if sign < 0:
                ce = -ce % p
            sh = ke - one
            for ks, cs in sub_terms.items():
                k = ks + sh
                v = get(k)
                acc[k] = ce * cs if v is None else v + ce * cs
    return


def _poly_from_acc(ring, acc):
    field = ring.field
    if field.tag == "q":
        terms = [(k, c) for k, c in acc.items() if c]
    else:
        p = field.characteristic
        terms = []
        for k, c in acc.items():
            c %= p
            if c:
                terms.append((k, c))
    terms.sort(key=lambda t: t[0], reverse=True)
    from .multipoly import Polynomial

    return Polynomial(ring, tuple(terms))


def _det_terms(ring, grid, row_idx, col_idx):
    """Determinant of one square selection by subset dynamic programming."""
    k = len(row_idx)
    states = {0: {ring.one_key: ring.field.one}}
    for j in range(k):
        entry_row = grid[row_idx[j]]
        nxt = {}
        for mask, sub in states.items():
            for ci, c in enumerate(col_idx):
                bit = 1 << ci
                if mask & bit:
                    continue
                before = bin(mask & (bit - 1)).count("1")
                sign = -1 if (j + before) % 2 else 1
                entry = entry_row[c].terms
                if not entry:
                    continue
                tgt = nxt.get(mask | bit)
                if tgt is None:
                    tgt = nxt[mask | bit] = {}
                _axpy(ring, tgt, entry, sub, sign)
            sub.clear()
        states = nxt
    final = states.get((1 << k) - 1, {})
    return final


def _row_subset_minors(ring, grid, row_idx, k, col_sets):
    """Minors of the rows row_idx: all column k-subsets, or just col_sets.

    Returns determinants ordered by ascending column subset.
    """
    from itertools import combinations

    ncols = len(grid[0])
    if col_sets is not None:
        return [
            _poly_from_acc(ring, _det_terms(ring, grid, row_idx, cs))
            for cs in sorted(col_sets)
        ]
    states = {0: {ring.one_key: ring.field.one}}
    for j in range(k):
        entry_row = grid[row_idx[j]]
        nxt = {}
        for mask, sub in states.items():
            for c in range(ncols):
                bit = 1 << c
                if mask & bit:
                    continue
                before = bin(mask & (bit - 1)).count("1")
                sign = -1 if (j + before) % 2 else 1
                entry = entry_row[c].terms
                if not entry:
                    continue
                tgt = nxt.get(mask | bit)
                if tgt is None:
                    tgt = nxt[mask | bit] = {}
                _axpy(ring, tgt, entry, sub, sign)
            sub.clear()
        states = nxt
    out = []
    for cs in combinations(range(ncols), k):
        mask = 0
        for c in cs:
            mask |= 1 << c
        acc = states.get(mask, {})
        out.append(_poly_from_acc(ring, acc))
    return out
