"""Groebner bases and ideal arithmetic.

The engine is Buchberger's algorithm with Gebauer-Moeller pair elimination
and the normal selection strategy (lowest lcm degree first, ties broken by
pair index), producing the reduced, monic, canonical basis.  Normal forms
run on packed monomial keys with a max-heap of pending monomials, so each
reduction step is integer arithmetic plus one dictionary update per tail
term.

Saturation uses the extra-variable trick (adjoin t, add t*f - 1, eliminate
t); ideal intersection eliminates t from t*I + (1-t)*K.  Saturation by an
ideal J intersects the single-generator saturations, which equals I : J^oo
for any generating set of J.  Chains of saturations by several ideals are
evaluated sequentially; this is exact because I : (J1*J2)^oo =
(I : J1^oo) : J2^oo and a product of ideals has the same radical as their
intersection.
"""

from bisect import bisect_right, insort
from heapq import heapify, heappop, heappush

from .errors import ExponentOverflowError, MathError, RingMismatchError
from .multipoly import (
    FIELD_BITS,
    FIELD_MASK,
    MAX_EXPONENT,
    MonomialOrder,
    Polynomial,
    PolynomialRing,
)

# 4 bits per variable flagging exponent >= 1, 2, 4, 8; a divisor's mask is
# always a submask of the multiple's, giving a cheap reducer prefilter.
_DIVMASK_TBL = tuple(
    (1 if e >= 1 else 0)
    | (2 if e >= 2 else 0)
    | (4 if e >= 4 else 0)
    | (8 if e >= 8 else 0)
    for e in range(16)
)


def _divmask(ring, key):
    mask = 0
    shift = 0
    nv = ring.nvars
    for v in range(nv):
        e = (key >> shift) & FIELD_MASK
        mask |= _DIVMASK_TBL[e if e < 16 else 15] << (4 * v)
        shift += FIELD_BITS
    return mask


class _Gen:
    """A monic basis element prepared for fast reduction."""

    __slots__ = ("terms", "lt", "ltp", "tail", "slack", "mask", "active")

    def __init__(self, ring, terms):
        self.terms = terms
        self.lt = terms[0][0]
        self.ltp = self.lt & ring.pmask
        self.tail = terms[1:]
        lead_deg = ring.mono_degree(self.lt)
        tail_deg = max(
            (ring.mono_degree(k) for k, _ in self.tail), default=lead_deg
        )
        self.slack = tail_deg - lead_deg
        self.mask = _divmask(ring, self.lt)
        self.active = True


class _ReducerIndex:
    """Reducers sorted by leading monomial with divisibility masks.

    A divisor never exceeds its multiple in the order, so only the prefix
    of leads at most the target monomial needs scanning, and the mask test
    rejects most non-divisors with one small-int operation.
    """

    __slots__ = ("lts", "gens")

    def __init__(self, gens=()):
        self.lts = [g.lt for g in gens]
        self.gens = list(gens)

    def insert(self, g):
        pos = bisect_right(self.lts, g.lt)
        self.lts.insert(pos, g.lt)
        self.gens.insert(pos, g)

    def remove(self, g):
        pos = self.gens.index(g)
        del self.gens[pos]
        del self.lts[pos]

    def find(self, ring, k, kp, mask):
        himask = ring._himask
        kph = kp | himask
        for g in self.gens[: bisect_right(self.lts, k)]:
            if g.mask & ~mask:
                continue
            if (kph - g.ltp) & himask == himask:
                return g
        return None


def _monic_terms(field, terms):
    if not terms:
        return terms
    lc = terms[0][1]
    if lc == field.one:
        return terms
    if field.tag == "q":
        inv = field.inv(lc)
        return tuple((k, c * inv) for k, c in terms)
    p = field.characteristic
    inv = pow(lc, p - 2, p)
    return tuple((k, c * inv % p) for k, c in terms)


def _nf_terms(ring, fterms, reducers, p, pos_cache=None, neg_cache=None):
    """Full normal form of a term tuple against prepared reducers.

    Reducers may be a _ReducerIndex (scanned by ascending lead) or a plain
    list (scanned in list order); they must be monic.  The result is a
    descending term tuple with canonical coefficients.

    pos_cache maps exponent parts to a known divisor among the reducers and
    stays valid as the basis grows; neg_cache records irreducible exponent
    parts and must be cleared whenever a reducer is added.
    """
    if not fterms:
        return ()
    pmask = ring.pmask
    himask = ring._himask
    indexed = isinstance(reducers, _ReducerIndex)
    work = {}
    heap = []
    for k, c in fterms:
        work[k] = c
        heap.append(-k)
    heapify(heap)
    out = []
    mono_degree = ring.mono_degree
    while heap:
        k = -heappop(heap)
        c = work.pop(k, None)
        if c is None:
            continue
        if p:
            c %= p
        if not c:
            continue
        kp = k & pmask
        if indexed:
            if pos_cache is None:
                red = reducers.find(ring, k, kp, _divmask(ring, kp))
            else:
                red = pos_cache.get(kp)
                if red is None and kp not in neg_cache:
                    red = reducers.find(ring, k, kp, _divmask(ring, kp))
                    if red is not None:
                        pos_cache[kp] = red
                    else:
                        neg_cache.add(kp)
        else:
            red = None
            kph = kp | himask
            for g in reducers:
                if (kph - g.ltp) & himask == himask:
                    red = g
                    break
        if red is None:
            out.append((k, c))
            continue
        if red.slack > 0 and mono_degree(k) + red.slack > MAX_EXPONENT:
            raise ExponentOverflowError("reduction exceeded the degree cap")
        sh = k - red.lt
        if p:
            for tk, tc in red.tail:
                nk = tk + sh
                v = work.get(nk)
                if v is None:
                    work[nk] = -c * tc
                    heappush(heap, -nk)
                else:
                    work[nk] = v - c * tc
        else:
            for tk, tc in red.tail:
                nk = tk + sh
                v = work.get(nk)
                if v is None:
                    work[nk] = -c * tc
                    heappush(heap, -nk)
                else:
                    work[nk] = v - c * tc
    return tuple(out)


def _spoly_terms(ring, a, b, lcm_key, p):
    """S-polynomial of two monic prepared elements, as a term dict tuple."""
    sa = lcm_key - a.lt
    sb = lcm_key - b.lt
    acc = {}
    for k, c in a.terms:
        acc[k + sa] = c
    for k, c in b.terms:
        kk = k + sb
        v = acc.get(kk)
        acc[kk] = -c if v is None else v - c
    if p:
        terms = [(k, c % p) for k, c in acc.items() if c % p]
    else:
        terms = [(k, c) for k, c in acc.items() if c]
    terms.sort(key=lambda t: t[0], reverse=True)
    return terms


def buchberger(gens, gb_prefix=0):
    """Reduced Groebner basis of the ideal generated by gens.

    Pair handling is Gebauer-Moeller: new pairs are grouped by lcm, only a
    minimal lcm class survives, classes with coprime leads are dropped, and
    older pairs whose lcm is strictly refined by the new lead are pruned.
    Selection is the normal strategy: lowest lcm degree first, ties broken
    by pair index.

    The first gb_prefix generators are trusted to already form a Groebner
    basis in the ambient order; pairs among them are skipped.  Output is
    monic, fully interreduced and sorted by ascending leading monomial, so
    equal ideals give identical bases.
    """
    gens = [f for f in gens if f.terms]
    if not gens:
        return []
    ring = gens[0].ring
    for f in gens:
        ring.check_same(f.ring)
    field = ring.field
    p = field.characteristic if field.tag != "q" else 0
    divides = ring.mono_divides
    p_divides = ring.p_divides
    p_lcm = ring.p_lcm
    key_from_p = ring.key_from_p
    pmask = ring.pmask
    mono_degree = ring.mono_degree
    one_basis = [ring.one()]
    G = []
    index = _ReducerIndex()
    alive = {}
    pair_heap = []
    pos_cache = {}
    neg_cache = set()

    def append(terms):
        e = _Gen(ring, terms)
        G.append(e)
        for g in [g for g in index.gens if divides(e.lt, g.lt)]:
            g.active = False
            index.remove(g)
        index.insert(e)
        neg_cache.clear()
        if len(pos_cache) > 1 << 21:
            pos_cache.clear()
        return len(G) - 1

    def update_pairs(m):
        fp = G[m].ltp
        for (i, j), l in list(alive.items()):
            lp = l & pmask
            if p_divides(fp, lp):
                if (
                    p_lcm(G[i].ltp, fp) != lp
                    and p_lcm(G[j].ltp, fp) != lp
                ):
                    del alive[(i, j)]
        classes = {}
        for i in range(m):
            classes.setdefault(p_lcm(G[i].ltp, fp), []).append(i)
        min_lcms = []
        for lp in sorted(classes):
            if any(p_divides(prev, lp) for prev in min_lcms):
                continue
            min_lcms.append(lp)
            members = classes[lp]
            if any(lp == G[i].ltp + fp for i in members):
                continue  # coprime leading terms: S-polynomial reduces to zero
            i = members[0]
            l = key_from_p(lp)
            alive[(i, m)] = l
            heappush(pair_heap, (mono_degree(l), i, m, l))

    for idx, f in enumerate(gens):
        terms = _monic_terms(field, f.terms)
        if idx < gb_prefix:
            append(terms)
            continue
        terms = _nf_terms(ring, terms, index, p, pos_cache, neg_cache)
        if not terms:
            continue
        terms = _monic_terms(field, terms)
        if terms[0][0] == ring.one_key:
            return one_basis
        update_pairs(append(terms))

    while alive:
        while True:
            _, i, j, l = heappop(pair_heap)
            if alive.get((i, j)) == l:
                del alive[(i, j)]
                break
        st = _spoly_terms(ring, G[i], G[j], l, p)
        ht = _nf_terms(ring, st, index, p, pos_cache, neg_cache)
        if not ht:
            continue
        ht = _monic_terms(field, ht)
        if ht[0][0] == ring.one_key:
            return one_basis
        update_pairs(append(ht))

    # interreduce the minimal basis (index holds exactly the minimal set)
    for g in sorted(index.gens, key=lambda g: g.lt):
        index.remove(g)
        terms = _monic_terms(field, _nf_terms(ring, g.terms, index, p))
        index.insert(_Gen(ring, terms))
    return [Polynomial(ring, g.terms) for g in index.gens]


def normal_form(f, basis):
    """Remainder of f on division by basis (scanned in list order)."""
    if not basis:
        return f
    ring = f.ring
    field = ring.field
    for g in basis:
        ring.check_same(g.ring)
    p = field.characteristic if field.tag != "q" else 0
    reducers = [_Gen(ring, _monic_terms(field, g.terms)) for g in basis if g.terms]
    return Polynomial(ring, _nf_terms(ring, f.terms, reducers, p))


def spolynomial(f, g):
    """S-polynomial of two nonzero polynomials."""
    if not f.terms or not g.terms:
        raise MathError("s-polynomial of the zero polynomial")
    f.ring.check_same(g.ring)
    ring = f.ring
    field = ring.field
    p = field.characteristic if field.tag != "q" else 0
    a = _Gen(ring, _monic_terms(field, f.terms))
    b = _Gen(ring, _monic_terms(field, g.terms))
    l = ring.mono_lcm(a.lt, b.lt)
    return Polynomial(ring, tuple(_spoly_terms(ring, a, b, l, p)))


def is_groebner_basis(basis):
    """Check Buchberger's criterion: every S-polynomial reduces to zero."""
    basis = [g for g in basis if g.terms]
    if len(basis) <= 1:
        return True
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            s = spolynomial(basis[i], basis[j])
            if normal_form(s, basis).terms:
                return False
    return True


def _min_hitting_set(supports, nvars):
    """Minimum number of variables meeting every support set."""
    minimal = []
    for s in sorted(supports, key=len):
        if not any(m <= s for m in minimal):
            minimal.append(s)
    best = [nvars + 1]

    def search(hit, count, rest):
        rest = [s for s in rest if not (s & hit)]
        if not rest:
            if count < best[0]:
                best[0] = count
            return
        if count + 1 >= best[0]:
            return
        pivot = min(rest, key=len)
        for v in sorted(pivot):
            search(hit | {v}, count + 1, rest)

    search(frozenset(), 0, minimal)
    return best[0]


class Ideal:
    """An ideal with a cached reduced Groebner basis."""

    def __init__(self, ring, gens, _gb=None):
        self.ring = ring
        seen = set()
        clean = []
        for f in gens:
            ring.check_same(f.ring)
            if not f.terms or f.terms in seen:
                continue
            seen.add(f.terms)
            clean.append(f)
        self.gens = tuple(clean)
        self._gb = _gb

    def groebner_basis(self):
        if self._gb is None:
            self._gb = tuple(buchberger(list(self.gens)))
        return self._gb

    def normal_form(self, f):
        return normal_form(f, list(self.groebner_basis()))

    def contains(self, f):
        return not self.normal_form(f).terms

    def __contains__(self, f):
        return self.contains(f)

    def is_zero(self):
        return not self.groebner_basis()

    def is_unit(self):
        gb = self.groebner_basis()
        return len(gb) == 1 and gb[0].terms[0][0] == self.ring.one_key

    def equals(self, other):
        self.ring.check_same(other.ring)
        return self.groebner_basis() == other.groebner_basis()

    def plus(self, other):
        self.ring.check_same(other.ring)
        return Ideal(self.ring, self.gens + other.gens)

    def krull_dimension(self):
        """Krull dimension of ring/I, combinatorially from leading terms.

        The dimension is the largest size of a variable subset S such that
        no leading monomial of the reduced basis is supported inside S;
        equivalently nvars minus a minimum hitting set of the supports.
        Returns -1 for the unit ideal.
        """
        gb = self.groebner_basis()
        if not gb:
            return self.ring.nvars
        if self.is_unit():
            return -1
        ring = self.ring
        supports = []
        for g in gb:
            exps = ring.decode_key(g.terms[0][0])
            supports.append(frozenset(v for v, e in enumerate(exps) if e))
        return ring.nvars - _min_hitting_set(supports, ring.nvars)

    # -- variable elimination and derived operations ----------------------

    def eliminate(self, blocks):
        """Intersect with the subring omitting the named layout blocks."""
        if isinstance(blocks, str):
            blocks = [blocks]
        blocks = list(blocks)
        ring = self.ring
        elim_ring = PolynomialRing(
            ring.field,
            ring.layout,
            MonomialOrder.elimination(ring.layout, blocks),
        )
        lifted = [g.map_to(elim_ring) for g in self.gens]
        gb = buchberger(lifted)
        aux = set()
        for b in blocks:
            aux.update(ring.layout.block_range(b))
        auxmask = 0
        for v in aux:
            auxmask |= 0xFFFF << (16 * v)
        target_layout = ring.layout
        for b in blocks:
            target_layout = target_layout.without_block(b)
        target = PolynomialRing(ring.field, target_layout)
        kept = [
            g.map_to(target)
            for g in gb
            if g.terms[0][0] & auxmask == 0
        ]
        return Ideal(target, kept, _gb=tuple(kept))

    def _with_aux(self):
        """Elimination ring with a fresh auxiliary variable, and that variable."""
        layout = self.ring.layout
        used = set(dict(layout.blocks)) | set(layout.var_names)
        name = next(
            n
            for n in ("t", "u", "w", "aux0", "aux1", "aux2")
            if n not in used and "%s_0" % n not in layout.var_names
        )
        lay_t = layout.with_front_block(name, 1)
        ring_t = PolynomialRing(
            self.ring.field, lay_t, MonomialOrder.elimination(lay_t, [name])
        )
        return ring_t, ring_t.variable("%s_0" % name), name

    def saturate(self, f):
        """I : f^oo via the extra-variable trick.

        A monomial f is split into its support variables and saturated one
        variable at a time: I : (ab)^oo = (I : a^oo) : b^oo, and powers do
        not change the result.  This keeps the auxiliary variable's degree
        from ballooning.
        """
        if not f.terms:
            raise MathError("saturation by the zero polynomial")
        self.ring.check_same(f.ring)
        if len(f.terms) == 1:
            exps = self.ring.decode_key(f.terms[0][0])
            support = [v for v, e in enumerate(exps) if e]
            if not support:
                return Ideal(self.ring, self.gens, _gb=self.groebner_basis())
            result = self
            for v in support:
                result = result._saturate_poly(result.ring.gens()[v])
            return result
        return self._saturate_poly(f)

    def _saturate_poly(self, f):
        ring_t, t, name = self._with_aux()
        base = list(self.groebner_basis())
        lifted = [g.map_to(ring_t) for g in base]
        lifted.append(t * f.map_to(ring_t) - ring_t.one())
        gb = buchberger(lifted, gb_prefix=len(base))
        return _drop_aux(self.ring, ring_t, gb, name)

    def intersect(self, other):
        """I cap K via elimination from t*I + (1-t)*K."""
        self.ring.check_same(other.ring)
        ring_t, t, name = self._with_aux()
        one = ring_t.one()
        gens = [t * g.map_to(ring_t) for g in self.groebner_basis()]
        gens += [(one - t) * h.map_to(ring_t) for h in other.groebner_basis()]
        gb = buchberger(gens)
        return _drop_aux(self.ring, ring_t, gb, name)

    def saturate_by_ideal(self, other):
        """I : J^oo as the intersection of single-generator saturations.

        Saturation only sees the radical of J, so when J's basis is all
        monomials the basis is replaced by its squarefree supports with
        redundant multiples dropped (the exact radical of a monomial
        ideal), which collapses most of the intersection work.
        """
        self.ring.check_same(other.ring)
        parts_gens = list(other.groebner_basis())
        if not parts_gens:
            raise MathError("saturation by the zero ideal")
        if all(len(g.terms) == 1 for g in parts_gens):
            ring = self.ring
            radical = []
            for g in parts_gens:
                exps = ring.decode_key(g.terms[0][0])
                radical.append(tuple(min(e, 1) for e in exps))
            radical = sorted(set(radical), key=lambda e: (sum(e), e))
            kept = []
            for e in radical:
                if not any(
                    all(pe <= ee for pe, ee in zip(prev, e)) for prev in kept
                ):
                    kept.append(e)
            parts_gens = [ring.monomial(e, ring.field.one) for e in kept]
        parts = []
        for f in parts_gens:
            s = self.saturate(f)
            if s.is_unit():
                continue
            if any(s.equals(prev) for prev in parts):
                continue
            parts.append(s)
        if not parts:
            return Ideal(self.ring, [self.ring.one()])
        result = parts[0]
        for s in parts[1:]:
            result = result.intersect(s)
        return result

    def __repr__(self):
        return "Ideal(%d generators over %s)" % (len(self.gens), self.ring.field.tag)


def _drop_aux(target, ring_t, gb, name):
    """Keep the aux-free part of an elimination basis, mapped down."""
    aux = ring_t.layout.block_range(name)
    auxmask = 0
    for v in aux:
        auxmask |= 0xFFFF << (16 * v)
    kept = [
        g.map_to(target) for g in gb if g.terms[0][0] & auxmask == 0
    ]
    return Ideal(target, kept, _gb=tuple(kept))
