"""Sparse multivariate polynomials over block-structured variable sets.

Variables are organized in named blocks (one block per point/factor pair in
the Terracini rings, one block per factor in source rings).  A monomial is
packed into a single Python int whose bit layout makes the active monomial
order a plain integer comparison:

* low bits hold the exponent vector, 16 bits per variable, which makes
  divisibility testing a borrow-free masked subtraction and monomial
  multiplication a single addition;
* high bits hold, per order group, the group's total degree followed by
  complemented exponents, so comparing packed keys compares degrees first
  and breaks ties reverse-lexicographically.

Both supported orders (degrevlex, block elimination with degrevlex inside
each group) fit this scheme.  Exponents are capped at 32767 and every
polynomial product checks the cap, so packed fields never carry.
"""

import re

from .errors import (
    ExponentOverflowError,
    FieldMismatchError,
    InputError,
    LayoutError,
    RingMismatchError,
)
from .fields import QQ

FIELD_BITS = 16
FIELD_MASK = 0xFFFF
MAX_EXPONENT = 0x7FFF


class VariableLayout:
    """An ordered list of (block name, size) with flat variable indexing."""

    def __init__(self, blocks, var_names=None):
        blocks = tuple((str(name), int(size)) for name, size in blocks)
        if not blocks:
            raise LayoutError("layout needs at least one block")
        names = set()
        for name, size in blocks:
            if size <= 0:
                raise LayoutError("block %r has size %d" % (name, size))
            if name in names:
                raise LayoutError("duplicate block %r" % name)
            names.add(name)
        self.blocks = blocks
        self.nvars = sum(size for _, size in blocks)
        if var_names is None:
            var_names = tuple(
                "%s_%d" % (name, j) for name, size in blocks for j in range(size)
            )
        else:
            var_names = tuple(var_names)
            if len(var_names) != self.nvars:
                raise LayoutError("expected %d variable names" % self.nvars)
        if len(set(var_names)) != len(var_names):
            raise LayoutError("duplicate variable names")
        self.var_names = var_names
        self.index_of = {name: i for i, name in enumerate(var_names)}
        starts = {}
        block_of = []
        pos = 0
        for bi, (name, size) in enumerate(blocks):
            starts[name] = pos
            block_of.extend([bi] * size)
            pos += size
        self.block_start = starts
        self.block_of = tuple(block_of)

    @classmethod
    def from_vars(cls, names):
        """One size-1 block per variable, named verbatim."""
        return cls([(n, 1) for n in names], var_names=tuple(names))

    def flat_index(self, block, offset):
        try:
            start = self.block_start[block]
        except KeyError:
            raise LayoutError("unknown block %r" % block) from None
        size = dict(self.blocks)[block]
        if not 0 <= offset < size:
            raise LayoutError("offset %d out of range for block %r" % (offset, block))
        return start + offset

    def block_range(self, block):
        try:
            start = self.block_start[block]
        except KeyError:
            raise LayoutError("unknown block %r" % block) from None
        size = dict(self.blocks)[block]
        return range(start, start + size)

    def with_front_block(self, name, size):
        """New layout with an auxiliary block prepended."""
        if name in dict(self.blocks):
            raise LayoutError("block %r already present" % name)
        blocks = ((name, size),) + self.blocks
        names = tuple("%s_%d" % (name, j) for j in range(size)) + self.var_names
        return VariableLayout(blocks, var_names=names)

    def without_block(self, name):
        if name not in dict(self.blocks):
            raise LayoutError("unknown block %r" % name)
        keep = [(b, s) for b, s in self.blocks if b != name]
        drop = set(self.block_range(name))
        names = tuple(n for i, n in enumerate(self.var_names) if i not in drop)
        return VariableLayout(keep, var_names=names)

    def __eq__(self, other):
        return (
            isinstance(other, VariableLayout)
            and self.blocks == other.blocks
            and self.var_names == other.var_names
        )

    def __hash__(self):
        return hash((self.blocks, self.var_names))

    def __repr__(self):
        return "VariableLayout(%s)" % (
            ", ".join("%s:%d" % b for b in self.blocks)
        )


class MonomialOrder:
    """A term order given by ordered groups of variables.

    Groups are compared left to right; inside a group the comparison is
    graded reverse lexicographic.  One group covering all variables is
    plain degrevlex; an elimination order puts the auxiliary block(s) in
    a leading group of their own.
    """

    def __init__(self, kind, groups):
        self.kind = kind
        self.groups = tuple(tuple(g) for g in groups)

    @classmethod
    def degrevlex(cls, layout):
        return cls("degrevlex", [range(layout.nvars)])

    @classmethod
    def elimination(cls, layout, aux_blocks):
        aux = []
        for name in aux_blocks:
            aux.extend(layout.block_range(name))
        aux_set = set(aux)
        if not aux_set:
            raise LayoutError("elimination order needs auxiliary variables")
        main = [i for i in range(layout.nvars) if i not in aux_set]
        if not main:
            raise LayoutError("elimination order leaves no main variables")
        order = cls("elim:%s" % ",".join(aux_blocks), [sorted(aux), main])
        return order

    def __eq__(self, other):
        return (
            isinstance(other, MonomialOrder)
            and self.kind == other.kind
            and self.groups == other.groups
        )

    def __hash__(self):
        return hash((self.kind, self.groups))

    def __repr__(self):
        return "MonomialOrder(%s)" % self.kind


class PolynomialRing:
    """Polynomial ring: a field, a variable layout and a monomial order."""

    def __init__(self, field, layout, order=None):
        self.field = field
        self.layout = layout
        self.order = order if order is not None else MonomialOrder.degrevlex(layout)
        covered = sorted(i for g in self.order.groups for i in g)
        if covered != list(range(layout.nvars)):
            raise LayoutError("order does not cover the layout exactly once")
        nv = layout.nvars
        self.nvars = nv
        self._pshift = tuple(FIELD_BITS * v for v in range(nv))
        self.pmask = (1 << (FIELD_BITS * nv)) - 1
        hi = 0
        for v in range(nv):
            hi |= 0x8000 << (FIELD_BITS * v)
        self._himask = hi
        flip_shift = [0] * nv
        deg_shift = {}
        pos = nv
        for group in reversed(self.order.groups):
            for v in group:
                flip_shift[v] = FIELD_BITS * pos
                pos += 1
            deg_shift[group] = FIELD_BITS * pos
            pos += 1
        self._flip_shift = tuple(flip_shift)
        self._deg_shifts = tuple(deg_shift[g] for g in self.order.groups)
        one = 0
        for v in range(nv):
            one |= MAX_EXPONENT << flip_shift[v]
        self.one_key = one
        self._group_of = [None] * nv
        for g in self.order.groups:
            for v in g:
                self._group_of[v] = g
        self._deriv_delta = tuple(
            (1 << flip_shift[v])
            - (1 << self._pshift[v])
            - (1 << deg_shift[self._group_of[v]])
            for v in range(nv)
        )
        # per-group constants for rebuilding a full key from its exponent
        # part with a few word operations (groups are contiguous for both
        # supported orders; fall back to encode/decode otherwise)
        meta = []
        for g, dshift in zip(self.order.groups, self._deg_shifts):
            lo, hi = min(g), max(g) + 1
            if tuple(g) != tuple(range(lo, hi)):
                meta = None
                break
            width = hi - lo
            gmask = (1 << (FIELD_BITS * width)) - 1
            ones = sum(1 << (FIELD_BITS * v) for v in range(width))
            meta.append((lo, gmask, ones, flip_shift[lo], dshift, width))
        self._groups_meta = meta
        self._vars = tuple(
            Polynomial(self, ((self.encode_exponents(_unit(nv, v)), field.one),))
            for v in range(nv)
        )

    # -- monomial codec -------------------------------------------------

    def encode_exponents(self, exps):
        if len(exps) != self.nvars:
            raise LayoutError("expected %d exponents" % self.nvars)
        key = 0
        for v, e in enumerate(exps):
            if not 0 <= e <= MAX_EXPONENT:
                raise ExponentOverflowError("exponent %d out of range" % e)
            key |= e << self._pshift[v]
            key |= (MAX_EXPONENT - e) << self._flip_shift[v]
        for g, shift in zip(self.order.groups, self._deg_shifts):
            d = sum(exps[v] for v in g)
            if d > MAX_EXPONENT:
                raise ExponentOverflowError("group degree %d out of range" % d)
            key |= d << shift
        return key

    def decode_key(self, key):
        return tuple(
            (key >> self._pshift[v]) & FIELD_MASK for v in range(self.nvars)
        )

    def mono_mul(self, a, b):
        return a + b - self.one_key

    def mono_div(self, a, b):
        """Exact quotient of packed monomials; caller checks divisibility."""
        return a - b + self.one_key

    def mono_divides(self, a, b):
        """True when monomial a divides monomial b."""
        pa = a & self.pmask
        pb = b & self.pmask
        return ((pb | self._himask) - pa) & self._himask == self._himask

    def p_divides(self, pa, pb):
        """Divisibility on bare exponent parts (low bits of a key)."""
        return ((pb | self._himask) - pa) & self._himask == self._himask

    def p_lcm(self, pa, pb):
        # fieldwise max: select pa in fields where pa >= pb, else pb
        ge = ((pa | self._himask) - pb) & self._himask
        sel = (ge >> 15) * FIELD_MASK
        return (pa & sel) | (pb & (sel ^ self.pmask))

    def key_from_p(self, part):
        """Rebuild a full key from its exponent part."""
        if self._groups_meta is None:
            return self.encode_exponents(self.decode_key(part))
        key = part
        for lo, gmask, ones, fshift, dshift, width in self._groups_meta:
            pg = (part >> (FIELD_BITS * lo)) & gmask
            # multiplying by a run of fieldwise ones accumulates the group
            # total degree in the top field of the group
            deg = ((pg * ones) >> (FIELD_BITS * (width - 1))) & FIELD_MASK
            if deg > MAX_EXPONENT:
                raise ExponentOverflowError(
                    "monomial degree %d exceeds %d" % (deg, MAX_EXPONENT)
                )
            key |= ((MAX_EXPONENT * ones - pg) << fshift) | (deg << dshift)
        return key

    def mono_lcm(self, a, b):
        return self.key_from_p(self.p_lcm(a & self.pmask, b & self.pmask))

    def mono_degree(self, key):
        return sum((key >> s) & FIELD_MASK for s in self._deg_shifts)

    def mono_multidegree(self, key):
        exps = self.decode_key(key)
        return tuple(
            sum(exps[v] for v in self.layout.block_range(name))
            for name, _ in self.layout.blocks
        )

    def mono_text(self, key):
        exps = self.decode_key(key)
        parts = []
        for v, e in enumerate(exps):
            if e == 1:
                parts.append(self.layout.var_names[v])
            elif e > 1:
                parts.append("%s^%d" % (self.layout.var_names[v], e))
        return "*".join(parts)

    # -- element constructors -------------------------------------------

    def zero(self):
        return Polynomial(self, ())

    def one(self):
        return Polynomial(self, ((self.one_key, self.field.one),))

    def constant(self, c):
        if self.field.is_zero(c):
            return self.zero()
        return Polynomial(self, ((self.one_key, c),))

    def from_int(self, n):
        return self.constant(self.field.from_int(n))

    def variable(self, v):
        if isinstance(v, str):
            try:
                v = self.layout.index_of[v]
            except KeyError:
                raise LayoutError("unknown variable %r" % v) from None
        return self._vars[v]

    def gens(self):
        return self._vars

    def monomial(self, exps, coeff=None):
        c = self.field.one if coeff is None else coeff
        if self.field.is_zero(c):
            return self.zero()
        return Polynomial(self, ((self.encode_exponents(exps), c),))

    def from_dict(self, d):
        field = self.field
        terms = [(k, c) for k, c in d.items() if not field.is_zero(c)]
        terms.sort(key=lambda t: t[0], reverse=True)
        return Polynomial(self, tuple(terms))

    def from_text(self, text):
        return parse_polynomial(self, text)

    # -- structural helpers ---------------------------------------------

    def same_structure(self, other):
        return (
            self.field == other.field
            and self.layout == other.layout
            and self.order == other.order
        )

    def check_same(self, other):
        if self is other:
            return
        if not isinstance(other, PolynomialRing) or not self.same_structure(other):
            raise RingMismatchError("polynomials from different rings")

    def __repr__(self):
        return "PolynomialRing(%s, %r, %s)" % (
            self.field.tag,
            self.layout,
            self.order.kind,
        )


def _unit(n, v):
    exps = [0] * n
    exps[v] = 1
    return tuple(exps)


def _add_terms(ring, ta, tb, sb=1):
    """Merge two descending term tuples, scaling the second by sb."""
    field = ring.field
    p = field.characteristic if field.tag != "q" else 0
    out = []
    i = j = 0
    na, nb = len(ta), len(tb)
    while i < na and j < nb:
        ka, ca = ta[i]
        kb, cb = tb[j]
        if ka > kb:
            out.append((ka, ca))
            i += 1
        elif ka < kb:
            out.append((kb, cb * sb % p if p else cb * sb))
            j += 1
        else:
            c = (ca + cb * sb) % p if p else ca + cb * sb
            if c:
                out.append((ka, c))
            i += 1
            j += 1
    out.extend(ta[i:])
    if p:
        out.extend((k, c * sb % p) for k, c in tb[j:])
    else:
        out.extend((k, c * sb) for k, c in tb[j:])
    return tuple(out)


def _mul_terms(ring, ta, tb):
    """Product of two term tuples as a dict keyed by packed monomial."""
    if not ta or not tb:
        return ()
    da = ring.mono_degree(ta[0][0])
    db = ring.mono_degree(tb[0][0])
    if da + db > MAX_EXPONENT:
        raise ExponentOverflowError("product degree %d out of range" % (da + db))
    one = ring.one_key
    field = ring.field
    if len(ta) > len(tb):
        ta, tb = tb, ta
    if len(ta) == 1:
        k0, c0 = ta[0]
        shift = k0 - one
        if field.tag == "q":
            return tuple((k + shift, c * c0) for k, c in tb)
        p = field.characteristic
        return tuple((k + shift, c * c0 % p) for k, c in tb)
    acc = {}
    get = acc.get
    if field.tag == "q":
        for ka, ca in ta:
            sa = ka - one
            for kb, cb in tb:
                k = kb + sa
                acc[k] = get(k, 0) + ca * cb
        terms = [(k, c) for k, c in acc.items() if c]
    else:
        p = field.characteristic
        for ka, ca in ta:
            sa = ka - one
            for kb, cb in tb:
                k = kb + sa
                v = get(k)
                acc[k] = ca * cb if v is None else v + ca * cb
        terms = [(k, c % p) for k, c in acc.items() if c % p]
    terms.sort(key=lambda t: t[0], reverse=True)
    return tuple(terms)


class Polynomial:
    """Immutable sparse polynomial with terms sorted by the ring order."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms

    # -- basic inspection -------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def leading_monomial(self):
        return self.terms[0][0]

    def leading_coefficient(self):
        return self.terms[0][1]

    def leading_term(self):
        return self.terms[0]

    def degree(self):
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(self.ring.mono_degree(k) for k, _ in self.terms)

    def multidegree(self):
        """Per-block degrees of the leading monomial."""
        if not self.terms:
            raise ValueError("zero polynomial has no multidegree")
        return self.ring.mono_multidegree(self.terms[0][0])

    def is_homogeneous(self):
        if not self.terms:
            return True
        degs = {self.ring.mono_degree(k) for k, _ in self.terms}
        return len(degs) == 1

    def is_multihomogeneous(self):
        if not self.terms:
            return True
        degs = {self.ring.mono_multidegree(k) for k, _ in self.terms}
        return len(degs) == 1

    def coefficient(self, exps):
        key = self.ring.encode_exponents(exps)
        for k, c in self.terms:
            if k == key:
                return c
        return self.ring.field.zero

    def monic(self):
        if not self.terms:
            return self
        field = self.ring.field
        lc = self.terms[0][1]
        if lc == field.one:
            return self
        inv = field.inv(lc)
        if field.tag == "q":
            return Polynomial(self.ring, tuple((k, c * inv) for k, c in self.terms))
        p = field.characteristic
        return Polynomial(self.ring, tuple((k, c * inv % p) for k, c in self.terms))

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        return Polynomial(self.ring, _add_terms(self.ring, self.terms, other.terms))

    def __radd__(self, other):
        return self.__add__(other)

    def __sub__(self, other):
        other = self._coerce(other)
        return Polynomial(
            self.ring, _add_terms(self.ring, self.terms, other.terms, sb=-1)
        )

    def __rsub__(self, other):
        return self._coerce(other).__sub__(self)

    def __neg__(self):
        field = self.ring.field
        if field.tag == "q":
            return Polynomial(self.ring, tuple((k, -c) for k, c in self.terms))
        p = field.characteristic
        return Polynomial(self.ring, tuple((k, -c % p) for k, c in self.terms))

    def __mul__(self, other):
        other = self._coerce(other)
        return Polynomial(self.ring, _mul_terms(self.ring, self.terms, other.terms))

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base_needed = n >> 1
            if base_needed:
                base = base * base
            n = base_needed
        return result

    def scale(self, c):
        field = self.ring.field
        if field.is_zero(c):
            return self.ring.zero()
        if field.tag == "q":
            return Polynomial(self.ring, tuple((k, v * c) for k, v in self.terms))
        p = field.characteristic
        c %= p
        terms = tuple(
            (k, v * c % p) for k, v in self.terms if v * c % p
        )
        return Polynomial(self.ring, terms)

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            self.ring.check_same(other.ring)
            return other
        if isinstance(other, int):
            return self.ring.from_int(other)
        return self.ring.constant(other)

    # -- calculus and substitution ----------------------------------------

    def partial_derivative(self, v):
        ring = self.ring
        if isinstance(v, str):
            try:
                v = ring.layout.index_of[v]
            except KeyError:
                raise LayoutError("unknown variable %r" % v) from None
        shift = ring._pshift[v]
        delta = ring._deriv_delta[v]
        field = ring.field
        out = []
        if field.tag == "q":
            for k, c in self.terms:
                e = (k >> shift) & FIELD_MASK
                if e:
                    out.append((k + delta, c * e))
        else:
            p = field.characteristic
            for k, c in self.terms:
                e = (k >> shift) & FIELD_MASK
                if e and c * e % p:
                    out.append((k + delta, c * e % p))
        return Polynomial(ring, tuple(out))

    def evaluate(self, values):
        """Value at a full assignment (one field element per variable)."""
        ring = self.ring
        field = ring.field
        if len(values) != ring.nvars:
            raise LayoutError("expected %d values" % ring.nvars)
        powers = [{0: field.one} for _ in range(ring.nvars)]
        total = field.zero
        for k, c in self.terms:
            exps = ring.decode_key(k)
            term = c
            for v, e in enumerate(exps):
                if not e:
                    continue
                cache = powers[v]
                pw = cache.get(e)
                if pw is None:
                    pw = cache[e] = values[v] ** e if field.tag == "q" else pow(
                        values[v], e, field.characteristic
                    )
                term = field.mul(term, pw)
            total = field.add(total, term)
        return total

    def substitute_block(self, assignments):
        """Plug scalars into whole blocks; result lives in the smaller ring.

        assignments maps block name to a coordinate vector.  Every block of
        the layout must be either fully assigned or untouched.
        """
        ring = self.ring
        field = ring.field
        layout = ring.layout
        sub = {}
        for name, values in assignments.items():
            rng_ = layout.block_range(name)
            if len(values) != len(rng_):
                raise LayoutError(
                    "block %r expects %d coordinates" % (name, len(rng_))
                )
            for v, val in zip(rng_, values):
                sub[v] = val
        keep = [v for v in range(ring.nvars) if v not in sub]
        target_layout = layout
        for name in assignments:
            target_layout = target_layout.without_block(name)
        target = PolynomialRing(field, target_layout)
        acc = {}
        for k, c in self.terms:
            exps = ring.decode_key(k)
            coeff = c
            for v, val in sub.items():
                e = exps[v]
                if e:
                    coeff = field.mul(coeff, val**e if field.tag == "q" else pow(val, e, field.characteristic))
            if field.is_zero(coeff):
                continue
            tk = target.encode_exponents(tuple(exps[v] for v in keep))
            prev = acc.get(tk)
            acc[tk] = coeff if prev is None else field.add(prev, coeff)
        return target.from_dict(acc)

    def map_to(self, target, var_map=None, coeff_map=None):
        """Reinterpret in another ring.

        var_map sends each source flat index to a target flat index (the
        identity-by-name map is used when omitted).  coeff_map converts
        coefficients when the fields differ.
        """
        ring = self.ring
        if var_map is None:
            # unused variables may be absent from the target layout
            var_map = [
                target.layout.index_of.get(name)
                for name in ring.layout.var_names
            ]
        if coeff_map is None:
            if ring.field != target.field:
                raise FieldMismatchError(
                    "coefficient map required between %s and %s"
                    % (ring.field.tag, target.field.tag)
                )
            coeff_map = lambda c: c
        acc = {}
        tf = target.field
        for k, c in self.terms:
            exps = ring.decode_key(k)
            texps = [0] * target.nvars
            for v, e in enumerate(exps):
                if e:
                    tv = var_map[v]
                    if tv is None:
                        raise LayoutError(
                            "variable %s missing in target"
                            % ring.layout.var_names[v]
                        )
                    texps[tv] += e
            tc = coeff_map(c)
            if tf.is_zero(tc):
                continue
            tk = target.encode_exponents(tuple(texps))
            prev = acc.get(tk)
            acc[tk] = tc if prev is None else tf.add(prev, tc)
        return target.from_dict(acc)

    # -- comparisons and text ----------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            return self == self.ring.from_int(other)
        return (
            isinstance(other, Polynomial)
            and self.ring.same_structure(other.ring)
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash(self.terms)

    def __str__(self):
        return polynomial_to_text(self)

    def __repr__(self):
        return "Polynomial(%s)" % polynomial_to_text(self)


def polynomial_to_text(f):
    """Canonical text form, terms in descending ring order."""
    if not f.terms:
        return "0"
    ring = f.ring
    rational = ring.field.tag == "q"
    pieces = []
    for i, (k, c) in enumerate(f.terms):
        negative = rational and c < 0
        mag = -c if negative else c
        mono = ring.mono_text(k)
        if not mono:
            body = ring.field.format(mag)
        elif mag == ring.field.one:
            body = mono
        else:
            body = "%s*%s" % (ring.field.format(mag), mono)
        if i == 0:
            pieces.append("-" + body if negative else body)
        else:
            pieces.append((" - " if negative else " + ") + body)
    return "".join(pieces)


_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^()]))"
)


def _tokenize(text):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            if text[pos:].strip():
                raise InputError("bad character %r in polynomial" % text[pos])
            break
        if m.group("num") is not None:
            out.append(("num", int(m.group("num"))))
        elif m.group("name") is not None:
            out.append(("name", m.group("name")))
        else:
            out.append(("op", m.group("op")))
        pos = m.end()
    return out


def parse_polynomial(ring, text):
    """Parse the canonical text form back into a polynomial.

    Accepts signed integer or rational coefficients, "*" between factors,
    "^" for exponents and optional whitespace.  Round trips the emitter
    exactly.
    """
    tokens = _tokenize(text)
    if not tokens:
        raise InputError("empty polynomial text")
    field = ring.field
    acc = {}
    i = 0
    n = len(tokens)

    def fail(msg):
        raise InputError("%s in polynomial %r" % (msg, text))

    sign = 1
    pending_sign = False
    while i < n:
        kind, val = tokens[i]
        if kind == "op" and val in "+-":
            if val == "-":
                sign = -sign
            pending_sign = True
            i += 1
            continue
        # one term
        coeff = field.one
        key = ring.one_key
        expect_factor = True
        while True:
            if not expect_factor:
                break
            if i >= n:
                fail("dangling operator")
            kind, val = tokens[i]
            if kind == "num":
                num = val
                i += 1
                if i < n and tokens[i] == ("op", "/"):
                    i += 1
                    if i >= n or tokens[i][0] != "num":
                        fail("bad rational coefficient")
                    den = tokens[i][1]
                    i += 1
                    coeff = field.mul(coeff, field.element(num, den))
                else:
                    coeff = field.mul(coeff, field.from_int(num))
            elif kind == "name":
                try:
                    v = ring.layout.index_of[val]
                except KeyError:
                    fail("unknown variable %r" % val)
                i += 1
                e = 1
                if i < n and tokens[i] == ("op", "^"):
                    i += 1
                    if i >= n or tokens[i][0] != "num":
                        fail("bad exponent")
                    e = tokens[i][1]
                    i += 1
                exps = [0] * ring.nvars
                exps[v] = e
                key = ring.mono_mul(key, ring.encode_exponents(tuple(exps)))
            else:
                fail("unexpected token %r" % (val,))
            expect_factor = i < n and tokens[i] == ("op", "*")
            if expect_factor:
                i += 1
        if sign < 0:
            coeff = field.neg(coeff)
        prev = acc.get(key)
        acc[key] = coeff if prev is None else field.add(prev, coeff)
        sign = 1
        pending_sign = False
    if pending_sign:
        fail("dangling operator")
    return ring.from_dict(acc)
