"""Terracini locus computations.

Membership of a point configuration is decided by the rank of a stacked
Jacobian over Q.  The locus itself is cut out by a determinantal ideal
over a finite field: threshold-size minors of the symbolic stacked
matrix, saturated so configurations with coinciding points or singular
points drop out.  The dimension of the locus is the Krull dimension of
that ideal minus one cone-scaling dimension per (point, factor) pair.

The module also carries the numeric threshold/emptiness predicates and
seeded generators for the special point families (collinear, coplanar,
factor-wise degenerate, conic-bound, base-point-aligned) that the
verification suites replay against the rank tests.
"""

import json
import random
from fractions import Fraction
from math import comb

from .errors import (
    DefectiveCaseError,
    DegenerateVarietyError,
    DuplicatePointError,
    InadmissibleRankError,
    InputError,
    PointNotOnVarietyError,
    SingularPointError,
)
from .fields import GF32003, QQ
from .groebner import Ideal
from .linalg import PolyMatrix, ScalarMatrix
from .multipoly import PolynomialRing, VariableLayout
from .varieties import IdealVariety, ParamMap, _as_fraction

_REPORT_FIELDS = (
    "mode",
    "field",
    "seed",
    "r",
    "k",
    "krull_dim",
    "locus_dim",
    "empty",
    "exactness",
    "capped",
    "wall_ms",
    "generators_path",
)


class TerraciniReport:
    """Result record for the membership/ideal/dimension commands.

    empty, krull_dim = -1 and locus_dim = "empty" travel together; for a
    nonempty locus locus_dim = krull_dim - r*k.
    """

    def __init__(self, mode, field, seed, r, k, krull_dim=None, locus_dim=None,
                 empty=None, exactness=None, capped=False, wall_ms=None,
                 generators_path=None):
        self.mode = mode
        self.field = field
        self.seed = seed
        self.r = r
        self.k = k
        self.krull_dim = krull_dim
        self.locus_dim = locus_dim
        self.empty = empty
        self.exactness = exactness
        self.capped = capped
        self.wall_ms = wall_ms
        self.generators_path = generators_path

    def as_dict(self):
        return {name: getattr(self, name) for name in _REPORT_FIELDS}

    def to_json(self):
        return json.dumps(self.as_dict(), indent=2) + "\n"

    def __repr__(self):
        return "TerraciniReport(%s)" % ", ".join(
            "%s=%r" % (name, getattr(self, name)) for name in _REPORT_FIELDS
        )


def _proportional(u, v):
    """Projective equality of two coordinate vectors (all 2x2 minors zero)."""
    n = len(u)
    for a in range(n):
        for b in range(a + 1, n):
            if u[a] * v[b] != u[b] * v[a]:
                return False
    return True


class PointConfig:
    """An ordered tuple of points of a product of projective spaces.

    Every point is a tuple of factor coordinate vectors.  A bare
    coordinate list is accepted for single-factor points.  Factor vectors
    must be nonzero, and the points must be pairwise distinct as
    multiprojective points: some factor where the two coordinate vectors
    are not proportional.
    """

    def __init__(self, points):
        pts = []
        for p in points:
            p = list(p)
            if not p:
                raise InputError("a point needs at least one factor")
            if not isinstance(p[0], (list, tuple)):
                p = [p]
            pts.append(
                tuple(tuple(_as_fraction(c) for c in vec) for vec in p)
            )
        if not pts:
            raise InputError("a configuration needs at least one point")
        shape = tuple(len(vec) for vec in pts[0])
        if any(s < 2 for s in shape):
            raise InputError("every factor needs at least two coordinates")
        for p in pts:
            if tuple(len(vec) for vec in p) != shape:
                raise InputError("points disagree on factor shapes")
            for vec in p:
                if not any(vec):
                    raise InputError("zero vector is not a projective point")
        for i in range(len(pts)):
            for j in range(i + 1, len(pts)):
                if all(_proportional(a, b) for a, b in zip(pts[i], pts[j])):
                    raise DuplicatePointError(
                        "points %d and %d coincide as multiprojective points"
                        % (i, j)
                    )
        self.points = tuple(pts)
        self.shape = shape

    @property
    def r(self):
        return len(self.points)

    @property
    def k(self):
        return len(self.shape)

    def flat(self, i, field=QQ):
        """Point i as one flat coordinate list over the given field."""
        vals = []
        for vec in self.points[i]:
            vals.extend(field.element(c.numerator, c.denominator) for c in vec)
        return vals

    def as_json_dict(self):
        return {
            "points": [
                [[_scalar_text(c) for c in vec] for vec in p]
                for p in self.points
            ]
        }

    def __repr__(self):
        return "PointConfig(r=%d, shape=%s)" % (self.r, list(self.shape))


def _scalar_text(c):
    if c.denominator == 1:
        return int(c)
    return "%d/%d" % (c.numerator, c.denominator)


def load_points(path):
    """Read a point-config JSON file: {"points": [[[a, b, ...], ...], ...]};
    coordinates are integers or "p/q" strings."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError("cannot read points file: %s" % exc)
    except json.JSONDecodeError as exc:
        raise InputError("bad JSON in %s: %s" % (path, exc))
    if not isinstance(data, dict) or "points" not in data:
        raise InputError('points file needs a top-level "points" list')
    return PointConfig(data["points"])


def _source_shape(source):
    if isinstance(source, ParamMap):
        return tuple(n + 1 for n in source.source_dims)
    if isinstance(source, IdealVariety):
        return (source.n + 1,)
    raise InputError("expected a ParamMap or IdealVariety")


def _check_shape(source, config):
    want = _source_shape(source)
    if config.shape != want:
        raise InputError(
            "point shape %s does not match the variety's factors %s"
            % (list(config.shape), list(want))
        )


def admissible_r_range(source):
    """Inclusive range (2, floor((N+1)/(dim X+1))) of usable r values.

    Above the upper bound r tangent spaces cannot fail to span for
    dimension reasons alone, below 2 nothing can go wrong.  The range can
    be empty (upper bound < 2): small varieties in small spaces have no
    interesting r at all.  Degenerate sources are refused since their
    ambient dimension is overstated.
    """
    if isinstance(source, ParamMap):
        if not source.is_nondegenerate():
            raise DegenerateVarietyError(
                "linearly dependent components; the image spans a hyperplane"
            )
        big_n = source.target_dim
    elif isinstance(source, IdealVariety):
        if not source.is_nondegenerate():
            raise DegenerateVarietyError(
                "the ideal contains a linear form; restrict to its hyperplane"
            )
        big_n = source.n
    else:
        raise InputError("expected a ParamMap or IdealVariety")
    dim_x = source.source_dim
    return (2, (big_n + 1) // (dim_x + 1))


def _require_admissible(source, r):
    lo, hi = admissible_r_range(source)
    if not lo <= r <= hi:
        raise InadmissibleRankError(
            "r = %d outside the admissible range [%d, %d]" % (r, lo, hi)
        )


def stacked_jacobian(source, config):
    """Evaluate the Jacobian at every point and concatenate the rows.

    Parametrizations contribute one (sum of n_f+1)-row block per point
    (rows indexed by source variables); ideal-defined varieties one
    s-row block (rows indexed by generators).  Each block must reach the
    generic rank ell on its own; a short block flags the point as
    singular (for parametrizations this also catches points where the
    map is undefined, since there every factor's Euler relation kills a
    row).  Ideal-route points must satisfy the generators exactly.
    """
    _check_shape(source, config)
    jac = source.jacobian()
    ell = source.ell
    on_ideal = isinstance(source, IdealVariety)
    rows = []
    for i in range(config.r):
        vals = config.flat(i)
        if on_ideal:
            for g in source.gens:
                if g.evaluate(vals) != 0:
                    raise PointNotOnVarietyError(
                        "point %d does not satisfy generator %s" % (i, g)
                    )
        block = [[entry.evaluate(vals) for entry in row] for row in jac.rows]
        if ScalarMatrix(QQ, block).rank() != ell:
            raise SingularPointError(
                "point %d has Jacobian rank below %d; the rank test needs"
                " smooth points" % (i, ell)
            )
        rows.extend(block)
    return ScalarMatrix(QQ, rows)


def membership_param(pmap, config):
    """True when the configuration lies in the Terracini locus of the
    parametrized variety: the stacked Jacobian rank falls short of
    min(r*ell, m+1)."""
    if not isinstance(pmap, ParamMap):
        raise InputError("membership_param expects a parametrized variety")
    _require_admissible(pmap, config.r)
    mat = stacked_jacobian(pmap, config)
    return mat.rank() < min(config.r * pmap.ell, pmap.target_dim + 1)


def membership_ideal(variety, config):
    """Rank test on the generator Jacobian of an ideal-defined variety.

    Only pairs are decidable on this route; the tangent-space description
    through generator differentials is sharp for two points and the
    threshold is min(2*ell, n+1) with ell the codimension.
    """
    if not isinstance(variety, IdealVariety):
        raise InputError("membership_ideal expects an ideal-defined variety")
    if config.r != 2:
        raise InadmissibleRankError(
            "the ideal route decides r = 2 only, got r = %d" % config.r
        )
    _require_admissible(variety, 2)
    mat = stacked_jacobian(variety, config)
    return mat.rank() < min(2 * variety.ell, variety.n + 1)


class LocusIdeal(Ideal):
    """The saturated locus ideal together with its run metadata."""

    def __init__(self, ring, gens, _gb=None, r=None, k=None, ell=None,
                 route=None, capped=False, seed=0):
        Ideal.__init__(self, ring, gens, _gb=_gb)
        self.r = r
        self.k = k
        self.ell = ell
        self.route = route
        self.capped = capped
        self.seed = seed


def _duplicate_ideal(ring, shape, i, j):
    """2x2 inter-point minors: zero exactly when points i and j coincide
    in every factor."""
    gens = []
    for f, size in enumerate(shape):
        iv = [ring.variable("z_%d_%d_%d" % (i, f, a)) for a in range(size)]
        jv = [ring.variable("z_%d_%d_%d" % (j, f, a)) for a in range(size)]
        for a in range(size):
            for b in range(a + 1, size):
                gens.append(iv[a] * jv[b] - iv[b] * jv[a])
    return Ideal(ring, gens)


def _monomial_radical_or_none(ring, shape, i, rank_ideal):
    """The radical of a point's rank-drop ideal when it is the union of
    the factor coordinate-zero loci, else None.

    Candidate C = intersection over factors of the block's irrelevant
    ideal, a squarefree monomial ideal (products of one variable per
    factor).  C is the radical iff every rank generator vanishes on each
    factor's zero locus (syntactic: every term has positive degree in
    that block) and every candidate monomial kills the rank locus
    (saturation by it reaches the unit ideal).  Immersed charts pass;
    charts with base points fail the second test and keep the honest
    generators.
    """
    blocks = ["z_%d_%d" % (i, f) for f in range(len(shape))]
    for f, name in enumerate(blocks):
        lo = ring.layout.block_start[name]
        mask = 0
        for v in range(lo, lo + shape[f]):
            mask |= 0xFFFF << (16 * v)
        for g in rank_ideal.gens:
            if any(k & mask == 0 for k, _ in g.terms):
                return None
    choices = [[0]]
    for size in shape:
        choices = [pre + [a] for pre in choices for a in range(size)]
    monos = []
    for pick in choices:
        m = ring.one()
        for f, a in enumerate(pick[1:]):
            m = m * ring.variable("z_%d_%d_%d" % (i, f, a))
        monos.append(m)
    for m in monos:
        if not rank_ideal.saturate(m).is_unit():
            return None
    return Ideal(ring, monos)


def terracini_ideal(source, r, field=None, cap=None, seed=0):
    """The ideal cutting out the r-point Terracini locus.

    The ring has one block of n_f+1 variables per (point, factor),
    named z_<point>_<factor>, over the given field (default Z/32003).
    For a parametrization the stacked symbolic matrix repeats the
    Jacobian with point i's variables substituted in; the ideal route
    (r = 2 only) stacks the generator Jacobian and adds the generators
    themselves at both points.  On top of the size-min(r*ell, columns)
    minors of that matrix, two saturation passes remove the degenerate
    strata: the duplicate-point ideals D_ij (inter-point proportionality
    minors, pairs in lexicographic order) and each point's own rank-drop
    ideal.  Saturation only sees the radical of the saturating ideal, so
    running the passes sequentially equals saturating by the full
    intersection.

    cap bounds the number of top minors (a seeded sample is taken above
    it and the result is flagged via .capped); the saturation minors are
    never sampled, their exactness is load-bearing.
    """
    if field is None:
        field = GF32003
    _require_admissible(source, r)
    on_ideal = isinstance(source, IdealVariety)
    if on_ideal and r != 2:
        raise InadmissibleRankError(
            "the ideal route supports r = 2 only, got r = %d" % r
        )
    shape = _source_shape(source)
    k = len(shape)
    ell = source.ell
    stride = sum(shape)
    layout = VariableLayout(
        [("z_%d_%d" % (i, f), shape[f]) for i in range(r) for f in range(k)]
    )
    ring = PolynomialRing(field, layout)

    def lift(c):
        return field.element(c.numerator, c.denominator)

    jac = source.jacobian()
    arows = []
    extra = []
    point_blocks = []
    for i in range(r):
        vmap = [i * stride + v for v in range(stride)]
        block = jac.map_to(ring, var_map=vmap, coeff_map=lift)
        point_blocks.append(block)
        arows.extend(block.rows)
        if on_ideal:
            extra.extend(g.map_to(ring, vmap, lift) for g in source.gens)
    amat = PolyMatrix(ring, arows)
    ksize = min(r * ell, amat.ncols)
    res = amat.k_minors(ksize, cap=cap, seed=seed)
    gens = [m for m in res.minors if m.terms] + extra
    work = Ideal(ring, gens)

    if not work.is_unit():
        for i in range(r):
            for j in range(i + 1, r):
                work = work.saturate_by_ideal(_duplicate_ideal(ring, shape, i, j))
                if work.is_unit():
                    break
            if work.is_unit():
                break
    if not work.is_unit():
        for i in range(r):
            minors = point_blocks[i].k_minors(ell).minors
            rank_ideal = Ideal(ring, [m for m in minors if m.terms])
            shortcut = _monomial_radical_or_none(ring, shape, i, rank_ideal)
            work = work.saturate_by_ideal(
                rank_ideal if shortcut is None else shortcut
            )
            if work.is_unit():
                break
    gb = work.groebner_basis()
    return LocusIdeal(
        ring,
        work.gens,
        _gb=gb,
        r=r,
        k=k,
        ell=ell,
        route="ideal" if on_ideal else "parametrization",
        capped=res.capped,
        seed=seed,
    )


def locus_dimension(T, r=None, k=None, wall_ms=None, generators_path=None):
    """Dimension report for a locus ideal.

    Each point contributes one cone-scaling dimension per factor, so the
    locus dimension is the Krull dimension minus r*k.  Values from the
    parametrization route are lower bounds (components meeting the
    locus where the chart degenerates may be missing); the ideal route
    with r = 2 is exact.
    """
    if isinstance(T, LocusIdeal):
        r = T.r if r is None else r
        k = T.k if k is None else k
        route = T.route
        capped = T.capped
        seed = T.seed
    else:
        route = "parametrization"
        capped = False
        seed = 0
    if r is None or k is None:
        raise InputError("r and k are required for a plain ideal")
    krull = T.krull_dimension()
    empty = krull == -1
    return TerraciniReport(
        mode="dimension",
        field=T.ring.field.tag,
        seed=seed,
        r=r,
        k=k,
        krull_dim=krull,
        locus_dim="empty" if empty else krull - r * k,
        empty=empty,
        exactness="exact" if route == "ideal" and r == 2 else "lower-bound",
        capped=capped,
        wall_ms=wall_ms,
        generators_path=generators_path,
    )


def first_nonempty_r(pmap):
    """Smallest r whose Terracini locus is nonempty for a complete
    monomial embedding, with the 1-based factor indices attaining it.

    The threshold is min over factors of ceil((d_i+2)/2).  The formula
    assumes the full monomial basis in every factor and at most one
    degree-1 factor; two degree-1 factors contain a doubly-linear piece
    whose loci behave differently, which is refused rather than
    misreported.
    """
    if not isinstance(pmap, ParamMap):
        raise InputError("first_nonempty_r expects a parametrized family")
    expected = 1
    for n, d in zip(pmap.source_dims, pmap.degrees):
        expected *= comb(n + d, n)
    monos = {f.terms[0][0] for f in pmap.components if len(f.terms) == 1}
    if len(pmap.components) != expected or len(monos) != expected:
        raise InputError(
            "the threshold formula needs the complete monomial embedding"
        )
    degs = pmap.degrees
    if len(degs) > 1 and sum(1 for d in degs if d == 1) > 1:
        raise DefectiveCaseError(
            "more than one degree-1 factor; the threshold formula does not"
            " apply to such products"
        )
    per_factor = [(d + 3) // 2 for d in degs]
    r = min(per_factor)
    attaining = tuple(i + 1 for i, v in enumerate(per_factor) if v == r)
    return r, attaining


def curve_emptiness_bounds(genus, r, target_dim=None, h0=None,
                           ambient_dim=None):
    """Numeric emptiness certificates for a smooth curve of given genus.

    Complete-system form (pass target_dim = dimension of the full linear
    series): the locus is empty when 2r < target_dim - genus + 2.
    Non-complete form (pass the number of sections h0 and the ambient
    dimension): empty when both 2r < h0 - genus + 1 and 3r < ambient + 2.
    False means the bounds are silent, not that the locus is nonempty.
    """
    if genus < 0 or r < 0:
        raise InputError("genus and r must be nonnegative")
    if target_dim is not None:
        if h0 is not None or ambient_dim is not None:
            raise InputError(
                "pass either target_dim or (h0, ambient_dim), not both"
            )
        return 2 * r < target_dim - genus + 2
    if h0 is None or ambient_dim is None:
        raise InputError(
            "pass target_dim for a complete system, or both h0 and"
            " ambient_dim for a non-complete one"
        )
    return 2 * r < h0 - genus + 1 and 3 * r < ambient_dim + 2


# -- seeded special configurations ----------------------------------------
#
# Every generator draws with its own random.Random(seed) and redraws until
# the defining conditions hold exactly, so a (family, name, r, seed) tuple
# always yields the same configuration.  Member families impose their
# degeneration by construction; the generic controls verify the violation
# by exact determinant checks, never by chance alone.


def _draw_vector(rng, length):
    while True:
        vec = tuple(Fraction(rng.randint(-9, 9)) for _ in range(length))
        if any(vec):
            return vec


def _draw_independent(rng, first):
    while True:
        vec = _draw_vector(rng, len(first))
        if not _proportional(first, vec):
            return vec


def _draw_params(rng, count, exclude=()):
    """Distinct rational parameters avoiding the excluded values."""
    out = []
    banned = {Fraction(e) for e in exclude}
    while len(out) < count:
        t = Fraction(rng.randint(-30, 30))
        if t not in banned:
            banned.add(t)
            out.append(t)
    return out


def _combo(a, ca, b, cb):
    return tuple(ca * x + cb * y for x, y in zip(a, b))


def _rank(vectors):
    return ScalarMatrix(QQ, [list(v) for v in vectors]).rank()


def _line_points(rng, length, count, avoid=()):
    """count distinct points on a seeded line whose span misses every
    vector in avoid."""
    while True:
        a = _draw_vector(rng, length)
        b = _draw_independent(rng, a)
        if all(_rank([a, b, z]) == 3 for z in avoid):
            break
    return [a] + [_combo(a, 1, b, t) for t in _draw_params(rng, count - 1, [0])], (a, b)


_CONIC_MONOS = ((2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2))


def _conic_row(p):
    x, y, z = p
    return [x * x, x * y, x * z, y * y, y * z, z * z]


def _conic_through(points):
    """Coefficient vectors (against _CONIC_MONOS) of conics through the
    given plane points."""
    return ScalarMatrix(QQ, [_conic_row(p) for p in points]).kernel_basis()


def _conic_det(coeffs):
    a, d, e, b, f, c = coeffs
    m = [
        [2 * a, d, e],
        [d, 2 * b, f],
        [e, f, 2 * c],
    ]
    return ScalarMatrix(QQ, m).det()


def _conic_value(coeffs, p):
    return sum(c * v for c, v in zip(coeffs, _conic_row(p)))


def oracle_config(source, name, r=None, seed=0):
    """Seeded exact configurations from the named special families.

    Single-factor families (any parametrized source over one factor):
      collinear             r points on a seeded line
      noncollinear          r points, every triple independent
      no3collinear          alias of noncollinear
      collinear_plus_free   r-1 on a line, one point off it
      coplanar              r points inside a seeded plane
      noncoplanar           r points spanning at least a 3-space
    Multi-factor families:
      T_<i>                 factor i collinear and distinct, all other
                            factors frozen to one point (1-based i)
      generic               projections pairwise distinct in every factor
    Plane-chart families with base points:
      Y_<i>                 two points collinear with base point i
      U                     two points on an irreducible conic through
                            all four base points
      Y                     three collinear points, line off the base point
      B_<ij>                points i and j collinear with the base point,
                            the third free (1-based positions, e.g. B_12)
      generic               pair/triple violating all of the above, by
                            exact determinant checks
    """
    if not isinstance(source, ParamMap):
        raise InputError("oracle families need a parametrized variety")
    rng = random.Random(seed)
    shape = _source_shape(source)
    k = len(shape)
    bases = getattr(source, "base_points", None)

    if bases is not None:
        return _oracle_base_points(rng, shape, bases, name, r)
    if name in ("collinear", "noncollinear", "no3collinear",
                "collinear_plus_free", "coplanar", "noncoplanar"):
        if k != 1:
            raise InputError("%r is a single-factor family" % name)
        if r is None or r < 2:
            raise InputError("family %r needs a point count r >= 2" % name)
        return _oracle_single_factor(rng, shape[0], name, r)
    if name.startswith("T_") or name == "generic":
        if k < 2:
            raise InputError("%r needs at least two factors" % name)
        if r is None or r < 2:
            raise InputError("family %r needs a point count r >= 2" % name)
        return _oracle_multi_factor(rng, shape, name, r)
    raise InputError("unknown oracle family %r" % name)


def _oracle_single_factor(rng, length, name, r):
    if name == "collinear":
        pts, _ = _line_points(rng, length, r)
        return PointConfig([[p] for p in pts])
    if name in ("noncollinear", "no3collinear"):
        if length < 3:
            raise InputError("no noncollinear configurations on a line")
        while True:
            pts = [_draw_vector(rng, length) for _ in range(r)]
            if _all_triples_independent(pts):
                return PointConfig([[p] for p in pts])
    if name == "collinear_plus_free":
        pts, (a, b) = _line_points(rng, length, r - 1)
        while True:
            free = _draw_vector(rng, length)
            if _rank([a, b, free]) == 3:
                return PointConfig([[p] for p in pts] + [[free]])
    if name == "coplanar":
        if length < 3:
            raise InputError("coplanar families need an ambient plane")
        while True:
            frame = [_draw_vector(rng, length) for _ in range(3)]
            if _rank(frame) == 3:
                break
        while True:
            coefs = [
                tuple(Fraction(rng.randint(-9, 9)) for _ in range(3))
                for _ in range(r)
            ]
            pts = [
                tuple(
                    sum(c * v for c, v in zip(cf, col))
                    for col in zip(*frame)
                )
                for cf in coefs
            ]
            if all(any(p) for p in pts) and _pairwise_distinct(pts):
                return PointConfig([[p] for p in pts])
    if name == "noncoplanar":
        if length < 4:
            raise InputError("noncoplanar configurations need dimension >= 3")
        while True:
            pts = [_draw_vector(rng, length) for _ in range(r)]
            if _pairwise_distinct(pts) and _rank(pts) >= 4:
                return PointConfig([[p] for p in pts])
    raise InputError("unknown oracle family %r" % name)


def _all_triples_independent(pts):
    if not _pairwise_distinct(pts):
        return False
    n = len(pts)
    for a in range(n):
        for b in range(a + 1, n):
            for c in range(b + 1, n):
                if _rank([pts[a], pts[b], pts[c]]) < 3:
                    return False
    return True


def _pairwise_distinct(pts):
    n = len(pts)
    for a in range(n):
        for b in range(a + 1, n):
            if _proportional(pts[a], pts[b]):
                return False
    return True


def _oracle_multi_factor(rng, shape, name, r):
    k = len(shape)
    if name == "generic":
        while True:
            pts = [
                tuple(_draw_vector(rng, s) for s in shape) for _ in range(r)
            ]
            if all(
                _pairwise_distinct([p[f] for p in pts]) for f in range(k)
            ):
                return PointConfig(pts)
    idx = name[2:]
    if not idx.isdigit() or not 1 <= int(idx) <= k:
        raise InputError("unknown oracle family %r" % name)
    i = int(idx) - 1
    frozen = [_draw_vector(rng, s) for s in shape]
    line, _ = _line_points(rng, shape[i], r)
    pts = []
    for q in line:
        vecs = list(frozen)
        vecs[i] = q
        pts.append(tuple(vecs))
    return PointConfig(pts)


def _oracle_base_points(rng, shape, bases, name, r):
    if shape != (3,):
        raise InputError("base-point families live on a plane chart")
    t = len(bases)

    def off_bases(p):
        return all(not _proportional(p, z) for z in bases)

    if name.startswith("Y_"):
        idx = name[2:]
        if not idx.isdigit() or not 1 <= int(idx) <= t:
            raise InputError(
                "unknown base point in %r (have %d)" % (name, t)
            )
        if r not in (None, 2):
            raise InputError("family %r is a two-point family" % name)
        z = bases[int(idx) - 1]
        while True:
            p1 = _draw_vector(rng, 3)
            if not off_bases(p1):
                continue
            p2 = _combo(p1, 1, z, Fraction(rng.randint(1, 9)))
            if off_bases(p2) and not _proportional(p1, p2):
                return PointConfig([[p1], [p2]])
    if name == "U":
        if t != 4:
            raise InputError("the conic family needs four base points")
        if r not in (None, 2):
            raise InputError("family U is a two-point family")
        pencil = _conic_through(bases)
        if len(pencil) != 2:
            raise InputError("base points do not span a conic pencil")
        while True:
            lam = rng.randint(-9, 9)
            mu = rng.randint(-9, 9)
            coeffs = [
                Fraction(lam) * a + Fraction(mu) * b
                for a, b in zip(pencil[0], pencil[1])
            ]
            if _conic_det(coeffs) != 0:
                break
        # chord construction: q0 is on the conic, so the line through q0
        # with direction v meets it again at Q(v) q0 - B(q0, v) v
        q0 = bases[0]

        def second_point(v):
            qv = _conic_value(coeffs, v)
            bv = (
                _conic_value(coeffs, _combo(q0, 1, v, 1))
                - _conic_value(coeffs, q0)
                - qv
            )
            return tuple(qv * x - bv * y for x, y in zip(q0, v))

        pts = []
        while len(pts) < 2:
            p = second_point(_draw_vector(rng, 3))
            if not any(p) or not off_bases(p):
                continue
            if pts and _proportional(pts[0], p):
                continue
            pts.append(p)
        return PointConfig([[p] for p in pts])
    if name == "Y":
        if r not in (None, 3):
            raise InputError("family Y is a three-point family")
        pts, _ = _line_points(rng, 3, 3, avoid=bases)
        return PointConfig([[p] for p in pts])
    if name.startswith("B_"):
        idx = name[2:]
        if len(idx) != 2 or not idx.isdigit():
            raise InputError("unknown oracle family %r" % name)
        a, b = int(idx[0]), int(idx[1])
        if not (1 <= a < b <= 3):
            raise InputError("pair positions in %r must satisfy 1 <= i < j <= 3" % name)
        if r not in (None, 3):
            raise InputError("family %r is a three-point family" % name)
        z = bases[0]
        while True:
            w = _draw_independent(rng, z)
            ts = _draw_params(rng, 2)
            onpair = [_combo(w, 1, z, u) for u in ts]
            if all(off_bases(p) for p in onpair):
                break
        while True:
            free = _draw_vector(rng, 3)
            if off_bases(free) and _rank([w, z, free]) == 3:
                break
        pts = [None, None, None]
        pts[a - 1], pts[b - 1] = onpair
        pts[[p is None for p in pts].index(True)] = free
        return PointConfig([[p] for p in pts])
    if name == "generic":
        if r is None:
            r = 2
        if r not in (2, 3):
            raise InputError("generic base-point controls cover r = 2 and 3")
        while True:
            pts = [_draw_vector(rng, 3) for _ in range(r)]
            if not all(off_bases(p) for p in pts):
                continue
            if not _pairwise_distinct(pts):
                continue
            pair_dets = all(
                _rank([pts[a], pts[b], z]) == 3
                for a in range(r)
                for b in range(a + 1, r)
                for z in bases
            )
            if not pair_dets:
                continue
            if r == 3 and _rank(pts) < 3:
                continue
            if r == 2 and t == 4:
                if ScalarMatrix(
                    QQ, [_conic_row(p) for p in list(bases) + pts]
                ).det() == 0:
                    continue
            return PointConfig([[p] for p in pts])
    raise InputError("unknown oracle family %r" % name)
