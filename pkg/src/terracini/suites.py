"""Named verification suites replaying the classification statements.

Each suite is a list of executable checks against the rank tests and the
locus-ideal pipeline.  A check carries an anchor string naming the
mathematical fact it exercises; failure messages cite that anchor so a
red run says which statement broke, not just which assertion.

Suites are deterministic for a given seed.  Emptiness claims are never
certified from capped minor enumerations: a capped run fails the check
with an explicit message instead.
"""

import random
from fractions import Fraction

from .errors import DefectiveCaseError, DegenerateVarietyError, MathError
from .fields import QQ
from .loci import (
    PointConfig,
    curve_emptiness_bounds,
    first_nonempty_r,
    locus_dimension,
    membership_ideal,
    membership_param,
    oracle_config,
    stacked_jacobian,
    terracini_ideal,
)
from .varieties import (
    del_pezzo,
    from_ideal,
    rational_curve,
    rational_normal_curve,
    segre_veronese,
    veronese,
)
from .multipoly import PolynomialRing, VariableLayout


class CheckResult:
    """One suite check: its anchor names the statement being replayed."""

    __slots__ = ("name", "anchor", "passed", "detail")

    def __init__(self, name, anchor, passed, detail=""):
        self.name = name
        self.anchor = anchor
        self.passed = passed
        self.detail = detail

    def message(self):
        if self.passed:
            return "PASS %s" % self.name
        body = " (%s)" % self.detail if self.detail else ""
        return "FAIL %s: violates [%s]%s" % (self.name, self.anchor, body)

    def __repr__(self):
        return "CheckResult(%s, %s)" % (self.name, "pass" if self.passed else "FAIL")


def _check(out, name, anchor, passed, detail=""):
    out.append(CheckResult(name, anchor, bool(passed), detail))


def _certified_empty(T):
    """Unit ideal from an uncapped run; capped runs certify nothing."""
    return (not T.capped) and T.is_unit()


# -- curve constructions ----------------------------------------------------


def _dropped_row_curve(degree, drop):
    rows = [
        [Fraction(int(j == i)) for j in range(degree + 1)]
        for i in range(degree + 1)
        if i != drop
    ]
    return rational_curve(rows)


def _projection_is_immersion(pm):
    """Rank probe at the two torus-fixed parameters, where a bad center
    for a monomial-curve projection always shows up."""
    for pt in ([[1, 0]], [[0, 1]]):
        try:
            stacked_jacobian(pm, PointConfig([pt]))
        except MathError:
            return False
    return True


def octic_curve(seed=0):
    """A smooth octic in P^7: the degree-8 normal curve with one seeded
    coordinate dropped.  A center on the curve or on a tangent line fails
    the immersion probe; one reseed is allowed before giving up."""
    for s in (seed, seed + 1):
        drop = random.Random(s).randrange(9)
        pm = _dropped_row_curve(8, drop)
        if _projection_is_immersion(pm):
            pm.label = "octic(drop=%d)" % drop
            return pm
    raise DegenerateVarietyError(
        "seeded projection centers %d and %d both give a singular octic"
        % (seed, seed + 1)
    )


def quintic_curve():
    """The quintic [x^5 : x^4 y : x^3 y^2 : x y^4 : y^5] in P^4."""
    rows = []
    for i in (0, 1, 2, 4, 5):
        rows.append([Fraction(int(j == i)) for j in range(6)])
    return rational_curve(rows)


def twisted_cubic_ideal():
    ring = PolynomialRing(QQ, VariableLayout([("x", 4)]))
    x0, x1, x2, x3 = ring.gens()
    return from_ideal(
        3,
        [x1 * x1 - x0 * x2, x1 * x2 - x0 * x3, x2 * x2 - x1 * x3],
        label="twisted cubic",
    )


def _curve_pair(rng):
    """Two distinct parameter points on a P^1-source curve."""
    while True:
        a, b = rng.randint(-12, 12), rng.randint(-12, 12)
        if a != b:
            return a, b


# -- suites -----------------------------------------------------------------


def suite_curves(seed=0, cap=None):
    out = []
    rnc = rational_normal_curve(3)
    T = terracini_ideal(rnc, 2, cap=cap, seed=seed)
    _check(
        out,
        "rational normal cubic, r=2 ideal is <1>",
        "rational-normal-curves-have-empty-loci",
        _certified_empty(T),
        "capped run" if T.capped else "",
    )
    T = terracini_ideal(quintic_curve(), 2, cap=cap, seed=seed)
    _check(
        out,
        "quintic in P^4, r=2 ideal is <1>",
        "quintic-second-locus-empty",
        _certified_empty(T),
        "capped run" if T.capped else "",
    )

    octic = octic_curve(seed)
    T = terracini_ideal(octic, 2, cap=cap, seed=seed)
    _check(
        out,
        "octic in P^7, r=2 ideal is <1>",
        "octic-small-loci-empty",
        _certified_empty(T),
        "capped run" if T.capped else "",
    )
    T = terracini_ideal(octic, 4, cap=cap, seed=seed)
    rep = locus_dimension(T)
    _check(
        out,
        "octic in P^7, r=4 locus nonempty of dim 3",
        "odd-ambient-curves-reach-nonempty-loci",
        (not rep.empty) and rep.locus_dim == 3,
        "report: krull %s, dim %s" % (rep.krull_dim, rep.locus_dim),
    )

    ok = all(
        curve_emptiness_bounds(0, k, target_dim=2 * k + 1) for k in range(2, 12)
    )
    _check(
        out,
        "rational normal curves: complete bound certifies all r",
        "complete-system-curve-bound",
        ok,
    )
    ok = all(
        curve_emptiness_bounds(1, r, target_dim=n)
        for n in range(4, 13, 2)
        for r in range(2, n // 2 + 1)
    )
    _check(
        out,
        "elliptic normal curves: complete bound certifies r <= N/2",
        "complete-system-curve-bound",
        ok,
    )
    ok = (
        curve_emptiness_bounds(0, 2, h0=9, ambient_dim=7)
        and not curve_emptiness_bounds(0, 3, h0=9, ambient_dim=7)
    )
    _check(
        out,
        "octic numeric bound certifies r=2 and is silent at r=3",
        "non-complete-system-curve-bound",
        ok,
    )

    rng = random.Random(seed)
    tc_ideal = twisted_cubic_ideal()
    tc_param = rational_normal_curve(3)
    agree = True
    for _ in range(10):
        a, b = _curve_pair(rng)
        src = PointConfig([[[1, a]], [[1, b]]])
        img = PointConfig(
            [[[1, a, a * a, a ** 3]], [[1, b, b * b, b ** 3]]]
        )
        if membership_param(tc_param, src) != membership_ideal(tc_ideal, img):
            agree = False
            break
    _check(
        out,
        "twisted cubic: parametrization and ideal routes agree on pairs",
        "two-route-agreement",
        agree,
    )
    return out


def suite_delpezzo(seed=0, cap=None):
    out = []
    for t in range(1, 5):
        dp = del_pezzo(t)
        for i in range(1, t + 1):
            cfg = oracle_config(dp, "Y_%d" % i, seed=seed)
            _check(
                out,
                "del pezzo t=%d: pair through base point %d is a member" % (t, i),
                "delpezzo-pair-collinear-with-base-point",
                membership_param(dp, cfg),
            )
        cfg = oracle_config(dp, "generic", r=2, seed=seed)
        _check(
            out,
            "del pezzo t=%d: generic pair is not a member" % t,
            "delpezzo-generic-pair-excluded",
            not membership_param(dp, cfg),
        )
    dp4 = del_pezzo(4)
    cfg = oracle_config(dp4, "U", seed=seed)
    _check(
        out,
        "del pezzo t=4: pair on a conic through the base points is a member",
        "delpezzo-conic-pair",
        membership_param(dp4, cfg),
    )

    dp1 = del_pezzo(1)
    cfg = oracle_config(dp1, "Y", seed=seed)
    _check(
        out,
        "del pezzo t=1: three collinear points are a member triple",
        "delpezzo-three-collinear",
        membership_param(dp1, cfg),
    )
    for pair in ("B_12", "B_13", "B_23"):
        cfg = oracle_config(dp1, pair, seed=seed)
        _check(
            out,
            "del pezzo t=1: triple %s through the base point is a member" % pair,
            "delpezzo-pair-of-triple-through-base-point",
            membership_param(dp1, cfg),
        )
    cfg = oracle_config(dp1, "generic", r=3, seed=seed)
    _check(
        out,
        "del pezzo t=1: generic triple is not a member",
        "delpezzo-generic-triple-excluded",
        not membership_param(dp1, cfg),
    )

    rep = locus_dimension(terracini_ideal(dp1, 2, cap=cap, seed=seed))
    _check(
        out,
        "del pezzo t=1: r=2 locus dimension 3",
        "delpezzo-pair-locus-dimension",
        (not rep.empty) and rep.locus_dim == 3,
        "report: krull %s, dim %s" % (rep.krull_dim, rep.locus_dim),
    )
    rep = locus_dimension(terracini_ideal(dp1, 3, cap=cap, seed=seed))
    _check(
        out,
        "del pezzo t=1: r=3 locus dimension 5",
        "delpezzo-triple-locus-dimension",
        (not rep.empty) and rep.locus_dim == 5,
        "report: krull %s, dim %s" % (rep.krull_dim, rep.locus_dim),
    )
    return out


_VERONESE_MODELS = ((2, 3), (2, 4), (3, 3))


def suite_veronese(seed=0, cap=None):
    out = []
    for n, d in _VERONESE_MODELS:
        vm = veronese(n, d)
        r, _ = first_nonempty_r(vm)
        _check(
            out,
            "veronese(%d,%d): threshold r = %d" % (n, d, r),
            "veronese-threshold-formula",
            r == (d + 3) // 2,
        )
        ok_member = ok_control = True
        for s in range(seed, seed + 5):
            cfg = oracle_config(vm, "collinear", r=r, seed=s)
            ok_member = ok_member and membership_param(vm, cfg)
            cfg = oracle_config(vm, "noncollinear", r=r, seed=s)
            ok_control = ok_control and not membership_param(vm, cfg)
        _check(
            out,
            "veronese(%d,%d): collinear r=%d configurations are members" % (n, d, r),
            "veronese-first-nonempty-is-collinear",
            ok_member,
        )
        _check(
            out,
            "veronese(%d,%d): noncollinear r=%d configurations are not" % (n, d, r),
            "veronese-first-nonempty-is-collinear",
            ok_control,
        )

    v33 = veronese(3, 3)
    ok_member = ok_control = True
    for s in range(seed, seed + 5):
        cfg = oracle_config(v33, "coplanar", r=4, seed=s)
        ok_member = ok_member and membership_param(v33, cfg)
        cfg = oracle_config(v33, "noncoplanar", r=4, seed=s)
        ok_control = ok_control and not membership_param(v33, cfg)
    _check(
        out,
        "veronese(3,3): coplanar quadruples are members",
        "cubic-veronese-fourth-locus-is-coplanar",
        ok_member,
    )
    _check(
        out,
        "veronese(3,3): quadruples spanning a 3-space are not",
        "cubic-veronese-fourth-locus-is-coplanar",
        ok_control,
    )

    v24 = veronese(2, 4)
    ok_member = ok_control = True
    for s in range(seed, seed + 5):
        cfg = oracle_config(v24, "collinear_plus_free", r=4, seed=s)
        ok_member = ok_member and membership_param(v24, cfg)
        cfg = oracle_config(v24, "no3collinear", r=4, seed=s)
        ok_control = ok_control and not membership_param(v24, cfg)
    _check(
        out,
        "veronese(2,4): three collinear plus a free point is a member",
        "veronese-threshold-plus-one-collinear-plus-free",
        ok_member,
    )
    _check(
        out,
        "veronese(2,4): no-three-collinear quadruples are not",
        "veronese-threshold-plus-one-collinear-plus-free",
        ok_control,
    )

    T = terracini_ideal(veronese(2, 3), 2, cap=cap, seed=seed)
    _check(
        out,
        "veronese(2,3): below the threshold the r=2 ideal is <1>",
        "veronese-threshold-formula",
        _certified_empty(T),
        "capped run" if T.capped else "",
    )
    rep = locus_dimension(terracini_ideal(veronese(2, 3), 3, cap=cap, seed=seed))
    _check(
        out,
        "veronese(2,3): r=3 locus dimension 5 (= 2n+r-2)",
        "veronese-threshold-locus-dimension",
        (not rep.empty) and rep.locus_dim == 5,
        "report: krull %s, dim %s" % (rep.krull_dim, rep.locus_dim),
    )
    return out


_SV_THRESHOLD_MODELS = (
    ((1, 1), (1, 3), 2, (1,)),
    ((1, 1), (2, 2), 2, (1, 2)),
    ((1, 1), (3, 3), 3, (1, 2)),
    ((1, 1), (2, 3), 2, (1,)),
)


def _sv_two_point_member(pmap, config):
    """Exact two-point criterion: some factor of degree <= 2 carries the
    difference while every other factor's projections coincide."""
    small = [i for i, d in enumerate(pmap.degrees) if d <= 2]
    pts = config.points
    for i in small:
        if all(
            _factors_equal(pts[0][f], pts[1][f])
            for f in range(config.k)
            if f != i
        ):
            return True
    return False


def _factors_equal(u, v):
    for a in range(len(u)):
        for b in range(a + 1, len(u)):
            if u[a] * v[b] != u[b] * v[a]:
                return False
    return True


def suite_segre_veronese(seed=0, cap=None):
    out = []
    for dims, degs, want_r, want_j in _SV_THRESHOLD_MODELS:
        sv = segre_veronese(dims, degs)
        got = first_nonempty_r(sv)
        _check(
            out,
            "segre-veronese %sx%s: threshold (r, J) = (%d, %s)"
            % (list(dims), list(degs), want_r, list(want_j)),
            "sv-threshold-formula",
            got == (want_r, want_j),
            "got %s" % (got,),
        )

    sv33 = segre_veronese([1, 1], [3, 3])
    ok_member = ok_control = True
    for s in range(seed, seed + 5):
        for i in (1, 2):
            cfg = oracle_config(sv33, "T_%d" % i, r=3, seed=s)
            ok_member = ok_member and membership_param(sv33, cfg)
        cfg = oracle_config(sv33, "generic", r=3, seed=s)
        ok_control = ok_control and not membership_param(sv33, cfg)
    _check(
        out,
        "sv [1,1]x[3,3]: factor-line triples are members",
        "sv-first-nonempty-is-factor-line",
        ok_member,
    )
    _check(
        out,
        "sv [1,1]x[3,3]: triples moving in both factors are not",
        "sv-first-nonempty-is-factor-line",
        ok_control,
    )

    for dims, degs in (((1, 1), (1, 3)), ((1, 1), (2, 2)), ((1, 1), (3, 3))):
        sv = segre_veronese(dims, degs)
        ok = True
        detail = ""
        for s in range(seed, seed + 20):
            if s % 2 == 0 and min(degs) <= 2:
                small = [i for i, d in enumerate(degs) if d <= 2]
                name = "T_%d" % (small[s % len(small)] + 1)
                cfg = oracle_config(sv, name, r=2, seed=s)
            else:
                cfg = oracle_config(sv, "generic", r=2, seed=s)
            want = _sv_two_point_member(sv, cfg)
            gotm = membership_param(sv, cfg)
            if want != gotm:
                ok = False
                detail = "seed %d: criterion %s, rank test %s" % (s, want, gotm)
                break
        _check(
            out,
            "sv %sx%s: two-point criterion matches the rank test"
            % (list(dims), list(degs)),
            "sv-two-point-rule",
            ok,
            detail,
        )

    rep = locus_dimension(
        terracini_ideal(segre_veronese([1, 1], [2, 2]), 2, cap=cap, seed=seed)
    )
    _check(
        out,
        "sv [1,1]x[2,2]: r=2 locus dimension 3",
        "sv-threshold-locus-dimension",
        (not rep.empty) and rep.locus_dim == 3,
        "report: krull %s, dim %s" % (rep.krull_dim, rep.locus_dim),
    )

    try:
        first_nonempty_r(segre_veronese([1, 1], [1, 1]))
        _check(
            out,
            "sv [1,1]x[1,1]: threshold refuses two degree-1 factors",
            "sv-degree-one-assumption",
            False,
            "no error raised",
        )
    except DefectiveCaseError:
        _check(
            out,
            "sv [1,1]x[1,1]: threshold refuses two degree-1 factors",
            "sv-degree-one-assumption",
            True,
        )
    return out


def _rescale(rng, config):
    pts = []
    for p in config.points:
        vecs = []
        for vec in p:
            c = Fraction(rng.randint(1, 9), rng.randint(1, 9))
            if rng.random() < 0.5:
                c = -c
            vecs.append(tuple(c * x for x in vec))
        pts.append(vecs)
    return PointConfig(pts)


def _permute(rng, config):
    pts = list(config.points)
    rng.shuffle(pts)
    return PointConfig(pts)


def suite_properties(seed=0, cap=None):
    out = []
    rng = random.Random(seed)
    v23 = veronese(2, 3)
    sv22 = segre_veronese([1, 1], [2, 2])
    dp1 = del_pezzo(1)
    cases = [
        (v23, "collinear", 3),
        (v23, "noncollinear", 3),
        (sv22, "T_1", 2),
        (sv22, "generic", 2),
        (dp1, "Y_1", 2),
        (dp1, "generic", 2),
    ]
    ok = True
    detail = ""
    for vm, name, r in cases:
        for s in range(seed, seed + 8):
            cfg = oracle_config(vm, name, r=r, seed=s)
            base = membership_param(vm, cfg)
            if membership_param(vm, _permute(rng, cfg)) != base:
                ok, detail = False, "%s/%s seed %d under permutation" % (vm.label, name, s)
                break
            if membership_param(vm, _rescale(rng, cfg)) != base:
                ok, detail = False, "%s/%s seed %d under rescaling" % (vm.label, name, s)
                break
        if not ok:
            break
    _check(
        out,
        "membership invariant under point order and coordinate scaling",
        "stacked-rank-is-alternating-multilinear",
        ok,
        detail,
    )

    ok = True
    for s in range(seed, seed + 10):
        r1 = random.Random(s)
        pt = [Fraction(r1.randint(-9, 9)) for _ in range(3)]
        if not any(pt):
            continue
        mat = stacked_jacobian(v23, PointConfig([[pt]]))
        if mat.rank() != min(v23.ell, v23.target_dim + 1):
            ok = False
            break
    _check(
        out,
        "a single smooth point always meets the rank threshold",
        "first-locus-always-empty",
        ok,
    )

    v33 = veronese(3, 3)
    ok = True
    for s in range(seed, seed + 6):
        cfg = oracle_config(v33, "collinear", r=3, seed=s)
        if not membership_param(v33, cfg):
            ok = False
            break
        r1 = random.Random(s + 1000)
        while True:
            extra = tuple(Fraction(r1.randint(-9, 9)) for _ in range(4))
            if any(extra) and all(
                not _factors_equal(extra, p[0]) for p in cfg.points
            ):
                break
        bigger = PointConfig(list(cfg.points) + [[extra]])
        if not membership_param(v33, bigger):
            ok = False
            break
    _check(
        out,
        "members stay members when a smooth point is added",
        "failing-conditions-persist-under-extension",
        ok,
    )

    ok = True
    for r in (3, 4, 5):
        cfg = oracle_config(v33, "collinear", r=r, seed=seed)
        if not membership_param(v33, cfg):
            ok = False
            break
    _check(
        out,
        "points on a line in P^3 are members whenever 2r > d+1",
        "linear-subvariety-members",
        ok,
    )

    T = terracini_ideal(v23, 3, cap=cap, seed=seed)
    field = T.ring.field
    ok = True
    detail = ""
    for s in range(seed, seed + 3):
        cfg = oracle_config(v23, "collinear", r=3, seed=s)
        vals = []
        for i in range(3):
            vals.extend(cfg.flat(i, field))
        if any(g.evaluate(vals) != field.zero for g in T.gens):
            ok, detail = False, "member config seed %d hit a nonzero generator" % s
            break
        cfg = oracle_config(v23, "noncollinear", r=3, seed=s)
        vals = []
        for i in range(3):
            vals.extend(cfg.flat(i, field))
        if all(g.evaluate(vals) == field.zero for g in T.gens):
            ok, detail = False, "control config seed %d annihilated all generators" % s
            break
    _check(
        out,
        "locus ideal vanishes on member configs and not on controls",
        "ideal-route-and-rank-route-cut-the-same-locus",
        ok,
        detail,
    )
    return out


SUITES = {
    "curves": suite_curves,
    "delpezzo": suite_delpezzo,
    "veronese": suite_veronese,
    "segre-veronese": suite_segre_veronese,
    "properties": suite_properties,
}

SUITE_NAMES = tuple(sorted(SUITES))


def run_suite(name, seed=0, cap=None):
    try:
        fn = SUITES[name]
    except KeyError:
        from .errors import InputError

        raise InputError(
            "unknown suite %r; available: %s" % (name, ", ".join(SUITE_NAMES))
        ) from None
    return fn(seed=seed, cap=cap)
