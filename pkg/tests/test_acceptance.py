"""End-to-end acceptance battery.

Each test prints exactly one PASS/FAIL line (run with -s to see them all).
Stated wall-clock budgets are asserted together with the mathematical
claim, so a regression in either shows up as a failed criterion.
Groebner runs use the default prime field; membership ranks run over q.
"""

import random
import time
from fractions import Fraction

from terracini import (
    PointConfig,
    curve_emptiness_bounds,
    del_pezzo,
    first_nonempty_r,
    is_groebner_basis,
    locus_dimension,
    membership_ideal,
    membership_param,
    oracle_config,
    rational_normal_curve,
    segre_veronese,
    terracini_ideal,
    veronese,
)
from terracini.suites import octic_curve, quintic_curve, twisted_cubic_ideal


def _line(tag, ok, elapsed, detail=""):
    msg = "%s %s [%.1fs]" % ("PASS" if ok else "FAIL", tag, elapsed)
    if detail and not ok:
        msg += " (%s)" % detail
    print(msg, flush=True)
    assert ok, msg


def _proportional(u, v):
    for a in range(len(u)):
        for b in range(a + 1, len(u)):
            if u[a] * v[b] != u[b] * v[a]:
                return False
    return True


def test_01_rational_curve_pair_loci_are_unit_ideals():
    t0 = time.monotonic()
    ok = True
    for pm in (rational_normal_curve(3), quintic_curve()):
        t1 = time.monotonic()
        T = terracini_ideal(pm, 2)
        ok = ok and T.is_unit() and not T.capped
        ok = ok and time.monotonic() - t1 < 5.0
    _line(
        "[01] rational normal cubic and quintic in P^4: r=2 ideal is <1>",
        ok,
        time.monotonic() - t0,
    )


def test_02_octic_loci_empty_until_r4():
    t0 = time.monotonic()
    octic = octic_curve(0)
    ok = terracini_ideal(octic, 2).is_unit()
    ok = ok and terracini_ideal(octic, 3).is_unit()
    rep = locus_dimension(terracini_ideal(octic, 4))
    ok = ok and (not rep.empty) and rep.locus_dim == 3
    elapsed = time.monotonic() - t0
    _line(
        "[02] octic in P^7: r=2,3 ideals are <1>, r=4 proper of dim 3",
        ok and elapsed < 600.0,
        elapsed,
        "report: krull %s, dim %s" % (rep.krull_dim, rep.locus_dim),
    )


def test_03_veronese_cubic_first_locus_dimension():
    t0 = time.monotonic()
    rep = locus_dimension(terracini_ideal(veronese(2, 3), 3))
    elapsed = time.monotonic() - t0
    _line(
        "[03] veronese (n,d)=(2,3): r=3 locus dimension is 2n+r-2 = 5",
        (not rep.empty) and rep.locus_dim == 5 and elapsed < 120.0,
        elapsed,
        "report: krull %s, dim %s" % (rep.krull_dim, rep.locus_dim),
    )


def test_04_veronese_first_nonempty_membership_split():
    t0 = time.monotonic()
    ok = True
    detail = ""
    for n, d in ((2, 3), (2, 4), (3, 3)):
        vm = veronese(n, d)
        r = (d + 3) // 2
        for s in range(50):
            if not membership_param(vm, oracle_config(vm, "collinear", r=r, seed=s)):
                ok, detail = False, "(%d,%d) collinear seed %d" % (n, d, s)
                break
            if membership_param(vm, oracle_config(vm, "noncollinear", r=r, seed=s)):
                ok, detail = False, "(%d,%d) noncollinear seed %d" % (n, d, s)
                break
        if not ok:
            break
    elapsed = time.monotonic() - t0
    _line(
        "[04] veronese d=3,4: at r=ceil((d+2)/2) members are exactly the"
        " collinear configs, 50+50 seeds per model",
        ok and elapsed < 30.0,
        elapsed,
        detail,
    )


def test_05_veronese_quartic_second_locus_membership_split():
    t0 = time.monotonic()
    vm = veronese(2, 4)
    ok = True
    detail = ""
    for s in range(50):
        if not membership_param(
            vm, oracle_config(vm, "collinear_plus_free", r=4, seed=s)
        ):
            ok, detail = False, "collinear_plus_free seed %d" % s
            break
        if membership_param(vm, oracle_config(vm, "no3collinear", r=4, seed=s)):
            ok, detail = False, "no3collinear seed %d" % s
            break
    _line(
        "[05] veronese (2,4) at r=4: 3-collinear-plus-free in, no-3-collinear"
        " out, 50+50 seeds",
        ok,
        time.monotonic() - t0,
        detail,
    )


def test_06_del_pezzo_loci():
    t0 = time.monotonic()
    ok = True
    detail = ""
    for t in range(1, 5):
        dp = del_pezzo(t)
        for s in range(3):
            for i in range(1, t + 1):
                if not membership_param(
                    dp, oracle_config(dp, "Y_%d" % i, seed=s)
                ):
                    ok, detail = False, "t=%d Y_%d seed %d" % (t, i, s)
            if membership_param(dp, oracle_config(dp, "generic", r=2, seed=s)):
                ok, detail = False, "t=%d generic pair seed %d" % (t, s)
    for s in range(3):
        if not membership_param(
            del_pezzo(4), oracle_config(del_pezzo(4), "U", seed=s)
        ):
            ok, detail = False, "t=4 U seed %d" % s

    dp1 = del_pezzo(1)
    t1 = time.monotonic()
    rep2 = locus_dimension(terracini_ideal(dp1, 2))
    ok = ok and (not rep2.empty) and rep2.locus_dim == 3
    ok = ok and time.monotonic() - t1 < 600.0
    t1 = time.monotonic()
    rep3 = locus_dimension(terracini_ideal(dp1, 3))
    ok = ok and (not rep3.empty) and rep3.locus_dim == 5
    ok = ok and time.monotonic() - t1 < 600.0
    _line(
        "[06] del pezzo: base-point pairs and 4-point conics are members,"
        " generic pairs are not; t=1 locus dims are 3 (r=2) and 5 (r=3)",
        ok,
        time.monotonic() - t0,
        detail or "reports: r=2 dim %s, r=3 dim %s"
        % (rep2.locus_dim, rep3.locus_dim),
    )


def _two_point_rule(degrees, config):
    """A pair is a member exactly when some factor of degree <= 2 carries
    the difference while all other projections coincide."""
    pts = config.points
    for i, d in enumerate(degrees):
        if d > 2:
            continue
        if all(
            _proportional(pts[0][f], pts[1][f])
            for f in range(config.k)
            if f != i
        ):
            return True
    return False


def test_07_segre_veronese_thresholds_and_pairs():
    t0 = time.monotonic()
    ok = True
    detail = ""

    want = {
        (1, 3): (2, (1,)),
        (2, 2): (2, (1, 2)),
        (3, 3): (3, (1, 2)),
        (2, 3): (2, (1,)),
    }
    for degs, expected in want.items():
        got = first_nonempty_r(segre_veronese([1, 1], list(degs)))
        if got != expected:
            ok, detail = False, "threshold %s: got %s" % (degs, (got,))

    for degs in ((1, 3), (2, 2), (3, 3), (2, 3)):
        sv = segre_veronese([1, 1], list(degs))
        small = [i for i, d in enumerate(degs) if d <= 2]
        for s in range(200):
            if s % 2 == 0 and small:
                name = "T_%d" % (small[(s // 2) % len(small)] + 1)
                cfg = oracle_config(sv, name, r=2, seed=s)
            else:
                cfg = oracle_config(sv, "generic", r=2, seed=s)
            if _two_point_rule(degs, cfg) != membership_param(sv, cfg):
                ok, detail = False, "pair rule %s seed %d" % (degs, s)
                break

    sv33 = segre_veronese([1, 1], [3, 3])
    for s in range(10):
        for i in (1, 2):
            if not membership_param(
                sv33, oracle_config(sv33, "T_%d" % i, r=3, seed=s)
            ):
                ok, detail = False, "sv33 T_%d seed %d" % (i, s)
        if membership_param(sv33, oracle_config(sv33, "generic", r=3, seed=s)):
            ok, detail = False, "sv33 generic seed %d" % s

    rep = locus_dimension(terracini_ideal(segre_veronese([1, 1], [2, 2]), 2))
    ok = ok and (not rep.empty) and rep.locus_dim == 3

    elapsed = time.monotonic() - t0
    _line(
        "[07] segre-veronese: thresholds for four bidegrees, two-point rule"
        " on 200 pairs each, factor-line triples at r=3, (2,2) r=2 locus"
        " dimension 3",
        ok and elapsed < 600.0,
        elapsed,
        detail or "(2,2) report: krull %s, dim %s"
        % (rep.krull_dim, rep.locus_dim),
    )


def test_08_elliptic_quartic_ideal_route():
    from terracini import PolynomialRing, QQ, VariableLayout, from_ideal
    from terracini.multipoly import parse_polynomial

    t0 = time.monotonic()
    R = PolynomialRing(QQ, VariableLayout([("x", 4)]))
    eq = from_ideal(
        3,
        [
            parse_polynomial(R, "x_0*x_1 - x_2^2"),
            parse_polynomial(R, "x_0^2 + x_3^2 - 2*x_1*x_2"),
        ],
        label="elliptic quartic",
    )
    rep = locus_dimension(terracini_ideal(eq, 2))
    elapsed = time.monotonic() - t0
    _line(
        "[08] elliptic quartic in P^3, ideal route r=2: nonempty locus of"
        " dimension 1, flagged exact",
        (not rep.empty)
        and 1 <= rep.locus_dim < 2
        and rep.exactness == "exact"
        and elapsed < 300.0,
        elapsed,
        "report: krull %s, dim %s, exactness %s"
        % (rep.krull_dim, rep.locus_dim, rep.exactness),
    )


def _rescaled(rng, config):
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


def _permuted(rng, config):
    pts = list(config.points)
    rng.shuffle(pts)
    return PointConfig(pts)


def test_09_property_battery():
    t0 = time.monotonic()
    ok = True
    detail = ""

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
    rng = random.Random(20260814)
    for s in range(100):
        vm, name, r = cases[s % len(cases)]
        cfg = oracle_config(vm, name, r=r, seed=s)
        base = membership_param(vm, cfg)
        if membership_param(vm, _permuted(rng, cfg)) != base:
            ok, detail = False, "permutation broke %s seed %d" % (name, s)
            break
        if membership_param(vm, _rescaled(rng, cfg)) != base:
            ok, detail = False, "rescaling broke %s seed %d" % (name, s)
            break

    v33 = veronese(3, 3)
    for s in range(50):
        if not ok:
            break
        cfg = oracle_config(v33, "collinear", r=3, seed=s)
        if not membership_param(v33, cfg):
            ok, detail = False, "monotonicity base seed %d" % s
            break
        r1 = random.Random(s + 7000)
        while True:
            extra = tuple(Fraction(r1.randint(-9, 9)) for _ in range(4))
            if any(extra) and all(
                not _proportional(extra, p[0]) for p in cfg.points
            ):
                break
        if not membership_param(v33, PointConfig(list(cfg.points) + [[extra]])):
            ok, detail = False, "extension lost membership, seed %d" % s
            break

    T = terracini_ideal(v23, 3)
    field = T.ring.field
    for s in range(10):
        if not ok:
            break
        cfg = oracle_config(v23, "collinear", r=3, seed=s)
        vals = []
        for i in range(3):
            vals.extend(cfg.flat(i, field))
        if any(g.evaluate(vals) != field.zero for g in T.gens):
            ok, detail = False, "member seed %d hit a nonzero generator" % s
            break
        cfg = oracle_config(v23, "noncollinear", r=3, seed=s)
        vals = []
        for i in range(3):
            vals.extend(cfg.flat(i, field))
        if all(g.evaluate(vals) == field.zero for g in T.gens):
            ok, detail = False, "control seed %d annihilated every generator" % s
            break

    for ideal in (T, terracini_ideal(rational_normal_curve(3), 2)):
        if not is_groebner_basis(ideal.groebner_basis()):
            ok, detail = False, "a reduced basis failed the S-pair check"

    tc_param = rational_normal_curve(3)
    tc_ideal = twisted_cubic_ideal()
    r1 = random.Random(99)
    for _ in range(50):
        if not ok:
            break
        while True:
            a, b = r1.randint(-12, 12), r1.randint(-12, 12)
            if a != b:
                break
        src = PointConfig([[[1, a]], [[1, b]]])
        img = PointConfig([[[1, a, a * a, a ** 3]], [[1, b, b * b, b ** 3]]])
        if membership_param(tc_param, src) != membership_ideal(tc_ideal, img):
            ok, detail = False, "routes disagree at (%d, %d)" % (a, b)
            break

    _line(
        "[09] property battery: invariance x100, monotonicity x50, S-pair"
        " postcheck on reduced bases, ideal/rank cross-validation, two-route"
        " agreement x50",
        ok,
        time.monotonic() - t0,
        detail,
    )


def test_10_curve_emptiness_table():
    t0 = time.monotonic()
    ok = True
    detail = ""
    for n in range(3, 10):
        for r in range(2, (n + 1) // 2 + 1):
            if curve_emptiness_bounds(0, r, target_dim=n) is not True:
                ok, detail = False, "rational N=%d r=%d" % (n, r)
            want = r <= n // 2
            if curve_emptiness_bounds(1, r, target_dim=n) is not want:
                ok, detail = False, "elliptic N=%d r=%d" % (n, r)
    _line(
        "[10] complete-system bound reproduces the rational/elliptic normal"
        " curve table for N in 3..9, all admissible r",
        ok,
        time.monotonic() - t0,
        detail,
    )
