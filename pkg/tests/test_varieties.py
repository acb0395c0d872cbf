"""Variety constructors: embeddings, curves, del Pezzo charts, TOML specs."""

from fractions import Fraction
from math import comb

import pytest

from terracini import (
    DEL_PEZZO_BASE_POINTS,
    DegenerateVarietyError,
    IdealVariety,
    InputError,
    LayoutError,
    ParamMap,
    PolynomialRing,
    QQ,
    VariableLayout,
    del_pezzo,
    from_ideal,
    load_variety,
    parse_polynomial,
    rational_curve,
    rational_normal_curve,
    segre_veronese,
    variety_from_table,
    veronese,
)
from terracini.varieties import validate_generic_rank


def test_veronese_component_count_and_degrees():
    for n, d in ((1, 3), (2, 3), (2, 4), (3, 3)):
        vm = veronese(n, d)
        assert len(vm.components) == comb(n + d, d)
        assert vm.target_dim == comb(n + d, d) - 1
        assert vm.source_dims == (n,)
        assert vm.degrees == (d,)
        assert all(f.multidegree() == (d,) for f in vm.components)
        # distinct monomials: the embedding is injective on coordinates
        keys = {f.leading_monomial() for f in vm.components}
        assert len(keys) == len(vm.components)


def test_veronese_generic_rank():
    vm = veronese(2, 3)
    assert vm.ell == 3  # affine cone over a surface
    assert vm.is_nondegenerate()


def test_veronese_rejects_bad_input():
    with pytest.raises(InputError):
        veronese(0, 3)
    with pytest.raises(InputError):
        veronese(2, 0)


def test_segre_veronese_structure():
    sv = segre_veronese([1, 1], [2, 2])
    assert len(sv.components) == 9
    assert sv.nfactors == 2
    assert sv.source_dim == 2
    assert sv.ell == 3
    assert all(f.multidegree() == (2, 2) for f in sv.components)

    sv = segre_veronese([1, 3], [1, 3])
    assert len(sv.components) == 2 * comb(6, 3)
    assert sv.source_dims == (1, 3)


def test_segre_veronese_rejects_bad_input():
    with pytest.raises(InputError):
        segre_veronese([1, 1], [2])
    with pytest.raises(InputError):
        segre_veronese([], [])
    with pytest.raises(InputError):
        segre_veronese([0, 1], [1, 1])


def test_rational_normal_curve():
    for d in (3, 5, 8):
        pm = rational_normal_curve(d)
        assert pm.target_dim == d
        assert pm.degrees == (d,)
        assert pm.ell == 2


def test_rational_curve_projection_drops_ambient_dim():
    rows = [
        [Fraction(int(j == i)) for j in range(9)]
        for i in range(9)
        if i != 4
    ]
    pm = rational_curve(rows)
    assert pm.target_dim == 7
    assert pm.degrees == (8,)
    assert pm.ell == 2  # still an immersion at general points


def test_rational_curve_rejects_dependent_rows():
    with pytest.raises(DegenerateVarietyError):
        rational_curve([[1, 0, 0, 0], [2, 0, 0, 0]])
    with pytest.raises(InputError):
        rational_curve([])
    with pytest.raises(InputError):
        rational_curve([[1, 2], [1, 2, 3]])


def test_degenerate_parametrization_caught_by_rank_probe():
    R = PolynomialRing(QQ, VariableLayout([("x", 2)]))
    x0, x1 = R.gens()
    # both components proportional: the "image" is a point
    pm = ParamMap((1,), (2,), [x0 * x0, 2 * x0 * x0])
    with pytest.raises(DegenerateVarietyError):
        pm.ell
    assert validate_generic_rank(pm, trials=3, seed=0) == 1


def test_param_map_multidegree_guard():
    R = PolynomialRing(QQ, VariableLayout([("x", 2)]))
    x0, x1 = R.gens()
    with pytest.raises(DegenerateVarietyError):
        ParamMap((1,), (2,), [x0 * x0, x0 * x1 + x1])  # inhomogeneous
    with pytest.raises(DegenerateVarietyError):
        ParamMap((1,), (3,), [x0 * x0, x0 * x1])  # wrong degree


def test_del_pezzo_components_vanish_at_base_points():
    for t in range(1, 5):
        dp = del_pezzo(t)
        assert len(dp.components) == 10 - t
        assert dp.base_points == DEL_PEZZO_BASE_POINTS[:t]
        assert dp.target_dim == 9 - t
        assert dp.ell == 3
        for p in dp.base_points:
            vals = [QQ.element(c) for c in p]
            assert all(f.evaluate(vals) == 0 for f in dp.components)


def test_del_pezzo_custom_base_points():
    pts = [(1, 2, 1), (0, 1, 1), (1, 0, 3)]
    dp = del_pezzo(3, base_points=pts)
    assert len(dp.components) == 7
    for p in pts:
        vals = [QQ.element(c) for c in p]
        assert all(f.evaluate(vals) == 0 for f in dp.components)


def test_del_pezzo_rejects_bad_input():
    with pytest.raises(InputError):
        del_pezzo(0)
    with pytest.raises(InputError):
        del_pezzo(5)
    with pytest.raises(InputError):
        del_pezzo(2, base_points=[(1, 0, 0)])
    # a repeated base point imposes dependent conditions
    with pytest.raises(DegenerateVarietyError):
        del_pezzo(2, base_points=[(1, 0, 0), (2, 0, 0)])


def elliptic_quartic_gens(ring):
    return [
        parse_polynomial(ring, "x_0^2 + x_1^2 - x_2^2 - x_3^2"),
        parse_polynomial(ring, "x_0^2 + 2*x_1^2 - 3*x_2^2 - 4*x_3^2"),
    ]


def test_ideal_variety_codimension():
    R = PolynomialRing(QQ, VariableLayout([("x", 4)]))
    x0, x1, x2, x3 = R.gens()
    tc = from_ideal(3, [x1 * x1 - x0 * x2, x1 * x2 - x0 * x3, x2 * x2 - x1 * x3])
    assert tc.ell == 2
    assert tc.source_dim == 1
    eq = from_ideal(3, elliptic_quartic_gens(R))
    assert eq.ell == 2
    assert eq.source_dim == 1


def test_ideal_variety_guards():
    R = PolynomialRing(QQ, VariableLayout([("x", 4)]))
    x0, x1, x2, x3 = R.gens()
    with pytest.raises(LayoutError):
        from_ideal(4, [x0 * x1 - x2 * x3])  # ambient needs 5 variables
    with pytest.raises(DegenerateVarietyError):
        from_ideal(3, [x0 * x0 - x1])  # inhomogeneous generator
    with pytest.raises(InputError):
        from_ideal(3, [])


def test_variety_from_table_dispatch():
    vm = variety_from_table({"kind": "veronese", "n": 2, "d": 3})
    assert vm.label == "veronese(2,3)"
    sv = variety_from_table({"kind": "segre-veronese", "n": [1, 1], "d": [2, 2]})
    assert sv.nfactors == 2
    dp = variety_from_table({"kind": "del-pezzo", "t": 2})
    assert len(dp.components) == 8
    iv = variety_from_table(
        {"kind": "ideal", "n": 3, "generators": ["x_0*x_2 - x_1^2"]}
    )
    assert isinstance(iv, IdealVariety)
    with pytest.raises(InputError):
        variety_from_table({"kind": "flag-variety"})
    with pytest.raises(InputError):
        variety_from_table({"kind": "veronese", "n": 2})
    with pytest.raises(InputError):
        variety_from_table({"kind": "veronese", "n": "2", "d": 3})


def test_load_variety_round_trip(tmp_path):
    path = tmp_path / "v.toml"
    path.write_text('[variety]\nkind = "veronese"\nn = 2\nd = 4\n')
    vm = load_variety(path)
    assert vm.label == "veronese(2,4)"
    bad = tmp_path / "bad.toml"
    bad.write_text("[variety\n")
    with pytest.raises(InputError):
        load_variety(bad)
    with pytest.raises(InputError):
        load_variety(tmp_path / "missing.toml")
    nosec = tmp_path / "nosec.toml"
    nosec.write_text("[other]\nkind = 'veronese'\n")
    with pytest.raises(InputError):
        load_variety(nosec)
