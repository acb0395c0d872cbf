"""Constructors for the variety families the locus computations consume.

Parametrized families (Veronese, Segre-Veronese, rational curves, del Pezzo
surfaces) are stored as tuples of multihomogeneous component polynomials
over Q together with their source block layout.  Ideal-defined varieties
carry their generators and the projective codimension derived from the
Krull dimension of the ambient quotient.
"""

from fractions import Fraction
from itertools import combinations_with_replacement, product

from .errors import (
    DegenerateVarietyError,
    InputError,
    LayoutError,
    MathError,
)
from .fields import QQ
from .groebner import Ideal
from .linalg import PolyMatrix, ScalarMatrix
from .multipoly import (
    Polynomial,
    PolynomialRing,
    VariableLayout,
    parse_polynomial,
)

# block names for the source factors; beyond three factors fall back to
# indexed names
_FACTOR_NAMES = ("x", "y", "z")


def _factor_blocks(dims):
    if len(dims) <= len(_FACTOR_NAMES):
        names = _FACTOR_NAMES[: len(dims)]
    else:
        names = tuple("x%d" % i for i in range(len(dims)))
    return tuple((name, n + 1) for name, n in zip(names, dims))


def _as_fraction(value):
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise InputError("cannot read %r as a rational number" % (value,))


class ParamMap:
    """A projective or multiprojective parametrized family.

    source_dims lists the factor dimensions (n_1, ..., n_k), degrees the
    multidegree of the components; the components live in one ring over Q
    with one variable block per factor.  The generic Jacobian rank is
    measured at seeded random points on first use and must equal
    sum(n_i) + 1, the affine cone dimension of the image.
    """

    def __init__(self, source_dims, degrees, components, label=""):
        self.source_dims = tuple(int(n) for n in source_dims)
        self.degrees = tuple(int(d) for d in degrees)
        if len(self.source_dims) != len(self.degrees):
            raise InputError("factor and degree counts differ")
        if not components:
            raise InputError("a parametrization needs components")
        self.ring = components[0].ring
        for f in components:
            self.ring.check_same(f.ring)
            if not f.is_multihomogeneous():
                raise DegenerateVarietyError(
                    "component %s is not multihomogeneous" % f
                )
            if f.terms and f.multidegree() != self.degrees:
                raise DegenerateVarietyError(
                    "component %s has multidegree %s, expected %s"
                    % (f, f.multidegree(), self.degrees)
                )
        self.components = tuple(components)
        self.label = label
        self._jacobian = None
        self._rank = None

    @property
    def nfactors(self):
        return len(self.source_dims)

    @property
    def target_dim(self):
        """Dimension m of the target projective space."""
        return len(self.components) - 1

    @property
    def source_dim(self):
        """Dimension of the source, also of the image for these families."""
        return sum(self.source_dims)

    def jacobian(self):
        """Matrix of partials, rows over source variables, columns over
        components."""
        if self._jacobian is None:
            rows = [
                [f.partial_derivative(v) for f in self.components]
                for v in range(self.ring.nvars)
            ]
            self._jacobian = PolyMatrix(self.ring, rows)
        return self._jacobian

    @property
    def ell(self):
        """Generic Jacobian rank; the minor size the locus pipeline uses."""
        if self._rank is None:
            rank = validate_generic_rank(self, trials=3, seed=0)
            expected = self.source_dim + 1
            if rank != expected:
                raise DegenerateVarietyError(
                    "generic Jacobian rank %d, expected %d; the"
                    " parametrization does not immerse the source" % (rank, expected)
                )
            self._rank = rank
        return self._rank

    def coefficient_matrix(self):
        """Components as rows over the union of their monomials."""
        monos = sorted({k for f in self.components for k, _ in f.terms})
        col = {k: j for j, k in enumerate(monos)}
        rows = []
        for f in self.components:
            row = [QQ.zero] * len(monos)
            for k, c in f.terms:
                row[col[k]] = c
            rows.append(row)
        return ScalarMatrix(QQ, rows)

    def is_nondegenerate(self):
        """True when the components are linearly independent."""
        return self.coefficient_matrix().rank() == len(self.components)

    def __repr__(self):
        return "ParamMap(%s, n=%s, d=%s, m=%d)" % (
            self.label or "custom",
            list(self.source_dims),
            list(self.degrees),
            self.target_dim,
        )


class IdealVariety:
    """A variety in P^n presented by homogeneous ideal generators."""

    def __init__(self, n, gens, label=""):
        if not gens:
            raise InputError("an ideal variety needs generators")
        self.n = int(n)
        self.ring = gens[0].ring
        if self.ring.nvars != self.n + 1:
            raise LayoutError(
                "generators live in %d variables, ambient P^%d needs %d"
                % (self.ring.nvars, self.n, self.n + 1)
            )
        for g in gens:
            self.ring.check_same(g.ring)
            if not g.is_homogeneous():
                raise DegenerateVarietyError("generator %s is not homogeneous" % g)
        self.gens = tuple(gens)
        self.ideal = Ideal(self.ring, gens)
        self.label = label
        self._jacobian = None
        self._ell = None

    @property
    def ell(self):
        """Projective codimension, the minor size of the locus pipeline."""
        if self._ell is None:
            krull = self.ideal.krull_dimension()
            # affine cone dimension krull = dim X + 1
            ell = self.n - krull + 1
            if krull <= 0 or ell < 1:
                raise DegenerateVarietyError(
                    "generators cut out nothing usable (Krull dimension %d)" % krull
                )
            self._ell = ell
        return self._ell

    @property
    def source_dim(self):
        """Projective dimension of the variety."""
        return self.n - self.ell

    @property
    def target_dim(self):
        return self.n

    def jacobian(self):
        """Matrix of partials, rows over generators, columns over variables.

        The locus pipeline works with the transpose orientation implicitly:
        stacking per-point copies of this matrix and taking ranks equals
        working with the stacked transpose, since row and column subsets
        enter minors symmetrically.
        """
        if self._jacobian is None:
            rows = [
                [g.partial_derivative(v) for v in range(self.ring.nvars)]
                for g in self.gens
            ]
            self._jacobian = PolyMatrix(self.ring, rows)
        return self._jacobian

    def is_nondegenerate(self):
        """True when the ideal contains no linear form."""
        return all(g.degree() != 1 for g in self.ideal.groebner_basis())

    def __repr__(self):
        return "IdealVariety(%s in P^%d, %d generators)" % (
            self.label or "custom",
            self.n,
            len(self.gens),
        )


# -- family constructors --------------------------------------------------


def veronese(n, d):
    """All degree-d monomials on P^n, in lexicographic exponent order."""
    if n < 1 or d < 1:
        raise InputError("veronese needs n >= 1 and d >= 1")
    ring = PolynomialRing(QQ, VariableLayout(_factor_blocks((n,))))
    comps = []
    for pick in combinations_with_replacement(range(n + 1), d):
        exps = [0] * (n + 1)
        for v in pick:
            exps[v] += 1
        comps.append(ring.monomial(tuple(exps), QQ.one))
    return ParamMap((n,), (d,), comps, label="veronese(%d,%d)" % (n, d))


def segre_veronese(dims, degrees):
    """Products of per-factor monomials of the given multidegree."""
    dims = list(dims)
    degrees = list(degrees)
    if len(dims) != len(degrees):
        raise InputError("factor and degree lists differ in length")
    if len(dims) < 1:
        raise InputError("at least one factor is required")
    if any(n < 1 for n in dims) or any(d < 1 for d in degrees):
        raise InputError("factor dimensions and degrees must be >= 1")
    ring = PolynomialRing(QQ, VariableLayout(_factor_blocks(dims)))
    per_factor = []
    offset = 0
    for n, d in zip(dims, degrees):
        monos = []
        for pick in combinations_with_replacement(range(n + 1), d):
            exps = [0] * ring.nvars
            for v in pick:
                exps[offset + v] += 1
            monos.append(tuple(exps))
        per_factor.append(monos)
        offset += n + 1
    comps = []
    for combo in product(*per_factor):
        exps = tuple(sum(es) for es in zip(*combo))
        comps.append(ring.monomial(exps, QQ.one))
    return ParamMap(
        dims,
        degrees,
        comps,
        label="segre_veronese(%s,%s)" % (dims, degrees),
    )


def rational_curve(coefficients):
    """The curve t -> [g_0(t) : ... : g_m(t)] from binary-form coefficient
    rows.

    Row j holds the d+1 coefficients of g_j against x^d, x^(d-1) y, ..., y^d.
    The rows must be linearly independent, otherwise the image sits in a
    hyperplane and the map is degenerate.
    """
    rows = [[_as_fraction(c) for c in row] for row in coefficients]
    if not rows:
        raise InputError("a curve needs at least one coefficient row")
    width = len(rows[0])
    if width < 2 or any(len(row) != width for row in rows):
        raise InputError("coefficient rows must share one length >= 2")
    d = width - 1
    if ScalarMatrix(QQ, rows).rank() != len(rows):
        raise DegenerateVarietyError(
            "coefficient rows are linearly dependent; the image is degenerate"
        )
    ring = PolynomialRing(QQ, VariableLayout(_factor_blocks((1,))))
    comps = []
    for row in rows:
        f = ring.zero()
        for c, coeff in enumerate(row):
            if coeff:
                f = f + ring.monomial((d - c, c), coeff)
        comps.append(f)
    return ParamMap((1,), (d,), comps, label="rational_curve(d=%d)" % d)


def rational_normal_curve(d):
    """Degree-d rational normal curve, identity coefficient rows."""
    eye = [[Fraction(int(i == j)) for j in range(d + 1)] for i in range(d + 1)]
    pm = rational_curve(eye)
    pm.label = "rational_normal_curve(%d)" % d
    return pm


DEL_PEZZO_BASE_POINTS = (
    (Fraction(1), Fraction(0), Fraction(0)),
    (Fraction(0), Fraction(1), Fraction(0)),
    (Fraction(0), Fraction(0), Fraction(1)),
    (Fraction(1), Fraction(1), Fraction(1)),
)


def del_pezzo(t, base_points=None):
    """Plane cubics through t general base points, as a map P^2 -> P^(9-t).

    The base points default to the standard four (no three collinear); any
    general quadruple is projectively equivalent to them.  The component
    basis is the exact kernel of the point-evaluation matrix on the 10
    cubic monomials.  Note the parametrization only covers the chart away
    from the base points; the exceptional curves have no preimage here.
    """
    if not 1 <= t <= 4:
        raise InputError("del_pezzo needs t between 1 and 4")
    pts = DEL_PEZZO_BASE_POINTS if base_points is None else tuple(
        tuple(_as_fraction(c) for c in p) for p in base_points
    )
    if len(pts) < t or any(len(p) != 3 for p in pts[:t]):
        raise InputError("need %d base points with 3 coordinates each" % t)
    ring = PolynomialRing(QQ, VariableLayout(_factor_blocks((2,))))
    monos = []
    for pick in combinations_with_replacement(range(3), 3):
        exps = [0, 0, 0]
        for v in pick:
            exps[v] += 1
        monos.append(tuple(exps))
    rows = []
    for p in pts[:t]:
        if all(c == 0 for c in p):
            raise InputError("base point has all coordinates zero")
        rows.append(
            [p[0] ** e0 * p[1] ** e1 * p[2] ** e2 for e0, e1, e2 in monos]
        )
    kernel = ScalarMatrix(QQ, rows).kernel_basis()
    if len(kernel) != 10 - t:
        raise DegenerateVarietyError(
            "base points impose dependent conditions on cubics"
        )
    comps = []
    for vec in kernel:
        f = ring.zero()
        for exps, coeff in zip(monos, vec):
            if coeff:
                f = f + ring.monomial(exps, coeff)
        comps.append(f)
    pm = ParamMap((2,), (3,), comps, label="del_pezzo(%d)" % t)
    # the special-configuration generators need to know where the map is
    # undefined, so the base points travel with the parametrization
    pm.base_points = pts[:t]
    return pm


def from_ideal(n, gens, label=""):
    """Variety in P^n from homogeneous generators."""
    return IdealVariety(n, gens, label=label)


def validate_generic_rank(pmap, trials, seed):
    """Max Jacobian rank over seeded random points with nonzero coordinates."""
    if trials < 1:
        raise InputError("trials must be positive")
    import random

    rng = random.Random(seed)
    jac = pmap.jacobian()
    best = 0
    for _ in range(trials):
        values = [
            QQ.element(rng.randrange(1, 1000), rng.randrange(1, 50))
            for _ in range(pmap.ring.nvars)
        ]
        rows = [
            [entry.evaluate(values) for entry in row] for row in jac.rows
        ]
        best = max(best, ScalarMatrix(QQ, rows).rank())
    return best


# -- TOML variety files ----------------------------------------------------


def _require(table, key, kind_name):
    if key not in table:
        raise InputError("variety kind %r needs the %r key" % (kind_name, key))
    return table[key]


def variety_from_table(table):
    """Build a variety from a parsed [variety] table."""
    kind = _require(table, "kind", "?")
    if kind == "veronese":
        n = _require(table, "n", kind)
        d = _require(table, "d", kind)
        if not isinstance(n, int) or not isinstance(d, int):
            raise InputError("veronese takes integer n and d")
        return veronese(n, d)
    if kind == "segre-veronese":
        n = _require(table, "n", kind)
        d = _require(table, "d", kind)
        if not isinstance(n, list) or not isinstance(d, list):
            raise InputError("segre-veronese takes arrays n and d")
        return segre_veronese(n, d)
    if kind == "rational-curve":
        coeffs = _require(table, "coefficients", kind)
        return rational_curve(coeffs)
    if kind == "del-pezzo":
        t = _require(table, "t", kind)
        if not isinstance(t, int):
            raise InputError("del-pezzo takes an integer t")
        return del_pezzo(t, base_points=table.get("base_points"))
    if kind == "ideal":
        n = _require(table, "n", kind)
        gens_text = _require(table, "generators", kind)
        if not isinstance(n, int) or not isinstance(gens_text, list):
            raise InputError("ideal takes integer n and a generator list")
        layout = VariableLayout(_factor_blocks((n,)))
        ring = PolynomialRing(QQ, layout)
        gens = [parse_polynomial(ring, text) for text in gens_text]
        return from_ideal(n, gens, label="ideal variety")
    raise InputError("unknown variety kind %r" % kind)


def load_variety(path):
    """Read a TOML variety file."""
    try:
        import tomllib
    except ImportError:
        import tomli as tomllib

    try:
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
    except OSError as exc:
        raise InputError("cannot read variety file: %s" % exc)
    except tomllib.TOMLDecodeError as exc:
        raise InputError("bad TOML in %s: %s" % (path, exc))
    if "variety" not in data:
        raise InputError("variety file needs a [variety] table")
    return variety_from_table(data["variety"])
