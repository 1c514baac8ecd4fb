"""Calculus for functions t -> r(t) + q(t)*A and its theorem checkers.

Derivatives and Riemann integrals act componentwise on the coordinate
functions, so every operation here reduces to scalar calculus plus the
coordinate arithmetic from :mod:`lcfn.core`.  The checkers turn the
calculus theorems (linearity, fundamental theorem, product rule,
integration by parts, positivity of the squared integral, derivative /
integral interchange) into numeric residuals with pinned tolerances.
"""
from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass, field

from . import expr as ex
from .core import LCFN
from .errors import GeneratorMismatch, OutsideDomain
from .generator import Generator, same_generator
from .quadrature import QuadratureSpec, gauss_legendre, integrate_scalar

FTC_TOL = 1e-8
IBP_TOL = 1e-8
PRODUCT_RULE_TOL = 1e-8
DERIV_FD_TOL = 1e-6
INTERCHANGE_TOL = 1e-6
AE_GRID_POINTS = 2048
AE_THRESHOLD = 1e-9  # |center| above this counts as a grid violation


@dataclass(frozen=True)
class CheckReport:
    """Uniform result shape for the theorem checkers."""

    check: str
    passed: bool
    tolerance: float
    residuals: dict
    notes: tuple[str, ...] = ()
    records: tuple[dict, ...] = ()

    def to_dict(self) -> dict:
        out = {
            "check": self.check,
            "passed": self.passed,
            "tolerance": self.tolerance,
            "residuals": dict(self.residuals),
        }
        if self.notes:
            out["notes"] = list(self.notes)
        if self.records:
            out["records"] = [dict(r) for r in self.records]
        return out


@dataclass(frozen=True)
class FuzzyFunction:
    """t -> r(t) + q(t)*A on a closed interval, components as expressions."""

    r: ex.Expr
    q: ex.Expr
    gen: Generator
    domain: tuple[float, float]
    eps_aware: bool = field(default=False, compare=False)

    def __post_init__(self):
        a, b = self.domain
        if not a < b:
            raise ValueError(f"empty domain [{a}, {b}]")

    @classmethod
    def from_strings(cls, r_src: str, q_src: str, gen: Generator,
                     domain, two_variable: bool = False) -> "FuzzyFunction":
        variables = ("t", "eps") if two_variable else ("t",)
        return cls(ex.parse(r_src, variables), ex.parse(q_src, variables),
                   gen, (float(domain[0]), float(domain[1])),
                   eps_aware=two_variable)

    def at(self, t: float, eps: float | None = None) -> LCFN:
        a, b = self.domain
        if not a <= t <= b:
            raise OutsideDomain(f"t={t!r} outside [{a!r}, {b!r}]")
        return LCFN(ex.evaluate(self.r, t, eps), ex.evaluate(self.q, t, eps),
                    self.gen)

    def derivative(self, order: int = 1, var: str = "t") -> "FuzzyFunction":
        return FuzzyFunction(ex.differentiate(self.r, var, order),
                             ex.differentiate(self.q, var, order),
                             self.gen, self.domain, eps_aware=self.eps_aware)

    def center_expr(self) -> ex.Expr:
        """r + a_m*q as a single expression."""
        return ex.add(self.r, ex.mul(ex.num(self.gen.a_m), self.q))

    def plus(self, other: "FuzzyFunction", lam: float = 1.0) -> "FuzzyFunction":
        self._check_compatible(other)
        lam_e = ex.num(lam)
        return FuzzyFunction(ex.add(self.r, ex.mul(lam_e, other.r)),
                             ex.add(self.q, ex.mul(lam_e, other.q)),
                             self.gen, self.domain)

    def scaled(self, lam: float) -> "FuzzyFunction":
        lam_e = ex.num(lam)
        return FuzzyFunction(ex.mul(lam_e, self.r), ex.mul(lam_e, self.q),
                             self.gen, self.domain)

    def cross_with(self, other: "FuzzyFunction") -> "FuzzyFunction":
        """Pointwise product, composed through the coordinate formulas so
        the result is again expression-backed (and symbolically
        differentiable)."""
        self._check_compatible(other)
        am = self.gen.a_m
        qq = ex.mul(self.q, other.q)
        new_r = ex.sub(ex.mul(self.r, other.r), ex.mul(ex.num(am * am), qq))
        new_q = ex.add(ex.add(ex.mul(self.r, other.q), ex.mul(other.r, self.q)),
                       ex.mul(ex.num(2.0 * am), qq))
        return FuzzyFunction(new_r, new_q, self.gen, self.domain)

    def _check_compatible(self, other: "FuzzyFunction") -> None:
        if not same_generator(self.gen, other.gen):
            raise GeneratorMismatch("functions live over different generators")
        if self.domain != other.domain:
            raise ValueError("functions must share a domain")


def deriv(f: FuzzyFunction, t: float, eps: float | None = None) -> LCFN:
    """Derivative at an interior point, componentwise and symbolic."""
    a, b = f.domain
    if not a < t < b:
        raise OutsideDomain(f"t={t!r} is not interior to [{a!r}, {b!r}]")
    fd = f.derivative()
    return LCFN(ex.evaluate(fd.r, t, eps), ex.evaluate(fd.q, t, eps), f.gen)


def integrate(f: FuzzyFunction, spec: QuadratureSpec | None = None,
              lo: float | None = None, hi: float | None = None) -> LCFN:
    """Componentwise quadrature over the domain (or a sub-interval)."""
    spec = spec or QuadratureSpec()
    a, b = f.domain
    lo = a if lo is None else lo
    hi = b if hi is None else hi
    if not (a <= lo <= hi <= b):
        raise OutsideDomain(f"[{lo!r}, {hi!r}] not inside [{a!r}, {b!r}]")
    r_val = integrate_scalar(lambda t: ex.evaluate(f.r, t), lo, hi, spec)
    q_val = integrate_scalar(lambda t: ex.evaluate(f.q, t), lo, hi, spec)
    return LCFN(r_val, q_val, f.gen)


class CumulativeIntegral:
    """F(t) = integral of f from the left endpoint, cached on a node grid.

    Values at grid nodes carry the full quadrature accuracy (segment
    tolerances sum to the requested tolerance); off-node queries
    integrate the remainder from the nearest node on the left.
    """

    def __init__(self, f: FuzzyFunction, spec: QuadratureSpec | None = None,
                 nodes: int = 257):
        self.f = f
        a, b = f.domain
        self._spec = (spec or QuadratureSpec())
        seg_spec = self._spec.with_tol(self._spec.abs_tol / (nodes - 1))
        self._seg_spec = seg_spec
        self._ts = [a + (b - a) * i / (nodes - 1) for i in range(nodes)]
        self._ts[-1] = b
        values = [LCFN.zero(f.gen)]
        for i in range(1, nodes):
            seg = integrate(f, seg_spec, self._ts[i - 1], self._ts[i])
            values.append(values[-1] + seg)
        self._values = values

    @property
    def grid(self) -> tuple[float, ...]:
        return tuple(self._ts)

    def at(self, t: float) -> LCFN:
        a, b = self.f.domain
        if not a <= t <= b:
            raise OutsideDomain(f"t={t!r} outside [{a!r}, {b!r}]")
        i = bisect_right(self._ts, t) - 1
        i = min(max(i, 0), len(self._ts) - 1)
        base = self._values[i]
        if t == self._ts[i]:
            return base
        return base + integrate(self.f, self._seg_spec, self._ts[i], t)


# -- checkers -----------------------------------------------------------------

def ftc_check(f: FuzzyFunction, spec: QuadratureSpec | None = None,
              spot_fractions=(0.21, 0.5, 0.79)) -> CheckReport:
    """integral of f' against f(b) - f(a), plus mean-value spot checks of
    F' = f at interior points."""
    spec = spec or QuadratureSpec()
    a, b = f.domain
    fd = f.derivative()
    total = integrate(fd, spec)
    endpoint = f.at(b) - f.at(a)
    residual = (total - endpoint).norm()

    h = min(3e-4, 0.05 * (b - a))
    tight = spec.with_tol(min(spec.abs_tol, 1e-13))
    spots = []
    for u in spot_fractions:
        t = a + (b - a) * u
        window = integrate(f, tight, t - h, t + h).scaled(1.0 / (2.0 * h))
        spots.append((window - f.at(t)).norm())
    spot_residual = max(spots)

    notes = []
    if ex.kink_hits(fd.r, a) or ex.kink_hits(fd.q, a):
        notes.append("abs kink at left endpoint; sign(0)=0 convention used")
    passed = residual < FTC_TOL and spot_residual < DERIV_FD_TOL
    return CheckReport(
        check="ftc", passed=passed, tolerance=FTC_TOL,
        residuals={"endpoint": residual, "spot_max": spot_residual},
        notes=tuple(notes))


def product_rule_check(f: FuzzyFunction, g: FuzzyFunction,
                       t: float) -> CheckReport:
    """(f*g)'(t) against f(t)*g'(t) + f'(t)*g(t), both sides symbolic."""
    fd, gd = f.derivative(), g.derivative()
    lhs = deriv(f.cross_with(g), t)
    rhs = f.at(t).cross(deriv(g, t)) + deriv(f, t).cross(g.at(t))
    residual = (lhs - rhs).norm()
    notes = []
    for component in (fd.r, fd.q, gd.r, gd.q):
        if ex.kink_hits(component, t):
            notes.append(f"abs kink at t={t!r}; sign(0)=0 convention used")
            break
    return CheckReport(
        check="product-rule", passed=residual < PRODUCT_RULE_TOL,
        tolerance=PRODUCT_RULE_TOL, residuals={"pointwise": residual},
        notes=tuple(notes))


def ibp_check(f: FuzzyFunction, g: FuzzyFunction,
              spec: QuadratureSpec | None = None) -> CheckReport:
    """integral(f*g') + integral(f'*g) against the boundary term."""
    spec = spec or QuadratureSpec()
    a, b = f.domain
    left = integrate(f.cross_with(g.derivative()), spec)
    right = integrate(f.derivative().cross_with(g), spec)
    boundary = f.at(b).cross(g.at(b)) - f.at(a).cross(g.at(a))
    residual = (left + right - boundary).norm()
    return CheckReport(
        check="ibp", passed=residual < IBP_TOL, tolerance=IBP_TOL,
        residuals={"identity": residual})


def square_integral(f: FuzzyFunction, spec: QuadratureSpec | None = None
                    ) -> tuple[LCFN, CheckReport]:
    """Integral of the pointwise square, with positivity diagnostics.

    The center of the result equals the integral of (r + a_m*q)^2, so it
    can never be genuinely negative; a direct Gauss-Legendre quadrature
    of that integrand cross-checks the adaptive coordinate route through
    an independent method.  The almost-everywhere clause is surrogated by
    the fraction of a fixed grid where |r + a_m*q| exceeds a small
    threshold.
    """
    spec = spec or QuadratureSpec()
    a, b = f.domain
    value = integrate(f.cross_with(f), spec)
    center = value.center()

    ce = f.center_expr()
    sq = ex.pow_(ce, ex.Num(2.0))
    direct = gauss_legendre(lambda t: ex.evaluate(sq, t), a, b, spec.nodes)

    n = AE_GRID_POINTS
    violations = 0
    for i in range(n):
        t = a + (b - a) * i / (n - 1)
        if abs(ex.evaluate(ce, t)) > AE_THRESHOLD:
            violations += 1
    fraction = violations / n

    passed = center >= -spec.abs_tol and abs(center - direct) <= spec.abs_tol
    report = CheckReport(
        check="square-integral", passed=passed, tolerance=spec.abs_tol,
        residuals={
            "center": center,
            "center_direct": direct,
            "route_gap": abs(center - direct),
            "grid_violation_fraction": fraction,
        })
    return value, report


def interchange_check(g: FuzzyFunction, eps0: float,
                      spec: QuadratureSpec | None = None) -> CheckReport:
    """d/deps of integral(g(t, eps)) against integral(d g/d eps) at eps0.

    g must be built with two_variable=True so its components may mention
    eps.  The left side uses a central difference in eps over tightened
    quadratures; the right side integrates the symbolic partial.
    """
    if not g.eps_aware:
        raise ValueError("interchange_check needs a two-variable function")
    spec = spec or QuadratureSpec()
    a, b = g.domain
    tight = spec.with_tol(min(spec.abs_tol, 1e-13))
    h = 1e-4 * max(1.0, abs(eps0))

    def integral_at(eps: float) -> LCFN:
        r = integrate_scalar(lambda t: ex.evaluate(g.r, t, eps), a, b, tight)
        q = integrate_scalar(lambda t: ex.evaluate(g.q, t, eps), a, b, tight)
        return LCFN(r, q, g.gen)

    lhs = (integral_at(eps0 + h) - integral_at(eps0 - h)).scaled(1.0 / (2.0 * h))

    partial = g.derivative(var="eps")
    r = integrate_scalar(lambda t: ex.evaluate(partial.r, t, eps0), a, b, spec)
    q = integrate_scalar(lambda t: ex.evaluate(partial.q, t, eps0), a, b, spec)
    rhs = LCFN(r, q, g.gen)

    residual = (lhs - rhs).norm()
    return CheckReport(
        check="interchange", passed=residual < INTERCHANGE_TOL,
        tolerance=INTERCHANGE_TOL,
        residuals={"norm": residual,
                   "lhs_r": lhs.r, "lhs_q": lhs.q,
                   "rhs_r": rhs.r, "rhs_q": rhs.q})


def limit_quotient(f: FuzzyFunction, t: float, h: float) -> LCFN:
    """Central difference quotient (f(t+h) - f(t-h)) / 2h, used by tests
    to compare deriv() against the limit definition in the norm."""
    if h <= 0.0:
        raise ValueError("h must be positive")
    return (f.at(t + h) - f.at(t - h)).scaled(1.0 / (2.0 * h))
