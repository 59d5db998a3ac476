"""Law suites for the jet category: restriction structure, products, the
comonad equations, the cofree-coalgebra square, and the characterization of
linear maps as embedded additive maps."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from .config import RunConfig, derive_seed
from .expr import guard_subst, guard_vars, var, var_name
from .jets import (
    JetMorphism,
    cofree_jet,
    compatible,
    compose_jets,
    delta,
    faa_delta_jet,
    faa_epsilon_jet,
    is_linear,
    is_total,
    jet_equal,
    lambda_embed,
    leq,
    pair_jets,
    projection_jet,
    restriction_jet,
    truncate_jet,
)
from .laws import _row, _bool_row
from .report import CheckResult
from .smooth import (
    CLASSICAL,
    EqOutcome,
    LAssignment,
    SMOOTH,
    SmoothMap,
    apply_map,
    componentwise_monoid,
    d_n,
    in_domain,
    map_total,
    maps_equal,
    parse_smooth_map,
    restrict_map,
    restriction_of,
    symbolically_equal,
    then,
    zero_map,
)


def _jet_row(suite, idx, axiom, outcome: EqOutcome, cfg, component=None,
             gating=True) -> CheckResult:
    base = _row(suite, idx, axiom, outcome, cfg, gating)
    if component is None:
        return base
    return CheckResult(
        suite=base.suite, map_index=base.map_index, axiom=base.axiom,
        status=base.status, worst_residual=base.worst_residual, seed=base.seed,
        witness_point=base.witness_point, component=component,
        gating=base.gating, note=base.note)


# --- well-formedness of a jet ---------------------------------------------------

def check_multilinearity(f: JetMorphism, cfg: RunConfig, label: str,
                         max_order: int = 4) -> EqOutcome:
    """Each component must be additive and rationally homogeneous in every
    direction block and invariant under block permutations (all permutations
    for n <= 3, ten sampled ones for n = 4)."""
    a = f.src.monoid.carrier.dim
    d = f.src.point.dim
    rng = random.Random(derive_seed(cfg.seed, label))
    floor = cfg.abs_floor
    worst = 0.0

    def draw_point():
        for _ in range(cfg.retry_cap):
            x = tuple(rng.uniform(-cfg.radius, cfg.radius) for _ in range(d))
            if in_domain(f.star, x):
                return x
        return None

    def value(comp, blocks, x):
        flat = tuple(v for b in blocks for v in b) + x
        return apply_map(comp, flat)

    from .expr import OutOfDomainError

    for n in range(1, min(f.order, max_order) + 1):
        comp = f.derivs[n - 1]
        perms = (list(itertools.permutations(range(n))) if n <= 3 else
                 [tuple(rng.sample(range(n), n)) for _ in range(10)])
        checked = 0
        attempts = 0
        while checked < 12 and attempts < 200:
            attempts += 1
            x = draw_point()
            if x is None:
                return EqOutcome("starved", worst, None, "no in-domain point")
            blocks = [tuple(rng.uniform(-1, 1) for _ in range(a)) for _ in range(n)]
            try:
                base_val = value(comp, blocks, x)
                # additivity and homogeneity per block
                for i in range(n):
                    u = tuple(rng.uniform(-1, 1) for _ in range(a))
                    w = tuple(rng.uniform(-1, 1) for _ in range(a))
                    summed = blocks[:i] + [tuple(p + q for p, q in zip(u, w))] + blocks[i + 1:]
                    left = value(comp, summed, x)
                    right_u = value(comp, blocks[:i] + [u] + blocks[i + 1:], x)
                    right_w = value(comp, blocks[:i] + [w] + blocks[i + 1:], x)
                    for lv, ru, rw in zip(left, right_u, right_w):
                        res = abs(lv - (ru + rw)) / max(abs(lv), abs(ru + rw), floor)
                        worst = max(worst, res)
                        if res > cfg.tol_rel:
                            return EqOutcome("fail", worst, x, f"not additive in block {i + 1}")
                    q = Fraction(rng.choice([1, 2, 3, -1]), rng.choice([1, 2]))
                    scaled = blocks[:i] + [tuple(float(q) * p for p in blocks[i])] + blocks[i + 1:]
                    left = value(comp, scaled, x)
                    for lv, bv in zip(left, base_val):
                        res = abs(lv - float(q) * bv) / max(abs(lv), abs(float(q) * bv), floor)
                        worst = max(worst, res)
                        if res > cfg.tol_rel:
                            return EqOutcome("fail", worst, x, f"not homogeneous in block {i + 1}")
                for perm in perms:
                    permuted = [blocks[p] for p in perm]
                    left = value(comp, permuted, x)
                    for lv, bv in zip(left, base_val):
                        res = abs(lv - bv) / max(abs(lv), abs(bv), floor)
                        worst = max(worst, res)
                        if res > cfg.tol_rel:
                            return EqOutcome("fail", worst, x, f"not symmetric under {perm}")
            except OutOfDomainError:
                # a component undefined inside the star's domain violates the
                # side condition, which is reported by its own check
                continue
            checked += 1
    return EqOutcome("pass", worst)


def check_guard_side_condition(f: JetMorphism, cfg: RunConfig, label: str) -> list[EqOutcome]:
    """The domain of every component is the cylinder over the star's domain:
    structurally the guard mentions only point variables, semantically it
    agrees with the star's guard there."""
    a = f.src.monoid.carrier.dim
    d = f.src.point.dim
    outcomes = []
    for n in range(1, f.order + 1):
        comp = f.derivs[n - 1]
        point_vars = {var_name(n * a + k) for k in range(d)}
        structural = guard_vars(comp.guard) <= point_vars
        if not structural:
            outcomes.append(EqOutcome("fail", -1.0, None,
                                      f"component {n} guard mentions direction variables"))
            continue
        shift = {var_name(k): var(var_name(n * a + k)) for k in range(d)}
        expected = restrict_map(
            SMOOTH.select([comp.dom], [0]),
            guard_subst(f.star.guard, shift))
        got = restriction_of(comp)
        outcomes.append(maps_equal(got, expected, cfg, f"{label}:side:{n}"))
    return outcomes


def validate_jet(f: JetMorphism, cfg: RunConfig, suite: str, idx: int) -> list[CheckResult]:
    """Well-formedness rows used for deserialized (possibly hand-written)
    jets: multilinearity, the guard side-condition, and R.1."""
    rows = [
        _jet_row(suite, idx, "jet.multilinear",
                 check_multilinearity(f, cfg, f"{suite}:{idx}:well"), cfg),
    ]
    for n, out in enumerate(check_guard_side_condition(f, cfg, f"{suite}:{idx}"), start=1):
        rows.append(_jet_row(suite, idx, "jet.side-condition", out, cfg, component=n))
    rows.append(_jet_row(
        suite, idx, "jet.R.1",
        jet_equal(compose_jets(restriction_jet(f), f), f, cfg, f"{suite}:{idx}:r1"), cfg))
    return rows


# --- restriction suite (jets of the guarded corpus) ------------------------------

def check_jet_restriction_laws(f: JetMorphism, g: JetMorphism, cfg: RunConfig,
                               suite: str, idx: int) -> list[CheckResult]:
    """R.1-R.4, the restricted-composite lemma, the restriction products and
    the total/leq/compatible characterizations, on the composable jets f, g."""
    rows: list[CheckResult] = []
    h = compose_jets(f, g)
    rf = restriction_jet(f)
    rh = restriction_jet(h)

    def eq_row(axiom, a, b, component=None):
        rows.append(_jet_row(suite, idx, axiom,
                             jet_equal(a, b, cfg, f"{suite}:{idx}:{axiom}"), cfg,
                             component=component))

    eq_row("jet.R.1", compose_jets(rf, f), f)
    eq_row("jet.R.2", compose_jets(rf, rh), compose_jets(rh, rf))
    eq_row("jet.R.3", restriction_jet(compose_jets(rf, h)), compose_jets(rf, rh))
    eq_row("jet.R.4", compose_jets(f, restriction_jet(g)),
           compose_jets(restriction_jet(compose_jets(f, g)), f))

    # (rs f) h componentwise: each component of the composite is h's component
    # restricted by f's domain over the point block
    composite = compose_jets(rf, h)
    a = f.src.monoid.carrier.dim
    for n in range(1, composite.order + 1):
        shift = {var_name(k): var(var_name(n * a + k)) for k in range(f.src.point.dim)}
        expected = restrict_map(h.derivs[n - 1], guard_subst(f.star.guard, shift))
        out = maps_equal(composite.derivs[n - 1], expected, cfg,
                         f"{suite}:{idx}:res-composite:{n}")
        rows.append(_jet_row(suite, idx, "jet.res-composite", out, cfg, component=n))

    # restriction products
    paired = pair_jets(f, h)
    eq_row("jet.product-restriction", restriction_jet(paired),
           compose_jets(rf, rh))
    pi0 = projection_jet([f.dst, h.dst], 0, f.order)
    lax = compose_jets(paired, pi0)
    rows.append(_jet_row(
        suite, idx, "jet.product-lax",
        EqOutcome("pass" if leq(lax, f, cfg, f"{suite}:{idx}:lax") else "fail",
                  0.0), cfg))

    # total / leq / compatible agree with their componentwise characterizations
    jet_total = is_total(f, cfg, f"{suite}:{idx}:total-jet")
    star_total = map_total(f.star, cfg, f"{suite}:{idx}:total-star").ok
    rows.append(_bool_row(suite, idx, "jet.total-characterization",
                          jet_total == star_total, cfg,
                          f"jet {jet_total}, star {star_total}"))

    below = compose_jets(rf, h)
    def_leq = jet_equal(compose_jets(restriction_jet(below), h), below, cfg,
                        f"{suite}:{idx}:leq-def").ok
    comp_leq = leq(below, h, cfg, f"{suite}:{idx}:leq-comp")
    rows.append(_bool_row(suite, idx, "jet.leq-characterization",
                          def_leq == comp_leq and def_leq,
                          cfg, f"definition {def_leq}, componentwise {comp_leq}"))

    def_cmp = jet_equal(compose_jets(restriction_jet(below), h),
                        compose_jets(restriction_jet(h), below), cfg,
                        f"{suite}:{idx}:cmp-def").ok
    comp_cmp = compatible(below, h, cfg, f"{suite}:{idx}:cmp-comp")
    rows.append(_bool_row(suite, idx, "jet.compatible-characterization",
                          def_cmp == comp_cmp and def_cmp,
                          cfg, f"definition {def_cmp}, componentwise {comp_cmp}"))

    rows += validate_jet(f, cfg, suite, idx)
    return rows


def run_faa_r_suite(pairs, cfg: RunConfig, L: LAssignment = CLASSICAL,
                    extra_jets=(), suite: str = "faa-r") -> list[CheckResult]:
    rows: list[CheckResult] = []
    for idx, (f, g) in enumerate(pairs):
        F = cofree_jet(f, L, cfg.order)
        G = cofree_jet(g, L, cfg.order)
        rows += check_jet_restriction_laws(F, G, cfg, suite, idx)
    for j, jet in enumerate(extra_jets):
        rows += validate_jet(jet, cfg, suite, len(list(pairs)) + j)
    return rows


# --- comonad suite -----------------------------------------------------------------

def _tight(cfg: RunConfig) -> RunConfig:
    return cfg.with_(tol_rel=1e-12, tol_abs=1e-12)


def jet_symbolic_equal(f: JetMorphism, g: JetMorphism) -> bool:
    if f.order != g.order:
        return False
    if not symbolically_equal(f.star, g.star):
        return False
    return all(symbolically_equal(a, b) for a, b in zip(f.derivs, g.derivs))


def check_comonad_laws(f: SmoothMap, cfg: RunConfig, L: LAssignment = CLASSICAL,
                       suite: str = "comonad", idx: int = 0,
                       coassoc_depth: int = 2) -> list[CheckResult]:
    """Counit laws (exact on the tower by construction / after simplify),
    coassociativity on comparable components, the coalgebra square
    delta(Df)_n = tower(D_n f), and the restriction variants."""
    rows: list[CheckResult] = []
    F = cofree_jet(f, L, cfg.order)
    dF = delta(F)

    # right counit: the star of the comultiplication is the jet itself
    rows.append(_bool_row(suite, idx, "comonad.counit-eps", dF.star is F, cfg,
                          "delta then counit is the identity"))

    # left counit: extracting stars componentwise returns the jet
    collapsed = faa_epsilon_jet(dF)
    if jet_symbolic_equal(collapsed, F):
        out = EqOutcome("pass", 0.0, None, "symbolically exact")
    else:
        out = jet_equal(collapsed, F, _tight(cfg), f"{suite}:{idx}:counit-faa")
    rows.append(_jet_row(suite, idx, "comonad.counit-faa-eps", out, cfg))

    # coassociativity, compared on the first coassoc_depth components (the
    # truncation is degree-local, so both routes see the same prefix)
    dT = truncate_jet(dF, coassoc_depth)
    lhs = delta(dT)
    rhs = faa_delta_jet(dT)
    rows.append(_jet_row(suite, idx, "comonad.coassociativity",
                         jet_equal(lhs, rhs, cfg, f"{suite}:{idx}:coassoc"), cfg))

    # the coalgebra square: components of delta on a tower are towers
    for n in range(1, min(2, cfg.order) + 1):
        tower = cofree_jet(d_n(f, n, L), L, cfg.order - n)
        out = jet_equal(dF.derivs[n - 1], tower, cfg, f"{suite}:{idx}:square:{n}")
        rows.append(_jet_row(suite, idx, "comonad.coalgebra-square", out, cfg,
                             component=n))

    # restriction variants
    rF = restriction_jet(F)
    rows.append(_jet_row(
        suite, idx, "comonad.eps-restriction",
        maps_equal(rF.star, restriction_of(F.star), cfg, f"{suite}:{idx}:eps-rs"), cfg))
    rows.append(_jet_row(
        suite, idx, "comonad.delta-restriction",
        jet_equal(delta(rF), restriction_jet(dF), cfg, f"{suite}:{idx}:delta-rs"), cfg))
    return rows


def run_comonad_suite(maps, cfg: RunConfig, L: LAssignment = CLASSICAL,
                      suite: str = "comonad") -> list[CheckResult]:
    rows: list[CheckResult] = []
    for idx, f in enumerate(maps):
        rows += check_comonad_laws(f, cfg, L, suite, idx)
    return rows


# --- linearity suite ------------------------------------------------------------------

def sampled_additive_maps(count: int, cfg: RunConfig) -> list[SmoothMap]:
    """Seeded random integer matrices as additive maps (dimensions 1-2)."""
    rng = random.Random(derive_seed(cfg.seed, "linear:matrices"))
    out = []
    for _ in range(count):
        dim = rng.choice([1, 2])
        rows = []
        for i in range(dim):
            terms = " + ".join(
                f"{rng.randint(-3, 3)}*x{j + 1}" for j in range(dim))
            rows.append(terms)
        params = ",".join(f"x{j + 1}" for j in range(dim))
        out.append(parse_smooth_map(f"fn({params}) -> ({', '.join(rows)})"))
    return out


NONLINEAR_TEXTS = [
    "fn(x) -> (x^2)",
    "fn(x) -> (sin(x))",
    "fn(x) -> (exp(x))",
    "fn(x) -> (x^3 - x)",
    "fn(x) -> (cos(x))",
    "fn(x,y) -> (x*y, x)",
    "fn(x,y) -> (x^2 + y^2, y)",
    "fn(x) -> (x^4)",
    "fn(x,y) -> (x*y^2, y)",
    "fn(x) -> (x^2 + x)",
]


def run_linear_suite(cfg: RunConfig, suite: str = "linear") -> list[CheckResult]:
    """Twenty jets: embedded additive maps must test linear and match their
    embedding componentwise; towers of nonlinear maps must not."""
    rows: list[CheckResult] = []
    idx = 0
    for h in sampled_additive_maps(10, cfg):
        mon = componentwise_monoid(h.dom.dim)
        mon_out = componentwise_monoid(h.cod.dim)
        lam = lambda_embed(h, mon, mon_out, cfg.order, cfg=cfg.with_(samples=50))
        ok = is_linear(lam, cfg, f"{suite}:{idx}:is-linear")
        rows.append(_bool_row(suite, idx, "linear.lambda-image-is-linear", ok, cfg))
        # componentwise shape: f_1 = pi_0 f_*, higher components vanish
        pi0_h = then(SMOOTH.select([mon.carrier, mon.carrier], [0]), h)
        rows.append(_jet_row(
            suite, idx, "linear.first-component",
            maps_equal(lam.derivs[0], pi0_h, cfg, f"{suite}:{idx}:f1"), cfg))
        for n in range(2, lam.order + 1):
            target = lam.derivs[n - 1]
            zero = restrict_map(zero_map(target.dom, target.cod), target.guard)
            rows.append(_jet_row(
                suite, idx, "linear.higher-components-vanish",
                maps_equal(target, zero, cfg, f"{suite}:{idx}:f{n}"), cfg,
                component=n))
        idx += 1
    for text in NONLINEAR_TEXTS:
        F = cofree_jet(parse_smooth_map(text), CLASSICAL, cfg.order)
        ok = is_linear(F, cfg, f"{suite}:{idx}:is-linear")
        rows.append(_bool_row(suite, idx, "linear.tower-of-nonlinear-is-not",
                              not ok, cfg, text))
        idx += 1
    return rows
