"""Splitting the restriction idempotents of the smooth model.

Objects are open subsets presented as guarded identity maps (X, e); a map
(X, e1) -> (Y, e2) is a smooth map fixed by pre- and post-composition with the
idempotents.  The vector object of (X, e) is the full space (L(X), 1), so the
derivative of a partial map is total in its vector block: the domain guard of
D(f) depends only on the point.  The total maps of this category then satisfy
the whole differential axiom suite, which check_split_cdc runs directly."""

from __future__ import annotations

from dataclasses import dataclass

from .config import RunConfig
from .expr import Guard, TRUE_GUARD, guard_and, guard_subst, guard_vars, var, var_name
from .laws import _bool_row, _eq, _row, check_cd_axioms
from .report import CheckResult
from .smooth import (
    CLASSICAL,
    EqOutcome,
    LAssignment,
    SmoothMap,
    SpaceObject,
    TRIVIAL,
    D,
    identity,
    in_domain,
    maps_equal,
    parse_smooth_map,
    restrict_map,
    restriction_of,
    sample_points,
    select,
    then,
)


class SplitError(Exception):
    pass


@dataclass(frozen=True, slots=True)
class SplitObject:
    space: SpaceObject
    idem: SmoothMap  # identity coordinates with a guard

    def __post_init__(self):
        if self.idem.dom != self.space or self.idem.cod != self.space:
            raise SplitError("idempotent must be an endomap of the space")
        if self.idem.coords != identity(self.space).coords:
            raise SplitError("restriction idempotents have identity coordinates")

    @property
    def guard(self) -> Guard:
        return self.idem.guard

    def __str__(self):
        return f"R^{self.space.dim} | {self.guard}"


def split_object(dim: int, guard: Guard = TRUE_GUARD) -> SplitObject:
    space = SpaceObject(dim)
    return SplitObject(space, restrict_map(identity(space), guard))


@dataclass(frozen=True, slots=True)
class SplitMap:
    f: SmoothMap
    src: SplitObject
    dst: SplitObject

    def __str__(self):
        return f"{self.f}  : {self.src} -> {self.dst}"


def hom_condition(m: SplitMap, cfg: RunConfig, label: str = "hom") -> EqOutcome:
    """e1 f e2 = f, the membership condition for the split category."""
    composite = then(then(m.src.idem, m.f), m.dst.idem)
    return maps_equal(composite, m.f, cfg, label)


def split_map(f: SmoothMap, src: SplitObject, dst: SplitObject,
              cfg: RunConfig | None = None) -> SplitMap:
    if f.dom != src.space or f.cod != dst.space:
        raise SplitError("map does not fit the declared objects")
    m = SplitMap(f, src, dst)
    if cfg is not None:
        out = hom_condition(m, cfg)
        if not out.ok:
            raise SplitError(f"hom-condition violated: {out.note}")
    return m


def split_identity(obj: SplitObject) -> SplitMap:
    return SplitMap(obj.idem, obj, obj)


def split_then(m1: SplitMap, m2: SplitMap, cfg: RunConfig | None = None) -> SplitMap:
    if m1.dst != m2.src:
        raise SplitError("objects do not match")
    return split_map(then(m1.f, m2.f), m1.src, m2.dst, cfg)


def split_restriction(m: SplitMap) -> SplitMap:
    return SplitMap(restriction_of(m.f), m.src, m.src)


def split_L(obj: SplitObject, L: LAssignment = CLASSICAL) -> SplitObject:
    """The vector object (L(X), 1): the idempotent is discarded."""
    return split_object(L.l0(obj.space).dim)


def split_D(m: SplitMap, L: LAssignment = CLASSICAL) -> SplitMap:
    """The base-category derivative, re-homed at (L0(X) x X, 1 x e1)."""
    df = D(m.f, L)
    l = L.l0(m.src.space).dim
    shift = {var_name(k): var(var_name(l + k)) for k in range(m.src.space.dim)}
    dom = split_object(df.dom.dim, guard_subst(m.src.guard, shift))
    return SplitMap(df, dom, split_L(obj=m.dst, L=L))


def total_in_split(m: SplitMap, cfg: RunConfig, label: str = "total") -> EqOutcome:
    """Total as a map of the split category: its restriction is the source
    identity, i.e. the guard agrees with the source idempotent's."""
    return maps_equal(restriction_of(m.f), m.src.idem, cfg, label)


def _d_guard_rows(suite, idx, m: SplitMap, L, cfg) -> list[CheckResult]:
    """The derivative's domain guard must not see the vector block: checked
    structurally and by boolean agreement with the source guard at sampled
    points of the doubled domain."""
    df = D(m.f, L)
    l = L.l0(m.src.space).dim
    n = m.src.space.dim
    point_vars = {var_name(l + k) for k in range(n)}
    structural = guard_vars(df.guard) <= point_vars
    rows = [_bool_row(suite, idx, "split.D-guard-structural", structural, cfg,
                      "" if structural else "guard mentions vector variables")]
    from .expr import guard_eval
    from .smooth import point_env
    agreed = 0
    witness = None
    for point in sample_points(l + n, cfg, f"{suite}:{idx}:dguard"):
        env = point_env(point)
        lhs = guard_eval(df.guard, env)
        rhs = in_domain(m.src.idem, point[l:])
        if lhs != rhs:
            witness = point
            break
        agreed += 1
        if agreed >= cfg.samples:
            break
    rows.append(_bool_row(suite, idx, "split.D-guard-is-source-guard",
                          witness is None, cfg,
                          "" if witness is None else f"disagrees at {witness}"))
    return rows


def _restricted_projection_rows(suite, idx, m: SplitMap, L, cfg) -> list[CheckResult]:
    """CD.3 with the split category's own projections: D of the guarded
    projection equals the guarded double projection."""
    e1 = m.src
    e2 = m.dst
    n, k = e1.space.dim, e2.space.dim
    prod_guard = guard_and(
        e1.guard,
        guard_subst(e2.guard, {var_name(i): var(var_name(n + i)) for i in range(k)}))
    p0 = restrict_map(select([n, k], [0]), prod_guard)
    lhs = D(p0, L)
    l_all = L.l0(SpaceObject(n + k)).dim
    lx = L.l0(SpaceObject(n)).dim
    shift = {var_name(i): var(var_name(l_all + i)) for i in range(n + k)}
    rhs = restrict_map(
        then(select([l_all, n + k], [0]), select([lx, l_all - lx], [0])),
        guard_subst(prod_guard, shift))
    return [_eq(suite, idx, "split.CD.3-restricted", lhs, rhs, cfg)]


def check_split_cdc(entries, cfg: RunConfig, L: LAssignment = CLASSICAL,
                    suite: str = "split") -> list[CheckResult]:
    """The full differential suite inside the split category, for maps total
    there: hom-conditions, split-totality, CD.1-7 on the underlying maps,
    the derivative re-homing of the splitting construction, and the
    degenerate run under the trivial vector assignment."""
    rows: list[CheckResult] = []
    for idx, (m, g) in enumerate(entries):
        rows.append(_row(suite, idx, "split.hom-condition",
                         hom_condition(m, cfg, f"{suite}:{idx}:hom"), cfg))
        rows.append(_row(suite, idx, "split.total-in-Kr",
                         total_in_split(m, cfg, f"{suite}:{idx}:tot"), cfg))
        rows += check_cd_axioms(m.f, g.f, L, cfg, suite=suite, map_index=idx)
        dm = split_D(m, L)
        rows.append(_row(suite, idx, "split.D-hom-condition",
                         hom_condition(dm, cfg, f"{suite}:{idx}:dhom"), cfg))
        rows += _d_guard_rows(suite, idx, m, L, cfg)
        rows += _restricted_projection_rows(suite, idx, m, L, cfg)
        lsplit = split_L(m.src, L)
        rows.append(_bool_row(suite, idx, "split.L-idempotent",
                              split_L(lsplit, L) == lsplit, cfg))
        trivial_rows = check_cd_axioms(m.f, g.f, TRIVIAL, cfg,
                                       suite=suite, map_index=idx)
        ok = all(r.status == "pass" for r in trivial_rows if r.gating)
        rows.append(_bool_row(suite, idx, "split.trivial-L-degenerate", ok, cfg))
    return rows


def default_split_corpus() -> list[tuple[SplitMap, SplitMap]]:
    """Open-subset corpus paired with a total polynomial target."""
    texts = [
        ("fn(x) -> (1/x)", "x != 0"),
        ("fn(x) -> (log(x))", "x > 0"),
        ("fn(x) -> (sqrt(x))", "x > 0"),
        ("fn(x) -> (1/(x - 1))", "x - 1 != 0"),
    ]
    out = []
    full = split_object(1)
    g = SplitMap(parse_smooth_map("fn(y) -> (y^2 + y)"), full, full)
    for text, guard_text in texts:
        f = parse_smooth_map(text)
        src = split_object(1, parse_smooth_map(f"fn(x) -> (x) where {guard_text}").guard)
        out.append((SplitMap(f, src, full), g))
    return out
