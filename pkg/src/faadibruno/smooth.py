"""The base category: real spaces and guarded smooth maps.

Maps are partial: each carries a guard describing the open set where it is
defined (and, by construction, smooth).  Composition substitutes coordinates
and pulls guards back, so restriction structure is tracked exactly.  The
differential operator D sends f: X -> Y to a map on vectors-then-points,
D[f](v, x) = Jacobian of f at x applied to v, whose guard depends only on x.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .config import RunConfig, derive_seed
from .expr import (
    Expr,
    Guard,
    OutOfDomainError,
    TRUE_GUARD,
    add,
    const,
    diff,
    eval_expr,
    free_vars,
    guard_and,
    guard_eval,
    guard_subst,
    guard_vars,
    mul,
    neg,
    pretty_map,
    simplify,
    subst,
    var,
    var_name,
)


class SmoothMapError(Exception):
    pass


@dataclass(frozen=True, slots=True)
class SpaceObject:
    dim: int

    def __post_init__(self):
        if self.dim < 0:
            raise ValueError("dimension must be non-negative")

    def __str__(self):
        return f"R^{self.dim}"


TERMINAL = SpaceObject(0)


@dataclass(frozen=True, slots=True)
class SmoothMap:
    dom: SpaceObject
    cod: SpaceObject
    coords: tuple[Expr, ...]
    guard: Guard = TRUE_GUARD

    def __post_init__(self):
        if len(self.coords) != self.cod.dim:
            raise SmoothMapError(
                f"{self.cod.dim} coordinates expected, got {len(self.coords)}")
        allowed = {var_name(i) for i in range(self.dom.dim)}
        used = guard_vars(self.guard)
        for e in self.coords:
            used |= free_vars(e)
        if not used <= allowed:
            raise SmoothMapError(f"variables {sorted(used - allowed)} out of range")

    def __str__(self):
        return pretty_map(self.dom.dim, self.coords, self.guard)


Point = tuple[float, ...]


def point_env(point: Sequence[float]) -> dict[str, float]:
    return {var_name(i): float(v) for i, v in enumerate(point)}


def in_domain(f: SmoothMap, point: Sequence[float]) -> bool:
    return guard_eval(f.guard, point_env(point))


def apply_map(f: SmoothMap, point: Sequence[float]) -> Point:
    env = point_env(point)
    if not guard_eval(f.guard, env):
        raise OutOfDomainError(f"point {tuple(point)} outside guard {f.guard}")
    return tuple(eval_expr(e, env) for e in f.coords)


# --- category structure -------------------------------------------------------

def identity(obj: SpaceObject) -> SmoothMap:
    coords = tuple(var(var_name(i)) for i in range(obj.dim))
    return SmoothMap(obj, obj, coords)


def then(f: SmoothMap, g: SmoothMap) -> SmoothMap:
    """Diagrammatic composite: first f, then g."""
    if f.cod != g.dom:
        raise SmoothMapError(f"cannot compose {f.cod} into {g.dom}")
    mapping = {var_name(i): f.coords[i] for i in range(f.cod.dim)}
    coords = tuple(simplify(subst(e, mapping)) for e in g.coords)
    guard = guard_and(f.guard, guard_subst(g.guard, mapping))
    return SmoothMap(f.dom, g.cod, coords, guard)


def tuple_map(maps: Sequence[SmoothMap]) -> SmoothMap:
    """Pairing <f, g, ...>: concatenated coordinates, conjoined guards."""
    if not maps:
        raise SmoothMapError("empty pairing")
    dom = maps[0].dom
    if any(m.dom != dom for m in maps):
        raise SmoothMapError("pairing wants a shared domain")
    coords = tuple(e for m in maps for e in m.coords)
    guard = TRUE_GUARD
    for m in maps:
        guard = guard_and(guard, m.guard)
    return SmoothMap(dom, SpaceObject(sum(m.cod.dim for m in maps)), coords, guard)


def product_pair(f: SmoothMap, g: SmoothMap) -> SmoothMap:
    return tuple_map([f, g])


def select(block_dims: Sequence[int], picks: Sequence[int]) -> SmoothMap:
    """Total map from the product with the given block layout onto the listed
    blocks, in order."""
    offsets = []
    total = 0
    for d in block_dims:
        offsets.append(total)
        total += d
    coords = []
    for i in picks:
        coords.extend(var(var_name(offsets[i] + k)) for k in range(block_dims[i]))
    out_dim = sum(block_dims[i] for i in picks)
    return SmoothMap(SpaceObject(total), SpaceObject(out_dim), tuple(coords))


def projection(block_dims: Sequence[int], i: int) -> SmoothMap:
    return select(block_dims, [i])


def bang(obj: SpaceObject) -> SmoothMap:
    return SmoothMap(obj, TERMINAL, ())


def zero_map(dom: SpaceObject, cod: SpaceObject) -> SmoothMap:
    return SmoothMap(dom, cod, tuple(const(0) for _ in range(cod.dim)))


def constant_map(dom: SpaceObject, values: Sequence) -> SmoothMap:
    return SmoothMap(dom, SpaceObject(len(values)), tuple(const(v) for v in values))


def restriction_of(f: SmoothMap) -> SmoothMap:
    """The restriction idempotent: identity coordinates, f's guard."""
    return SmoothMap(f.dom, f.dom, identity(f.dom).coords, f.guard)


def restrict_map(f: SmoothMap, guard: Guard) -> SmoothMap:
    """Precompose with an idempotent given by a guard over f's domain."""
    return SmoothMap(f.dom, f.cod, f.coords, guard_and(guard, f.guard))


def add_maps(f: SmoothMap, g: SmoothMap) -> SmoothMap:
    if f.dom != g.dom or f.cod != g.cod:
        raise SmoothMapError("sum wants parallel maps")
    coords = tuple(simplify(add(a, b)) for a, b in zip(f.coords, g.coords))
    return SmoothMap(f.dom, f.cod, coords, guard_and(f.guard, g.guard))


def neg_map(f: SmoothMap) -> SmoothMap:
    return SmoothMap(f.dom, f.cod, tuple(simplify(neg(e)) for e in f.coords), f.guard)


# --- monoids and the vector-object assignment ----------------------------------

@dataclass(frozen=True, slots=True)
class MonoidStructure:
    """A total commutative monoid: carrier with addition and zero.  The fields
    are category-agnostic; over the smooth base they are SmoothMaps."""
    carrier: object
    add: object
    zero: object


def componentwise_monoid(dim: int) -> MonoidStructure:
    carrier = SpaceObject(dim)
    coords = tuple(
        simplify(add(var(var_name(i)), var(var_name(dim + i)))) for i in range(dim))
    plus = SmoothMap(SpaceObject(2 * dim), carrier, coords)
    zero = zero_map(TERMINAL, carrier)
    return MonoidStructure(carrier, plus, zero)


@dataclass(frozen=True, slots=True)
class LAssignment:
    """Assignment of a vector object L(X) to every space X.

    classical: L(X) = X with componentwise addition.
    trivial:   L(X) = terminal; every derivative collapses to the point map.
    """
    variant: str

    def __post_init__(self):
        if self.variant not in ("classical", "trivial"):
            raise ValueError(f"unknown variant {self.variant!r}")

    def l0(self, obj: SpaceObject) -> SpaceObject:
        return obj if self.variant == "classical" else TERMINAL

    def monoid(self, obj: SpaceObject) -> MonoidStructure:
        return componentwise_monoid(self.l0(obj).dim)


CLASSICAL = LAssignment("classical")
TRIVIAL = LAssignment("trivial")


# --- the differential operator -------------------------------------------------

def D(f: SmoothMap, L: LAssignment = CLASSICAL) -> SmoothMap:
    """Derivative map L0(X) x X -> L0(Y): vector block first, then the point.
    The guard depends only on the point block and equals f's guard there."""
    d = f.dom.dim
    l = L.l0(f.dom).dim
    point_rename = {var_name(k): var(var_name(l + k)) for k in range(d)}
    guard = guard_subst(f.guard, point_rename)
    dom = SpaceObject(l + d)
    if L.variant == "trivial":
        return SmoothMap(dom, TERMINAL, (), guard)
    coords = []
    for e in f.coords:
        total = const(0)
        for j in range(d):
            partial = subst(diff(e, var_name(j)), point_rename)
            total = add(total, mul(var(var_name(j)), partial))
        coords.append(simplify(total))
    return SmoothMap(dom, L.l0(f.cod), tuple(coords), guard)


def iterate_D(f: SmoothMap, n: int, L: LAssignment = CLASSICAL) -> SmoothMap:
    if n < 0:
        raise ValueError("order must be non-negative")
    for _ in range(n):
        f = D(f, L)
    return f


def dn_blocks(dom: SpaceObject, n: int, L: LAssignment = CLASSICAL) -> list[SpaceObject]:
    """Block layout of the domain of D^n(f) for f out of dom (2^n blocks)."""
    blocks = [L.l0(dom), dom]
    for _ in range(n - 1):
        blocks = [L.l0(b) for b in blocks] + blocks
    return blocks


def insertion_slots(n: int) -> list[tuple]:
    """Slot assignment realizing the n-th symmetric derivative from D^n: each
    slot of the doubled-up domain receives a zero, one of the directions
    ("v", i), or the base point ("pt",).  Derived by differentiating the
    (n-1)-st insertion along its base point."""
    slots: list[tuple] = [("v", 1), ("pt",)]
    for _ in range(n - 1):
        shadow = [("v", 1) if s[0] == "pt" else ("zero",) for s in slots]
        bumped = [("v", s[1] + 1) if s[0] == "v" else s for s in slots]
        slots = shadow + bumped
    return slots


def _symmetric_domain(f: SmoothMap, n: int, L: LAssignment) -> SpaceObject:
    return SpaceObject(n * L.l0(f.dom).dim + f.dom.dim)


def d_n_insertion(f: SmoothMap, n: int, L: LAssignment = CLASSICAL) -> SmoothMap:
    """Symmetric n-th derivative via the literal zero-insertion into D^n(f)."""
    if n == 0:
        return f
    blocks = dn_blocks(f.dom, n, L)
    slots = insertion_slots(n)
    l = L.l0(f.dom).dim
    d = f.dom.dim
    coords: list[Expr] = []
    for block, slot in zip(blocks, slots):
        if slot[0] == "zero":
            coords.extend(const(0) for _ in range(block.dim))
        elif slot[0] == "v":
            base = (slot[1] - 1) * l
            coords.extend(var(var_name(base + k)) for k in range(block.dim))
        else:
            coords.extend(var(var_name(n * l + k)) for k in range(d))
    ins = SmoothMap(_symmetric_domain(f, n, L),
                    SpaceObject(sum(b.dim for b in blocks)), tuple(coords))
    return then(ins, iterate_D(f, n, L))


def d_n(f: SmoothMap, n: int, L: LAssignment = CLASSICAL) -> SmoothMap:
    """Symmetric n-th derivative as nested directional differentiation:
    contract the order-n partials with direction blocks v_1 .. v_n.  Agrees
    with d_n_insertion (tested property) without the 2^n domain blowup."""
    if n == 0:
        return f
    l = L.l0(f.dom).dim
    d = f.dom.dim
    dom = _symmetric_domain(f, n, L)
    point_rename = {var_name(k): var(var_name(n * l + k)) for k in range(d)}
    guard = guard_subst(f.guard, point_rename)
    if L.variant == "trivial":
        return SmoothMap(dom, TERMINAL, (), guard)
    exprs = [subst(e, point_rename) for e in f.coords]
    for step in range(n):
        base = step * l
        new_exprs = []
        for e in exprs:
            total = const(0)
            for j in range(d):
                total = add(total, mul(var(var_name(base + j)),
                                       diff(e, var_name(n * l + j))))
            new_exprs.append(simplify(total))
        exprs = new_exprs
    return SmoothMap(dom, L.l0(f.cod), tuple(exprs), guard)


# --- numerical oracle -----------------------------------------------------------

def finite_diff(f: SmoothMap, x: Sequence[float], v: Sequence[float],
                h: float = 1e-4) -> Point:
    """Central difference (f(x + h v) - f(x - h v)) / 2h; the independent
    numerical check for D."""
    fwd = tuple(xi + h * vi for xi, vi in zip(x, v))
    bwd = tuple(xi - h * vi for xi, vi in zip(x, v))
    a = apply_map(f, fwd)
    b = apply_map(f, bwd)
    return tuple((ai - bi) / (2 * h) for ai, bi in zip(a, b))


# --- semantic equality protocol ---------------------------------------------------

@dataclass(frozen=True, slots=True)
class EqOutcome:
    status: str  # pass | fail | starved
    worst_residual: float
    witness: Point | None = None
    note: str = ""
    samples: int = 0

    @property
    def ok(self) -> bool:
        return self.status == "pass"


def _residual(a: float, b: float, floor: float) -> float:
    return abs(a - b) / max(abs(a), abs(b), floor)


def probe_points(dim: int) -> list[Point]:
    """Deterministic probes visited before random sampling.  Uniform samples
    almost surely miss measure-zero sets, so guard disagreements at points
    like the origin (x != 0) or axis points (x - 1 != 0) are probed directly."""
    probes: list[Point] = [tuple(0.0 for _ in range(dim))]
    for i in range(dim):
        for s in (1.0, -1.0):
            probes.append(tuple(s if j == i else 0.0 for j in range(dim)))
    for c in (1.0, -1.0, 0.5):
        probes.append(tuple(c for _ in range(dim)))
    return probes


def sample_points(dim: int, cfg: RunConfig, label: str) -> Iterable[Point]:
    rng = random.Random(derive_seed(cfg.seed, label))
    if dim == 0:
        yield ()
        return
    yield from probe_points(dim)
    for _ in range(cfg.retry_cap):
        yield tuple(rng.uniform(-cfg.radius, cfg.radius) for _ in range(dim))


def maps_equal(f: SmoothMap, g: SmoothMap, cfg: RunConfig, label: str) -> EqOutcome:
    """Partial-map equality: guards agree as booleans at every sampled point,
    values agree on the common domain within tol_rel (abs floor tol_abs)."""
    if f.dom != g.dom or f.cod != g.cod:
        return EqOutcome("fail", float("inf"), None, "shape mismatch")
    worst = 0.0
    accepted = 0
    target = cfg.samples if f.dom.dim > 0 else 1
    for point in sample_points(f.dom.dim, cfg, label):
        env = point_env(point)
        gf = guard_eval(f.guard, env)
        gg = guard_eval(g.guard, env)
        if gf != gg:
            return EqOutcome("fail", float("inf"), point, "guard mismatch", accepted)
        if not gf:
            continue
        try:
            fv = tuple(eval_expr(e, env) for e in f.coords)
            gv = tuple(eval_expr(e, env) for e in g.coords)
        except OutOfDomainError as fault:
            return EqOutcome("fail", float("inf"), point, f"eval fault: {fault}", accepted)
        for a, b in zip(fv, gv):
            worst = max(worst, _residual(a, b, cfg.abs_floor))
        accepted += 1
        if worst > cfg.tol_rel:
            return EqOutcome("fail", worst, point, "value mismatch", accepted)
        if accepted >= target:
            return EqOutcome("pass", worst, None, "", accepted)
    return EqOutcome("starved", worst, None, "sampling starvation", accepted)


def map_total(f: SmoothMap, cfg: RunConfig, label: str) -> EqOutcome:
    """Totality: the guard holds at every sampled point of the ambient box."""
    count = 0
    target = cfg.samples if f.dom.dim > 0 else 1
    for point in sample_points(f.dom.dim, cfg, label):
        if not in_domain(f, point):
            return EqOutcome("fail", float("inf"), point, "guard fails", count)
        count += 1
        if count >= target:
            return EqOutcome("pass", 0.0, None, "", count)
    return EqOutcome("pass", 0.0, None, "", count)


def map_leq(f: SmoothMap, g: SmoothMap, cfg: RunConfig, label: str) -> EqOutcome:
    """f <= g: wherever f is defined, g is defined and agrees."""
    if f.dom != g.dom or f.cod != g.cod:
        return EqOutcome("fail", float("inf"), None, "shape mismatch")
    worst = 0.0
    accepted = 0
    target = cfg.samples if f.dom.dim > 0 else 1
    for point in sample_points(f.dom.dim, cfg, label):
        env = point_env(point)
        if not guard_eval(f.guard, env):
            continue
        if not guard_eval(g.guard, env):
            return EqOutcome("fail", float("inf"), point, "domain not contained", accepted)
        try:
            fv = tuple(eval_expr(e, env) for e in f.coords)
            gv = tuple(eval_expr(e, env) for e in g.coords)
        except OutOfDomainError as fault:
            return EqOutcome("fail", float("inf"), point, f"eval fault: {fault}", accepted)
        for a, b in zip(fv, gv):
            worst = max(worst, _residual(a, b, cfg.abs_floor))
        accepted += 1
        if worst > cfg.tol_rel:
            return EqOutcome("fail", worst, point, "value mismatch", accepted)
        if accepted >= target:
            return EqOutcome("pass", worst, None, "", accepted)
    return EqOutcome("starved", worst, None, "sampling starvation", accepted)


def maps_compatible(f: SmoothMap, g: SmoothMap, cfg: RunConfig, label: str) -> EqOutcome:
    """f and g agree on the intersection of their domains."""
    if f.dom != g.dom or f.cod != g.cod:
        return EqOutcome("fail", float("inf"), None, "shape mismatch")
    worst = 0.0
    accepted = 0
    target = cfg.samples if f.dom.dim > 0 else 1
    for point in sample_points(f.dom.dim, cfg, label):
        env = point_env(point)
        if not (guard_eval(f.guard, env) and guard_eval(g.guard, env)):
            continue
        try:
            fv = tuple(eval_expr(e, env) for e in f.coords)
            gv = tuple(eval_expr(e, env) for e in g.coords)
        except OutOfDomainError as fault:
            return EqOutcome("fail", float("inf"), point, f"eval fault: {fault}", accepted)
        for a, b in zip(fv, gv):
            worst = max(worst, _residual(a, b, cfg.abs_floor))
        accepted += 1
        if worst > cfg.tol_rel:
            return EqOutcome("fail", worst, point, "value mismatch", accepted)
        if accepted >= target:
            return EqOutcome("pass", worst, None, "", accepted)
    return EqOutcome("starved", worst, None, "sampling starvation", accepted)


def symbolically_equal(f: SmoothMap, g: SmoothMap) -> bool:
    """Exact structural equality after simplify (guards as atom sets)."""
    if f.dom != g.dom or f.cod != g.cod:
        return False
    if tuple(simplify(e) for e in f.coords) != tuple(simplify(e) for e in g.coords):
        return False
    return set(f.guard.atoms) == set(g.guard.atoms)


# --- category adapter -------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class SmoothCategory:
    """The smooth base presented through the small category protocol the jet
    construction is written against."""

    def product(self, objs: Sequence[SpaceObject]) -> SpaceObject:
        return SpaceObject(sum(o.dim for o in objs))

    def terminal(self) -> SpaceObject:
        return TERMINAL

    def src(self, f: SmoothMap) -> SpaceObject:
        return f.dom

    def dst(self, f: SmoothMap) -> SpaceObject:
        return f.cod

    def identity(self, obj: SpaceObject, order: int | None = None) -> SmoothMap:
        return identity(obj)

    def then(self, f: SmoothMap, g: SmoothMap) -> SmoothMap:
        return then(f, g)

    def tuple_map(self, maps: Sequence[SmoothMap]) -> SmoothMap:
        return tuple_map(maps)

    def select(self, blocks: Sequence[SpaceObject], picks: Sequence[int],
               order: int | None = None) -> SmoothMap:
        return select([b.dim for b in blocks], picks)

    def bang(self, obj: SpaceObject, order: int | None = None) -> SmoothMap:
        return bang(obj)

    def restriction(self, f: SmoothMap) -> SmoothMap:
        return restriction_of(f)

    def order_of(self, f: SmoothMap) -> int | None:
        return None

    def shape_eq(self, a: SpaceObject, b: SpaceObject) -> bool:
        return a == b

    def equal(self, f: SmoothMap, g: SmoothMap, cfg: RunConfig, label: str) -> EqOutcome:
        return maps_equal(f, g, cfg, label)

    def total(self, f: SmoothMap, cfg: RunConfig, label: str) -> EqOutcome:
        return map_total(f, cfg, label)

    def leq(self, f: SmoothMap, g: SmoothMap, cfg: RunConfig, label: str) -> EqOutcome:
        return map_leq(f, g, cfg, label)

    def compatible(self, f: SmoothMap, g: SmoothMap, cfg: RunConfig, label: str) -> EqOutcome:
        return maps_compatible(f, g, cfg, label)


SMOOTH = SmoothCategory()


def from_parsed(parsed) -> SmoothMap:
    """Wrap a ParsedMap literal into a SmoothMap."""
    return SmoothMap(SpaceObject(parsed.arity_in), SpaceObject(parsed.arity_out),
                     parsed.coords, parsed.guard)


def parse_smooth_map(text: str) -> SmoothMap:
    from .expr import parse_map
    return from_parsed(parse_map(text))
