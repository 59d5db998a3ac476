"""Truncated jet morphisms over a base category of partial maps.

A jet from (monoid A, point object X) to (B, Y) is a sequence
(f_*, f_1, .., f_N): the base map plus its multilinear symmetric derivative
tower, each f_n: A^n x X -> B defined exactly where f_* is.  Composition sums
over set partitions of the direction slots (the classical higher-order chain
rule); restriction, products, the additive-map embedding, the counit/
comultiplication pair and the derivative operator are all computed against a
small protocol (product / select / tuple / then / restriction / equality), so
the construction applies verbatim to its own output: jets of jets are jets
whose base is the jet category one level down.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .config import RunConfig
from .smooth import (
    EqOutcome,
    LAssignment,
    MonoidStructure,
    SMOOTH,
    SmoothMap,
    SpaceObject,
    componentwise_monoid,
    d_n,
    insertion_slots,
    parse_smooth_map,
)


class JetError(Exception):
    pass


class NonAdditiveMapError(JetError):
    pass


Partition = tuple[tuple[int, ...], ...]


@lru_cache(maxsize=None)
def enumerate_partitions(n: int) -> tuple[Partition, ...]:
    """All set partitions of {1..n} in canonical form: blocks ordered by least
    element, elements ascending.  Count is the n-th Bell number."""
    if n < 1:
        raise ValueError("partitions are enumerated for n >= 1")
    partitions: list[tuple[tuple[int, ...], ...]] = [((1,),)]
    for k in range(2, n + 1):
        extended = []
        for p in partitions:
            for i in range(len(p)):
                extended.append(p[:i] + (p[i] + (k,),) + p[i + 1:])
            extended.append(p + ((k,),))
        partitions = extended
    return tuple(partitions)


@dataclass(frozen=True, slots=True)
class FaaObject:
    """A pair of a (total) commutative monoid and a point object, both living
    in the same base category."""
    monoid: MonoidStructure
    point: object

    def __str__(self):
        return f"({self.monoid.carrier}, {self.point})"


@dataclass(frozen=True, slots=True)
class JetMorphism:
    base: object  # category adapter of the components
    src: FaaObject
    dst: FaaObject
    star: object
    derivs: tuple

    @property
    def order(self) -> int:
        return len(self.derivs)

    def component(self, n: int):
        """f_* for n = 0, else f_n."""
        return self.star if n == 0 else self.derivs[n - 1]

    def __str__(self):
        parts = [f"*: {self.star}"]
        parts += [f"{i + 1}: {d}" for i, d in enumerate(self.derivs)]
        return "\n".join(parts)


def truncate_jet(f: JetMorphism, order: int) -> JetMorphism:
    if order >= f.order:
        return f
    return JetMorphism(f.base, f.src, f.dst, f.star, f.derivs[:order])


def lambda_object(m: MonoidStructure) -> FaaObject:
    """The object of vectors for a monoid: the carrier pointed at itself."""
    return FaaObject(m, m.carrier)


def jet_l0(obj: FaaObject) -> FaaObject:
    return lambda_object(obj.monoid)


def _is_componentwise(m: MonoidStructure) -> bool:
    return isinstance(m.carrier, SpaceObject) and m == componentwise_monoid(m.carrier.dim)


def mon_product(cat, m1: MonoidStructure, m2: MonoidStructure) -> MonoidStructure:
    """Product monoid: paired carriers, addition through the middle-interchange."""
    if _is_componentwise(m1) and _is_componentwise(m2):
        return componentwise_monoid(m1.carrier.dim + m2.carrier.dim)
    c1, c2 = m1.carrier, m2.carrier
    carrier = cat.product([c1, c2])
    order = cat.order_of(m1.add)
    blocks = [c1, c2, c1, c2]
    add = cat.tuple_map([
        cat.then(cat.select(blocks, [0, 2], order), m1.add),
        cat.then(cat.select(blocks, [1, 3], order), m2.add),
    ])
    zero = cat.tuple_map([m1.zero, m2.zero])
    return MonoidStructure(carrier, add, zero)


def trivial_monoid(cat, order: int = 0) -> MonoidStructure:
    t = cat.terminal()
    return MonoidStructure(t, cat.bang(cat.product([t, t]), order), cat.identity(t, order))


def faa_product(cat, o1: FaaObject, o2: FaaObject) -> FaaObject:
    return FaaObject(mon_product(cat, o1.monoid, o2.monoid),
                     cat.product([o1.point, o2.point]))


def product_objects(cat, objs) -> FaaObject:
    if not objs:
        return FaaObject(trivial_monoid(cat), cat.terminal())
    out = objs[0]
    for o in objs[1:]:
        out = faa_product(cat, out, o)
    return out


def obj_shape_eq(cat, a: FaaObject, b: FaaObject) -> bool:
    return cat.shape_eq(a.point, b.point) and cat.shape_eq(a.monoid.carrier, b.monoid.carrier)


def monoid_zero_arrow(cat, dom_obj, monoid: MonoidStructure, order):
    """The zero map dom -> carrier (total; callers restrict explicitly)."""
    return cat.then(cat.bang(dom_obj, order), monoid.zero)


def mon_sum(cat, monoid: MonoidStructure, terms):
    out = terms[0]
    for t in terms[1:]:
        out = cat.then(cat.tuple_map([out, t]), monoid.add)
    return out


def _vector_blocks(obj: FaaObject, n: int) -> list:
    return [obj.monoid.carrier] * n + [obj.point]


# --- structural jets -------------------------------------------------------------

def linear_block_jet(cat, src: FaaObject, dst: FaaObject, point_map, carrier_map,
                     order: int) -> JetMorphism:
    """A total jet (p, pi_0 l, 0, 0, ...) from a point-level map and an
    additive carrier-level map; projections, selections and identities all
    have this shape."""
    blocks = [src.monoid.carrier, src.point]
    f1 = cat.then(cat.select(blocks, [0], order), carrier_map)
    derivs = [f1]
    for n in range(2, order + 1):
        dom = cat.product(_vector_blocks(src, n))
        derivs.append(monoid_zero_arrow(cat, dom, dst.monoid, order))
    return JetMorphism(cat, src, dst, point_map, tuple(derivs[:order]))


def identity_jet(obj: FaaObject, order: int, cat=SMOOTH) -> JetMorphism:
    return linear_block_jet(cat, obj, obj, cat.identity(obj.point, order),
                            cat.identity(obj.monoid.carrier, order), order)


def projection_jet(objs, i: int, order: int, cat=SMOOTH) -> JetMorphism:
    return select_jet(objs, [i], order, cat)


def select_jet(objs, picks, order: int, cat=SMOOTH) -> JetMorphism:
    src = product_objects(cat, list(objs))
    dst = product_objects(cat, [objs[i] for i in picks])
    point_map = cat.select([o.point for o in objs], picks, order)
    carrier_map = cat.select([o.monoid.carrier for o in objs], picks, order)
    return linear_block_jet(cat, src, dst, point_map, carrier_map, order)


def zero_jet(src: FaaObject, m_dst: MonoidStructure, order: int, cat=SMOOTH) -> JetMorphism:
    star = monoid_zero_arrow(cat, src.point, m_dst, order)
    derivs = []
    for n in range(1, order + 1):
        dom = cat.product(_vector_blocks(src, n))
        derivs.append(monoid_zero_arrow(cat, dom, m_dst, order))
    return JetMorphism(cat, src, lambda_object(m_dst), star, tuple(derivs))


def _lambda_unchecked(cat, h, m_src: MonoidStructure, m_dst: MonoidStructure,
                      order: int) -> JetMorphism:
    src = lambda_object(m_src)
    dst = lambda_object(m_dst)
    blocks = [src.monoid.carrier, src.point]
    f1 = cat.then(cat.select(blocks, [0], order), h)
    derivs = [f1]
    for n in range(2, order + 1):
        dom = cat.product(_vector_blocks(src, n))
        derivs.append(monoid_zero_arrow(cat, dom, m_dst, order))
    return JetMorphism(cat, src, dst, h, tuple(derivs[:order]))


def lambda_embed(h, m_src: MonoidStructure, m_dst: MonoidStructure, order: int,
                 cat=SMOOTH, cfg: RunConfig | None = None) -> JetMorphism:
    """Embed an additive zero-preserving carrier map as the jet
    (h, pi_0 h, 0, ...).  Additivity and zero preservation are verified by
    sampling; violations are rejected."""
    if cfg is None:
        cfg = RunConfig(samples=50)
    c = m_src.carrier
    sel_order = cat.order_of(h)
    both = [c, c]
    h_pair = cat.tuple_map([
        cat.then(cat.select(both, [0], sel_order), h),
        cat.then(cat.select(both, [1], sel_order), h),
    ])
    additive = cat.equal(cat.then(m_src.add, h), cat.then(h_pair, m_dst.add),
                         cfg, "lambda:additive")
    if not additive.ok:
        raise NonAdditiveMapError(f"map is not additive: {additive.note}")
    zero_ok = cat.equal(cat.then(m_src.zero, h), m_dst.zero, cfg, "lambda:zero")
    if not zero_ok.ok:
        raise NonAdditiveMapError("map does not preserve zero")
    return _lambda_unchecked(cat, h, m_src, m_dst, order)


def epsilon(f: JetMorphism):
    """Counit: extract the base map."""
    return f.star


# --- composition -----------------------------------------------------------------

def compose_jets(f: JetMorphism, g: JetMorphism) -> JetMorphism:
    """Diagrammatic composite f then g.  Each component is the partition sum:
    (fg)_n = sum over partitions {B_1..B_k} of {1..n} of
    g_k(f_|B_1|(v_B1; x), ..., f_|B_k|(v_Bk; x); f_*(x)).  Orders are
    truncated to the shorter operand (the usable-order pyramid)."""
    cat = f.base
    if g.base != cat:
        raise JetError("jets live over different bases")
    if not obj_shape_eq(cat, f.dst, g.src):
        raise JetError(f"cannot compose {f.dst} into {g.src}")
    order = min(f.order, g.order)
    star = cat.then(f.star, g.star)
    derivs = []
    for n in range(1, order + 1):
        blocks = _vector_blocks(f.src, n)
        terms = []
        for partition in enumerate_partitions(n):
            k = len(partition)
            args = []
            for block in partition:
                comp = f.derivs[len(block) - 1]
                sel = cat.select(blocks, [b - 1 for b in block] + [n],
                                 cat.order_of(comp))
                args.append(cat.then(sel, comp))
            point = cat.then(cat.select(blocks, [n], cat.order_of(f.star)), f.star)
            args.append(point)
            terms.append(cat.then(cat.tuple_map(args), g.derivs[k - 1]))
        derivs.append(mon_sum(cat, g.dst.monoid, terms))
    return JetMorphism(cat, f.src, g.dst, star, tuple(derivs))


def tuple_jets(jets) -> JetMorphism:
    cat = jets[0].base
    order = min(j.order for j in jets)
    star = cat.tuple_map([j.star for j in jets])
    derivs = tuple(cat.tuple_map([j.derivs[n] for j in jets]) for n in range(order))
    dst = product_objects(cat, [j.dst for j in jets])
    return JetMorphism(cat, jets[0].src, dst, star, derivs)


def pair_jets(f: JetMorphism, g: JetMorphism) -> JetMorphism:
    return tuple_jets([f, g])


def product_jets(o1: FaaObject, o2: FaaObject, cat=SMOOTH) -> FaaObject:
    return faa_product(cat, o1, o2)


def restriction_jet(f: JetMorphism) -> JetMorphism:
    """(rs f_*, rs(pi_1 f_*) pi_0, rs(pi_2 f_*) 0, ...): the restriction
    idempotent of a jet; guards mention only the point block."""
    cat = f.base
    star = cat.restriction(f.star)
    hint = cat.order_of(f.star)
    if hint is None:
        hint = f.order
    derivs = []
    for n in range(1, f.order + 1):
        blocks = _vector_blocks(f.src, n)
        idem = cat.restriction(cat.then(cat.select(blocks, [n], hint), f.star))
        if n == 1:
            body = cat.select(blocks, [0], hint)
        else:
            body = monoid_zero_arrow(cat, cat.product(blocks), f.src.monoid, hint)
        derivs.append(cat.then(idem, body))
    return JetMorphism(cat, f.src, f.src, star, tuple(derivs))


# --- equality, order, compatibility ------------------------------------------------

def _combine(outcomes) -> EqOutcome:
    worst = 0.0
    samples = 0
    for out in outcomes:
        samples += out.samples
        if out.status != "pass":
            return EqOutcome(out.status, out.worst_residual, out.witness, out.note, samples)
        worst = max(worst, out.worst_residual)
    return EqOutcome("pass", worst, None, "", samples)


def jet_equal(f: JetMorphism, g: JetMorphism, cfg: RunConfig, label: str) -> EqOutcome:
    """Componentwise equality up to the common usable order."""
    cat = f.base
    order = min(f.order, g.order)
    outcomes = [cat.equal(f.star, g.star, cfg, f"{label}:*")]
    for n in range(1, order + 1):
        outcomes.append(cat.equal(f.derivs[n - 1], g.derivs[n - 1], cfg, f"{label}:{n}"))
    return _combine(outcomes)


def is_total(f: JetMorphism, cfg: RunConfig, label: str = "total") -> bool:
    """Total iff the jet's restriction is the identity jet."""
    rid = identity_jet(f.src, f.order, f.base)
    return jet_equal(restriction_jet(f), rid, cfg, label).ok


def leq(f: JetMorphism, g: JetMorphism, cfg: RunConfig, label: str = "leq") -> bool:
    """f <= g decided componentwise (restriction of f then g agrees with f)."""
    cat = f.base
    order = min(f.order, g.order)
    outcomes = [cat.leq(f.star, g.star, cfg, f"{label}:*")]
    for n in range(1, order + 1):
        outcomes.append(cat.leq(f.derivs[n - 1], g.derivs[n - 1], cfg, f"{label}:{n}"))
    return _combine(outcomes).ok


def compatible(f: JetMorphism, g: JetMorphism, cfg: RunConfig, label: str = "cmp") -> bool:
    """f and g agree wherever both are defined, componentwise."""
    cat = f.base
    order = min(f.order, g.order)
    outcomes = [cat.compatible(f.star, g.star, cfg, f"{label}:*")]
    for n in range(1, order + 1):
        outcomes.append(cat.compatible(f.derivs[n - 1], g.derivs[n - 1], cfg, f"{label}:{n}"))
    return _combine(outcomes).ok


# --- the derivative on jets ----------------------------------------------------------

def _derivative_tail_term(cat, f: JetMorphism, n: int, blocks):
    """The f_{n+1}(c, b_1..b_n; x) term of the derivative's n-th component."""
    comp = f.derivs[n]
    picks = [2 * n] + [2 * j + 1 for j in range(n)] + [2 * n + 1]
    sel = cat.select(blocks, picks, cat.order_of(comp))
    return cat.then(sel, comp)


def derivative_jet(f: JetMorphism) -> JetMorphism:
    """D on jets: source L0(S) x S, target L0(T), one order consumed.

    Component n at directions (a_1,b_1)..(a_n,b_n) and point (c,x):
        sum_i f_n(a_i, b_1,..,^b_i,..,b_n; x)  +  f_{n+1}(c, b_1,..,b_n; x).
    The order-1 case is the two-term formula forced by linearity of the
    comultiplication's first component; higher orders extend it so that the
    tower of a coalgebra image is the coalgebra image of the tower."""
    if f.order < 1:
        raise JetError("derivative consumed the whole jet order")
    cat = f.base
    src = faa_product(cat, lambda_object(f.src.monoid), f.src)
    dst = lambda_object(f.dst.monoid)
    order = f.order - 1
    star = f.derivs[0]
    car = f.src.monoid.carrier
    derivs = []
    for n in range(1, order + 1):
        # fine-grained block layout of (AxA)^n x (AxX)
        blocks = [car, car] * n + [car, f.src.point]
        terms = []
        for i in range(n):
            picks = [2 * i] + [2 * j + 1 for j in range(n) if j != i] + [2 * n + 1]
            comp = f.derivs[n - 1]
            sel = cat.select(blocks, picks, cat.order_of(comp))
            terms.append(cat.then(sel, comp))
        terms.append(_derivative_tail_term(cat, f, n, blocks))
        derivs.append(mon_sum(cat, dst.monoid, terms))
    return JetMorphism(cat, src, dst, star, tuple(derivs))


# --- the category adapter: jets over a base are themselves a base ---------------------

@dataclass(frozen=True, slots=True)
class FaaCategory:
    base: object

    def product(self, objs):
        return product_objects(self.base, list(objs))

    def terminal(self):
        return FaaObject(trivial_monoid(self.base), self.base.terminal())

    def src(self, f: JetMorphism):
        return f.src

    def dst(self, f: JetMorphism):
        return f.dst

    def identity(self, obj: FaaObject, order: int):
        return identity_jet(obj, order, self.base)

    def then(self, f: JetMorphism, g: JetMorphism):
        return compose_jets(f, g)

    def tuple_map(self, maps):
        return tuple_jets(list(maps))

    def select(self, blocks, picks, order: int):
        return select_jet(list(blocks), list(picks), order, self.base)

    def bang(self, obj: FaaObject, order: int):
        base = self.base
        star = base.bang(obj.point, order)
        derivs = tuple(
            base.bang(base.product(_vector_blocks(obj, n)), order)
            for n in range(1, order + 1))
        return JetMorphism(base, obj, self.terminal(), star, derivs)

    def restriction(self, f: JetMorphism):
        return restriction_jet(f)

    def order_of(self, f: JetMorphism) -> int:
        return f.order

    def shape_eq(self, a: FaaObject, b: FaaObject) -> bool:
        return obj_shape_eq(self.base, a, b)

    def equal(self, f, g, cfg, label) -> EqOutcome:
        return jet_equal(f, g, cfg, label)

    def total(self, f, cfg, label) -> EqOutcome:
        rid = identity_jet(f.src, f.order, self.base)
        return jet_equal(restriction_jet(f), rid, cfg, label)

    def leq(self, f, g, cfg, label) -> EqOutcome:
        cat = self.base
        order = min(f.order, g.order)
        outs = [cat.leq(f.star, g.star, cfg, f"{label}:*")]
        for n in range(1, order + 1):
            outs.append(cat.leq(f.derivs[n - 1], g.derivs[n - 1], cfg, f"{label}:{n}"))
        return _combine(outs)

    def compatible(self, f, g, cfg, label) -> EqOutcome:
        cat = self.base
        order = min(f.order, g.order)
        outs = [cat.compatible(f.star, g.star, cfg, f"{label}:*")]
        for n in range(1, order + 1):
            outs.append(cat.compatible(f.derivs[n - 1], g.derivs[n - 1], cfg, f"{label}:{n}"))
        return _combine(outs)


@lru_cache(maxsize=None)
def faa_over(base) -> FaaCategory:
    return FaaCategory(base)


# --- the comultiplication --------------------------------------------------------------

def jet_L(obj: FaaObject, cat, order: int) -> MonoidStructure:
    """The vector-object monoid of a jet-category object: the embedded image
    of the object's own monoid."""
    m = obj.monoid
    add = _lambda_unchecked(cat, m.add, mon_product(cat, m, m), m, order)
    zero = _lambda_unchecked(cat, m.zero, trivial_monoid(cat), m, order)
    return MonoidStructure(lambda_object(m), add, zero)


def delta_object(obj: FaaObject, cat, order: int) -> FaaObject:
    return FaaObject(jet_L(obj, cat, order), obj)


def _dn_jet_blocks(src: FaaObject, n: int) -> list[FaaObject]:
    blocks = [jet_l0(src), src]
    for _ in range(n - 1):
        blocks = [jet_l0(b) for b in blocks] + blocks
    return blocks


def faa_d_n(f: JetMorphism, n: int) -> JetMorphism:
    """Symmetric n-th derivative of a jet: zero-insertion into the n-fold
    derivative, exactly as in the base model."""
    if n == 0:
        return f
    if n > f.order:
        raise JetError("order exhausted")
    cat = f.base
    fb = faa_over(cat)
    dnf = f
    for _ in range(n):
        dnf = derivative_jet(dnf)
    inner = f.order - n
    blocks = _dn_jet_blocks(f.src, n)
    slots = insertion_slots(n)
    src_blocks = [jet_l0(f.src)] * n + [f.src]
    entries = []
    src_obj = product_objects(cat, src_blocks)
    for block, slot in zip(blocks, slots):
        if slot[0] == "zero":
            entries.append(zero_jet(src_obj, block.monoid, inner, cat))
        elif slot[0] == "v":
            entries.append(fb.select(src_blocks, [slot[1] - 1], inner))
        else:
            entries.append(fb.select(src_blocks, [n], inner))
    ins = fb.tuple_map(entries)
    return fb.then(ins, dnf)


def delta(f: JetMorphism) -> JetMorphism:
    """Comultiplication: the jet of jets (f, D f, D_2 f, ...), a morphism one
    level up whose star is f itself.  Component n has usable order N - n; an
    order-0 jet yields the star-only double jet."""
    cat = f.base
    fb = faa_over(cat)
    derivs = tuple(faa_d_n(f, n) for n in range(1, f.order + 1))
    src2 = delta_object(f.src, cat, f.order)
    dst2 = delta_object(f.dst, cat, f.order)
    return JetMorphism(fb, src2, dst2, f, derivs)


def map_jet(f: JetMorphism, morphism_fn, object_fn, new_base) -> JetMorphism:
    """Apply a product-preserving functor componentwise (the endofunctor's
    action on a jet one level up)."""
    return JetMorphism(
        new_base, object_fn(f.src), object_fn(f.dst),
        morphism_fn(f.star), tuple(morphism_fn(d) for d in f.derivs))


def faa_epsilon_jet(f: JetMorphism) -> JetMorphism:
    """The endofunctor applied to the counit: extract every component's star."""
    inner = f.star.base
    return map_jet(f, epsilon, lambda o: o.point, inner)


def faa_delta_jet(f: JetMorphism) -> JetMorphism:
    """The endofunctor applied to the comultiplication, componentwise.  The
    object action sends both the monoid data and the point through delta."""
    inner = f.star.base
    order = f.star.order

    def obj_fn(o: FaaObject) -> FaaObject:
        return FaaObject(
            MonoidStructure(delta_object(o.monoid.carrier, inner, order),
                            delta(o.monoid.add), delta(o.monoid.zero)),
            delta_object(o.point, inner, order))

    return map_jet(f, delta, obj_fn, faa_over(inner))


# --- the cofree coalgebra over the smooth model ------------------------------------------

def cofree_jet(f: SmoothMap, L: LAssignment, order: int) -> JetMorphism:
    """The coalgebra image of a base map: its full symmetric derivative tower
    (f, D f, D_2 f, ..., D_N f), computed by nested directional derivatives."""
    src = FaaObject(L.monoid(f.dom), f.dom)
    dst = FaaObject(L.monoid(f.cod), f.cod)
    derivs = tuple(d_n(f, n, L) for n in range(1, order + 1))
    return JetMorphism(SMOOTH, src, dst, f, derivs)


def jet_from_text(text: str, order: int, L: LAssignment) -> JetMorphism:
    return cofree_jet(parse_smooth_map(text), L, order)


# --- linearity ----------------------------------------------------------------------------

def is_linear_object(obj: FaaObject, cat=SMOOTH) -> bool:
    return cat.shape_eq(obj.point, obj.monoid.carrier)


def is_linear(f: JetMorphism, cfg: RunConfig, label: str = "linear") -> bool:
    """Between linear objects: D(f) equals the first projection followed by f."""
    cat = f.base
    if not (is_linear_object(f.src, cat) and is_linear_object(f.dst, cat)):
        raise JetError("linearity is defined between linear objects only")
    if f.order < 1:
        raise JetError("order exhausted")
    lhs = derivative_jet(f)
    fb = faa_over(cat)
    pi0 = fb.select([lambda_object(f.src.monoid), f.src], [0], f.order - 1)
    rhs = fb.then(pi0, truncate_jet(f, f.order - 1))
    return jet_equal(lhs, rhs, cfg, label).ok


# --- serialization (smooth-based jets) ------------------------------------------------------

def jet_to_dict(f: JetMorphism) -> dict:
    if f.base != SMOOTH:
        raise JetError("only jets over the smooth base serialize")
    return {
        "src": {"carrier_dim": f.src.monoid.carrier.dim, "point_dim": f.src.point.dim},
        "dst": {"carrier_dim": f.dst.monoid.carrier.dim, "point_dim": f.dst.point.dim},
        "order": f.order,
        "star": str(f.star),
        "derivs": [str(d) for d in f.derivs],
    }


def jet_from_dict(data: dict) -> JetMorphism:
    src = FaaObject(componentwise_monoid(data["src"]["carrier_dim"]),
                    SpaceObject(data["src"]["point_dim"]))
    dst = FaaObject(componentwise_monoid(data["dst"]["carrier_dim"]),
                    SpaceObject(data["dst"]["point_dim"]))
    star = parse_smooth_map(data["star"])
    derivs = tuple(parse_smooth_map(t) for t in data["derivs"])
    jet = JetMorphism(SMOOTH, src, dst, star, derivs)
    _validate_jet_dims(jet)
    return jet


def _validate_jet_dims(f: JetMorphism):
    a = f.src.monoid.carrier.dim
    x = f.src.point.dim
    b = f.dst.monoid.carrier.dim
    if f.star.dom.dim != x or f.star.cod.dim != f.dst.point.dim:
        raise JetError("star dimensions disagree with the declared objects")
    for n, d in enumerate(f.derivs, start=1):
        if d.dom.dim != n * a + x or d.cod.dim != b:
            raise JetError(f"component {n} has wrong dimensions")
