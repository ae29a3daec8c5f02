"""The simple fibration: context-indexed polynomial maps and their calculus.

Objects are pairs (context A, payload X); a morphism (A, X) -> (B, Y) is a
pair (f : A -> B, g : A x X -> Y).  Composition substitutes the context
image, the differential acts blockwise through the exchange permutation,
and each fibre over a fixed context carries its own tangent structure: the
payload-block analogue of the base model's, with the context inert.  The
vertical tangent is exactly the partial derivative in the payload
directions, with the context direction frozen to zero.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import scalars
from .errors import DimensionMismatch, PreconditionFailure
from .cdc import cdc_D
from .model import LiftWitness, TangentModel, TnObject
from .poly import (
    Poly,
    PolyMap,
    identity_map,
    permutation_map,
    poly_add,
    polymap_add,
    polymap_compose,
    polymap_equal,
    polymap_pair,
    polymap_proj,
    polymap_to_str,
    random_polymap,
    zero_map,
)
from .report import Report


@dataclass(frozen=True)
class SimpleObj:
    context: int
    payload: int


@dataclass(frozen=True)
class SimpleMor:
    f: PolyMap
    g: PolyMap

    @property
    def dom(self) -> SimpleObj:
        return SimpleObj(self.f.dom, self.g.dom - self.f.dom)

    @property
    def cod(self) -> SimpleObj:
        return SimpleObj(self.f.cod, self.g.cod)


def simple_identity(obj: SimpleObj, mode: str = scalars.RATIONAL) -> SimpleMor:
    n = obj.context + obj.payload
    return SimpleMor(
        identity_map(obj.context, mode),
        polymap_proj(n, obj.context, n, mode),
    )


def simple_compose(m1: SimpleMor, m2: SimpleMor) -> SimpleMor:
    """(f, g)(f', g') = (ff', <pi0 f, g> g')."""
    if m1.f.cod != m2.f.dom or m1.g.cod != m2.g.dom - m2.f.dom:
        raise DimensionMismatch("object-mismatch in simple composition")
    ctx = polymap_proj(m1.g.dom, 0, m1.f.dom, m1.f.mode)
    mixed = polymap_pair(polymap_compose(ctx, m1.f), m1.g)
    return SimpleMor(polymap_compose(m1.f, m2.f), polymap_compose(mixed, m2.g))


def _ex_blocks(a: int, x: int, mode: str) -> PolyMap:
    """(A, A, X, X) -> (A, X, A, X), swapping the middle two blocks."""
    images = (
        list(range(0, a))
        + list(range(2 * a, 2 * a + x))
        + list(range(a, 2 * a))
        + list(range(2 * a + x, 2 * a + 2 * x))
    )
    return permutation_map(2 * a + 2 * x, images, mode)


def simple_D(m: SimpleMor) -> SimpleMor:
    """D(f, g) := (D(f), ex D(g)) over the doubled object (A x A, X x X)."""
    a = m.f.dom
    x = m.g.dom - a
    return SimpleMor(
        cdc_D(m.f), polymap_compose(_ex_blocks(a, x, m.f.mode), cdc_D(m.g))
    )


def _freeze_context(a: int, x: int, mode: str) -> PolyMap:
    """(a, v, x) |-> (0, v, a, x), injecting into D(g)'s doubled domain."""
    dom = a + 2 * x
    return polymap_pair(
        zero_map(dom, a, mode),
        polymap_proj(dom, a, a + x, mode),
        polymap_proj(dom, 0, a, mode),
        polymap_proj(dom, a + x, dom, mode),
    )


def vertical_tangent_map(a: int, g: PolyMap) -> PolyMap:
    """Payload tangent of g : A x X -> Y as a map A x (X x X) -> Y x Y."""
    x = g.dom - a
    dom = a + 2 * x
    tangent = polymap_compose(_freeze_context(a, x, g.mode), cdc_D(g))
    point = polymap_compose(
        polymap_pair(
            polymap_proj(dom, 0, a, g.mode), polymap_proj(dom, a + x, dom, g.mode)
        ),
        g,
    )
    return polymap_pair(tangent, point)


def vertical_T(context: int, m: SimpleMor) -> SimpleMor:
    """Fibrewise tangent of a vertical morphism; payload dims double."""
    if not polymap_equal(m.f, identity_map(context, m.f.mode)):
        raise PreconditionFailure("not-vertical: first component must be the identity")
    return SimpleMor(m.f, vertical_tangent_map(context, m.g))


# ---------------------------------------------------------------------------
# Left-additive and product structure of the simple fibration, used by the
# CD-axiom checks

def simple_add(m1: SimpleMor, m2: SimpleMor) -> SimpleMor:
    """Pointwise sum of parallel morphisms (contexts added pointwise too)."""
    return SimpleMor(polymap_add(m1.f, m2.f), polymap_add(m1.g, m2.g))


def simple_zero_mor(dom: SimpleObj, cod: SimpleObj, mode: str) -> SimpleMor:
    return SimpleMor(
        zero_map(dom.context, cod.context, mode),
        zero_map(dom.context + dom.payload, cod.payload, mode),
    )


def simple_product(o1: SimpleObj, o2: SimpleObj) -> SimpleObj:
    return SimpleObj(o1.context + o2.context, o1.payload + o2.payload)


def simple_pair(m1: SimpleMor, m2: SimpleMor) -> SimpleMor:
    """<m1, m2> : shared domain -> product of the codomains."""
    if m1.f.dom != m2.f.dom or m1.g.dom != m2.g.dom:
        raise DimensionMismatch("paired simple morphisms need a shared domain")
    return SimpleMor(polymap_pair(m1.f, m2.f), polymap_pair(m1.g, m2.g))


def simple_proj(o1: SimpleObj, o2: SimpleObj, which: int, mode: str) -> SimpleMor:
    """Projection out of the product object."""
    a, b = o1.context, o2.context
    x, y = o1.payload, o2.payload
    n = a + b + x + y
    if which == 0:
        f = polymap_proj(a + b, 0, a, mode)
        g = polymap_proj(n, a + b, a + b + x, mode)
    else:
        f = polymap_proj(a + b, a, a + b, mode)
        g = polymap_proj(n, a + b + x, n, mode)
    return SimpleMor(f, g)


def simple_equal(m1: SimpleMor, m2: SimpleMor) -> bool:
    return polymap_equal(m1.f, m2.f) and polymap_equal(m1.g, m2.g)


def simple_str(m: SimpleMor) -> str:
    return f"({polymap_to_str(m.f)} | {polymap_to_str(m.g)})"


# ---------------------------------------------------------------------------
# The fibre over a fixed context as a tangent model


class FibreTangentModel(TangentModel):
    """Tangent structure of the fibre over a fixed context.

    Objects are payload dims; a morphism X -> Y is a PolyMap (A + X) -> Y.
    Structural maps are payload-block analogues of the base model's with
    the context passed through untouched, and the tangent of a morphism is
    the partial derivative in the payload directions.
    """

    def __init__(self, context: int, mode: str = scalars.RATIONAL):
        scalars.check_mode(mode)
        self.context = context
        self.mode = mode

    def _payload(self, x: int, lo: int, hi: int) -> PolyMap:
        a = self.context
        return polymap_proj(a + x, a + lo, a + hi, self.mode)

    def t_obj(self, x: int) -> int:
        return 2 * x

    def t_mor(self, g: PolyMap) -> PolyMap:
        return vertical_tangent_map(self.context, g)

    def p(self, x: int) -> PolyMap:
        return self._payload(2 * x, x, 2 * x)

    def zero(self, x: int) -> PolyMap:
        a = self.context
        return polymap_pair(
            zero_map(a + x, x, self.mode), self._payload(x, 0, x)
        )

    def plus(self, x: int) -> PolyMap:
        a = self.context
        dom = a + 3 * x
        comps = [
            poly_add_pair(dom, a + i, a + x + i, self.mode) for i in range(x)
        ]
        comps += [Poly.variable(dom, a + 2 * x + i, self.mode) for i in range(x)]
        return PolyMap(dom, 2 * x, tuple(comps), self.mode)

    def ell(self, x: int) -> PolyMap:
        a = self.context
        dom = a + 2 * x
        comps = [Poly.variable(dom, a + i, self.mode) for i in range(x)]
        comps += [Poly.zero(dom, self.mode) for _ in range(2 * x)]
        comps += [Poly.variable(dom, a + x + i, self.mode) for i in range(x)]
        return PolyMap(dom, 4 * x, tuple(comps), self.mode)

    def flip(self, x: int) -> PolyMap:
        a = self.context
        dom = a + 4 * x
        order = (
            list(range(0, x))
            + list(range(2 * x, 3 * x))
            + list(range(x, 2 * x))
            + list(range(3 * x, 4 * x))
        )
        comps = tuple(Poly.variable(dom, a + i, self.mode) for i in order)
        return PolyMap(dom, 4 * x, comps, self.mode)

    def t_n(self, x: int, n: int) -> TnObject:
        a = self.context
        dim = (n + 1) * x
        projs = []
        for i in range(n):
            tangent = self._payload(dim, i * x, (i + 1) * x)
            point = self._payload(dim, n * x, dim)
            projs.append(polymap_pair(tangent, point))
        return TnObject(base=x, arity=n, carrier=dim, projections=tuple(projs))

    def pair_t2(self, x: int, f: PolyMap, g: PolyMap) -> PolyMap:
        if f.components[x:] != g.components[x:]:
            raise PreconditionFailure("fibre pair into T_2: point parts disagree")
        comps = f.components[:x] + g.components[:x] + f.components[x:]
        return PolyMap(f.dom, 3 * x, comps, self.mode)

    def pair_t_t2(self, x: int, f: PolyMap, g: PolyMap) -> PolyMap:
        same_dx = f.components[x : 2 * x] == g.components[x : 2 * x]
        same_pt = f.components[3 * x :] == g.components[3 * x :]
        if not (same_dx and same_pt):
            raise PreconditionFailure("fibre pair into T(T_2): T(p) images disagree")
        comps = (
            f.components[:x]
            + g.components[:x]
            + f.components[x : 2 * x]
            + f.components[2 * x : 3 * x]
            + g.components[2 * x : 3 * x]
            + f.components[3 * x :]
        )
        return PolyMap(f.dom, 6 * x, comps, self.mode)

    def compose(self, f: PolyMap, g: PolyMap) -> PolyMap:
        a = self.context
        ctx = polymap_proj(f.dom, 0, a, self.mode)
        return polymap_compose(polymap_pair(ctx, f), g)

    def identity(self, x: int) -> PolyMap:
        return self._payload(x, 0, x)

    def equal(self, f: PolyMap, g: PolyMap) -> bool:
        return polymap_equal(f, g)

    def mor_str(self, f: PolyMap) -> str:
        return polymap_to_str(f)

    def random_mor(self, x: int, y: int, rng, max_degree: int = 3, coeff_bound: int = 5) -> PolyMap:
        return random_polymap(self.context + x, y, max_degree, coeff_bound, rng, self.mode)

    def lift_witness(self, x: int) -> LiftWitness:
        from .model import vertical_lift_v

        a = self.context
        dom = a + 4 * x
        sel_order = list(range(3 * x, 4 * x)) + list(range(0, x)) + list(range(2 * x, 3 * x))
        sel = PolyMap(
            dom,
            3 * x,
            tuple(Poly.variable(dom, a + i, self.mode) for i in sel_order),
            self.mode,
        )
        kappa = self.compose(vertical_lift_v(self, x), sel)
        rdom = a + 3 * x
        rho_order = list(range(x, 2 * x)) + list(range(2 * x, 3 * x)) + list(range(0, x))
        rho = PolyMap(
            rdom,
            3 * x,
            tuple(Poly.variable(rdom, a + i, self.mode) for i in rho_order),
            self.mode,
        )
        into_tangent = polymap_pair(
            self._payload(3 * x, x, 2 * x),
            zero_map(rdom, x, self.mode),
            self._payload(3 * x, 2 * x, 3 * x),
            self._payload(3 * x, 0, x),
        )
        into_base = self._payload(3 * x, 0, x)
        return LiftWitness(
            carrier=3 * x,
            kappa=kappa,
            rho=rho,
            into_tangent=into_tangent,
            into_base=into_base,
        )


def poly_add_pair(dom: int, i: int, j: int, mode: str) -> Poly:
    return poly_add(Poly.variable(dom, i, mode), Poly.variable(dom, j, mode))


def verify_fibre_axioms(
    context: int,
    payload_bound: int = 2,
    instances: int = 25,
    seed: int = 0,
    mode: str = scalars.RATIONAL,
) -> Report:
    """Run the full tangent-axioms suite inside the fibre over a context."""
    from .suites import tangent_axioms_checks

    model = FibreTangentModel(context, mode)
    checks = tangent_axioms_checks(model, payload_bound, 3, 5, instances, seed)
    return checks.report(
        "fibre-tangent-axioms",
        {
            "context": context,
            "payload_bound": payload_bound,
            "instances": instances,
            "seed": seed,
            "mode": mode,
        },
    )
