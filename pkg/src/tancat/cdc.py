"""Differential combinators on polynomial maps, and the tangent model they induce.

Layout conventions, used consistently everywhere:

  T(m) = 2m   coordinates (u, x): tangent block first, then point block.
  T_n(m)      coordinates (u_1, ..., u_n, x).
  T^2(m) = 4m coordinates (du, dx, u, x), obtained by applying T blockwise.

The differential of f : m -> n is the map D(f) : 2m -> n whose i-th
component is sum_j d f_i / d x_j (x) * u_j, and the tangent functor acts by
T(f) = <D(f), pi1 f> : 2m -> 2n.
"""

from __future__ import annotations

import itertools
from typing import Callable, List

from . import scalars
from .errors import DimensionMismatch, PreconditionFailure
from .model import LiftWitness, TangentModel, TnObject
from .poly import (
    Poly,
    PolyMap,
    identity_map,
    partial_derivative,
    permutation_map,
    poly_add,
    poly_mul,
    poly_shift_vars,
    polymap_compose,
    polymap_equal,
    polymap_pair,
    polymap_proj,
    polymap_to_str,
    random_polymap,
    zero_map,
)


def cdc_D(f: PolyMap) -> PolyMap:
    """Differential of f : m -> n as a map 2m -> n over coordinates (u, x)."""
    m = f.dom
    comps = []
    for comp in f.components:
        acc = Poly.zero(2 * m, f.mode)
        for j in range(m):
            dj = poly_shift_vars(partial_derivative(comp, j), m, 2 * m)
            acc = poly_add(acc, poly_mul(dj, Poly.variable(2 * m, j, f.mode)))
        comps.append(acc)
    return PolyMap(2 * m, f.cod, tuple(comps), f.mode)


def point_proj(m: int, mode: str) -> PolyMap:
    """Projection p : T(m) -> m onto the point block."""
    return polymap_proj(2 * m, m, 2 * m, mode)


def cdc_T(f: PolyMap) -> PolyMap:
    """Tangent functor action T(f) = <D(f), pi1 f> : 2m -> 2n."""
    tail = polymap_compose(point_proj(f.dom, f.mode), f)
    return polymap_pair(cdc_D(f), tail)


def tangent_zero(m: int, mode: str) -> PolyMap:
    """Zero section 0 : m -> T(m), x |-> (0, x)."""
    return polymap_pair(zero_map(m, m, mode), identity_map(m, mode))


def tangent_plus(m: int, mode: str) -> PolyMap:
    """Fibre addition + : T_2(m) -> T(m), (u1, u2, x) |-> (u1 + u2, x)."""
    comps: List[Poly] = []
    for i in range(m):
        comps.append(poly_add(Poly.variable(3 * m, i, mode), Poly.variable(3 * m, m + i, mode)))
    for i in range(m):
        comps.append(Poly.variable(3 * m, 2 * m + i, mode))
    return PolyMap(3 * m, 2 * m, tuple(comps), mode)


def cdc_ell(m: int, mode: str) -> PolyMap:
    """Vertical lift ell : T(m) -> T^2(m), (u, x) |-> (u, 0, 0, x)."""
    comps: List[Poly] = []
    for i in range(m):
        comps.append(Poly.variable(2 * m, i, mode))
    for _ in range(2 * m):
        comps.append(Poly.zero(2 * m, mode))
    for i in range(m):
        comps.append(Poly.variable(2 * m, m + i, mode))
    return PolyMap(2 * m, 4 * m, tuple(comps), mode)


def cdc_flip(m: int, mode: str) -> PolyMap:
    """Canonical symmetry c : T^2(m) -> T^2(m), (du, dx, u, x) |-> (du, u, dx, x)."""
    images = (
        list(range(0, m))
        + list(range(2 * m, 3 * m))
        + list(range(m, 2 * m))
        + list(range(3 * m, 4 * m))
    )
    return permutation_map(4 * m, images, mode)


def t_n_carrier(m: int, n: int, mode: str) -> TnObject:
    """The n-fold fibred power T_n(m) with coordinates (u_1, ..., u_n, x)."""
    dim = (n + 1) * m
    projs = []
    for i in range(n):
        tangent = polymap_proj(dim, i * m, (i + 1) * m, mode)
        point = polymap_proj(dim, n * m, dim, mode)
        projs.append(polymap_pair(tangent, point))
    return TnObject(base=m, arity=n, carrier=dim, projections=tuple(projs))


def _block(f: PolyMap, lo: int, hi: int) -> PolyMap:
    return PolyMap(f.dom, hi - lo, f.components[lo:hi], f.mode)


def pair_into_t2(m: int, f: PolyMap, g: PolyMap) -> PolyMap:
    """<f, g> : W -> T_2(m) for f, g : W -> T(m) with f;p = g;p."""
    if f.cod != 2 * m or g.cod != 2 * m or f.dom != g.dom:
        raise DimensionMismatch("pair_into_t2 needs two maps into T(%d)" % m)
    if not polymap_equal(_block(f, m, 2 * m), _block(g, m, 2 * m)):
        raise PreconditionFailure("pair into T_2: point parts disagree")
    comps = f.components[:m] + g.components[:m] + f.components[m:]
    return PolyMap(f.dom, 3 * m, comps, f.mode)


def pair_into_t_t2(m: int, f: PolyMap, g: PolyMap) -> PolyMap:
    """<f, g> : W -> T(T_2(m)) for f, g : W -> T^2(m) with f;T(p) = g;T(p).

    T(T_2(m)) carries coordinates (du1, du2, dx, u1, u2, x).
    """
    if f.cod != 4 * m or g.cod != 4 * m or f.dom != g.dom:
        raise DimensionMismatch("pair_into_t_t2 needs two maps into T^2(%d)" % m)
    same_dx = polymap_equal(_block(f, m, 2 * m), _block(g, m, 2 * m))
    same_x = polymap_equal(_block(f, 3 * m, 4 * m), _block(g, 3 * m, 4 * m))
    if not (same_dx and same_x):
        raise PreconditionFailure("pair into T(T_2): T(p) images disagree")
    comps = (
        f.components[:m]
        + g.components[:m]
        + f.components[m : 2 * m]
        + f.components[2 * m : 3 * m]
        + g.components[2 * m : 3 * m]
        + f.components[3 * m :]
    )
    return PolyMap(f.dom, 6 * m, comps, f.mode)


class PolyTangentModel(TangentModel):
    """Polynomial maps over a fixed scalar mode, with T(m) = 2m."""

    def __init__(self, mode: str = scalars.RATIONAL):
        scalars.check_mode(mode)
        self.mode = mode

    def t_obj(self, m: int) -> int:
        return 2 * m

    def t_mor(self, f: PolyMap) -> PolyMap:
        return cdc_T(f)

    def p(self, m: int) -> PolyMap:
        return point_proj(m, self.mode)

    def zero(self, m: int) -> PolyMap:
        return tangent_zero(m, self.mode)

    def plus(self, m: int) -> PolyMap:
        return tangent_plus(m, self.mode)

    def ell(self, m: int) -> PolyMap:
        return cdc_ell(m, self.mode)

    def flip(self, m: int) -> PolyMap:
        return cdc_flip(m, self.mode)

    def t_n(self, m: int, n: int) -> TnObject:
        return t_n_carrier(m, n, self.mode)

    def pair_t2(self, m: int, f: PolyMap, g: PolyMap) -> PolyMap:
        return pair_into_t2(m, f, g)

    def pair_t_t2(self, m: int, f: PolyMap, g: PolyMap) -> PolyMap:
        return pair_into_t_t2(m, f, g)

    def compose(self, f: PolyMap, g: PolyMap) -> PolyMap:
        return polymap_compose(f, g)

    def identity(self, m: int) -> PolyMap:
        return identity_map(m, self.mode)

    def equal(self, f: PolyMap, g: PolyMap) -> bool:
        return polymap_equal(f, g)

    def mor_str(self, f: PolyMap) -> str:
        return polymap_to_str(f)

    def random_mor(self, m: int, n: int, rng, max_degree: int = 3, coeff_bound: int = 5) -> PolyMap:
        return random_polymap(m, n, max_degree, coeff_bound, rng, self.mode)

    def lift_witness(self, m: int) -> LiftWitness:
        # R := pullback of T(p) along 0, realized as (x, alpha, beta) in 3m
        # coordinates; sel reads it off a second tangent (du, dx, u, x).
        from .model import vertical_lift_v

        sel = PolyMap(
            4 * m,
            3 * m,
            tuple(
                Poly.variable(4 * m, j, self.mode)
                for j in itertools.chain(range(3 * m, 4 * m), range(0, m), range(2 * m, 3 * m))
            ),
            self.mode,
        )
        kappa = self.compose(vertical_lift_v(self, m), sel)
        rho = permutation_map(
            3 * m,
            list(range(m, 2 * m)) + list(range(2 * m, 3 * m)) + list(range(0, m)),
            self.mode,
        )
        zero_dx = zero_map(3 * m, m, self.mode)
        into_tangent = PolyMap(
            3 * m,
            4 * m,
            _blocks_concat(
                polymap_proj(3 * m, m, 2 * m, self.mode),
                zero_dx,
                polymap_proj(3 * m, 2 * m, 3 * m, self.mode),
                polymap_proj(3 * m, 0, m, self.mode),
            ),
            self.mode,
        )
        into_base = polymap_proj(3 * m, 0, m, self.mode)
        return LiftWitness(
            carrier=3 * m,
            kappa=kappa,
            rho=rho,
            into_tangent=into_tangent,
            into_base=into_base,
        )


def _blocks_concat(*maps: PolyMap):
    comps: List[Poly] = []
    for f in maps:
        comps.extend(f.components)
    return tuple(comps)


def apply_d(f: PolyMap, d_functional: Callable[[PolyMap], PolyMap]) -> PolyMap:
    """Tangent action <D(f), pi1 f> built from an arbitrary D combinator."""
    tail = polymap_compose(point_proj(f.dom, f.mode), f)
    return polymap_pair(d_functional(f), tail)
