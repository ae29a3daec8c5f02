"""Differential objects and the differential they induce.

A differential object is a commutative-monoid carrier A together with a
second projection phat : T(A) -> A exhibiting T(A) as a product A x A (the
first factor read off by phat, the second by p).  Differential objects are
the same thing as differential bundles over the empty base, and a coherent
choice of them across all objects recovers the differential combinator as
D[f] = mu;T(f);phat.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from . import scalars
from .errors import DimensionMismatch, PreconditionFailure
from .bundles import DiffBundle, bracket, make_bundle
from .cdc import cdc_T, cdc_ell, cdc_flip, point_proj, tangent_plus, tangent_zero
from .poly import (
    PolyMap,
    identity_map,
    permutation_map,
    polymap_compose,
    polymap_pair,
    polymap_proj,
    polymap_to_str,
    terminal_map,
    zero_map,
)
from .report import CheckSet, Report


@dataclass(frozen=True)
class DiffObject:
    carrier: int
    sigma: PolyMap
    zeta: PolyMap
    phat: PolyMap
    mode: str


def canonical_diffobj(k: int, mode: str = scalars.RATIONAL) -> DiffObject:
    """Coordinatewise addition, zero, and tangent-block projection."""
    sigma_comps = tuple(
        polymap_proj(2 * k, 0, k, mode).components[i] + polymap_proj(2 * k, k, 2 * k, mode).components[i]
        for i in range(k)
    )
    sigma = PolyMap(2 * k, k, sigma_comps, mode)
    return DiffObject(
        carrier=k,
        sigma=sigma,
        zeta=zero_map(0, k, mode),
        phat=polymap_proj(2 * k, 0, k, mode),
        mode=mode,
    )


def diffobj_lambda(o: DiffObject) -> PolyMap:
    """The lift <1, ! zeta> : A -> T(A), a |-> (a, zeta())."""
    tail = polymap_compose(terminal_map(o.carrier, o.mode), o.zeta)
    return polymap_pair(identity_map(o.carrier, o.mode), tail)


def interleave(k1: int, k2: int, mode: str) -> PolyMap:
    """T(A x B) -> T(A) x T(B): (da, db, a, b) |-> (da, a, db, b)."""
    n = k1 + k2
    images = (
        list(range(0, k1))
        + list(range(n, n + k1))
        + list(range(k1, n))
        + list(range(n + k1, 2 * n))
    )
    return permutation_map(2 * n, images, mode)


def interleave_inv(k1: int, k2: int, mode: str) -> PolyMap:
    n = k1 + k2
    images = (
        list(range(0, k1))
        + list(range(2 * k1, 2 * k1 + k2))
        + list(range(k1, 2 * k1))
        + list(range(2 * k1 + k2, 2 * n))
    )
    return permutation_map(2 * n, images, mode)


def diffobj_mu(o: DiffObject) -> PolyMap:
    """mu := <pi0 lambda, pi1 0> T(sigma) : A x A -> T(A)."""
    k = o.carrier
    lam = diffobj_lambda(o)
    left = polymap_compose(polymap_proj(2 * k, 0, k, o.mode), lam)
    right = polymap_compose(polymap_proj(2 * k, k, 2 * k, o.mode), tangent_zero(k, o.mode))
    paired = polymap_compose(
        polymap_pair(left, right), interleave_inv(k, k, o.mode)
    )
    return polymap_compose(paired, cdc_T(o.sigma))


def product_pairing(o: DiffObject) -> PolyMap:
    """<phat, p> : T(A) -> A x A."""
    return polymap_pair(o.phat, point_proj(o.carrier, o.mode))


def diffobj_from_bundle(b: DiffBundle) -> DiffObject:
    """Read a differential object off a bundle over the empty base.

    Structural maps are transported to the fibre carrier through the
    trivialization, and phat is computed as the bracket of the identity.
    """
    if b.base != 0:
        raise PreconditionFailure("base-not-terminal: bundle base must have dim 0")
    k = b.fibre
    sigma = polymap_compose(b.sigma, b.triv)
    zeta = polymap_compose(b.zeta, b.triv)
    one = bracket(identity_map(2 * b.total, b.mode), b)
    phat = polymap_compose(
        cdc_T(b.triv_inv), polymap_compose(one, b.triv)
    )
    return DiffObject(carrier=k, sigma=sigma, zeta=zeta, phat=phat, mode=b.mode)


def bundle_from_diffobj(o: DiffObject) -> DiffBundle:
    """The bundle over the empty base with lift <1, ! zeta>."""
    k = o.carrier
    return make_bundle(0, k, o.sigma, o.zeta, diffobj_lambda(o), None, o.mode)


def verify_diffobj(o: DiffObject, label: str = "diffobj") -> Report:
    """Product witness, additive squares, and the lift coherences."""
    checks = CheckSet()
    k = o.carrier
    mode = o.mode
    ident2k = identity_map(2 * k, mode)

    def eq(name, lhs, rhs, detail=""):
        checks.equality(name, lhs, rhs, detail, render=polymap_to_str)

    zhat = polymap_compose(terminal_map(k, mode), o.zeta)
    eq(
        "monoid-unit",
        polymap_compose(polymap_pair(identity_map(k, mode), zhat), o.sigma),
        identity_map(k, mode),
        "unit on the right",
    )
    eq(
        "monoid-unit",
        polymap_compose(polymap_pair(zhat, identity_map(k, mode)), o.sigma),
        identity_map(k, mode),
        "unit on the left",
    )
    swap = permutation_map(2 * k, list(range(k, 2 * k)) + list(range(0, k)), mode)
    eq("monoid-commutative", polymap_compose(swap, o.sigma), o.sigma)
    p1 = polymap_proj(3 * k, 0, k, mode)
    p2 = polymap_proj(3 * k, k, 2 * k, mode)
    p3 = polymap_proj(3 * k, 2 * k, 3 * k, mode)
    eq(
        "monoid-associative",
        polymap_compose(polymap_pair(polymap_compose(polymap_pair(p1, p2), o.sigma), p3), o.sigma),
        polymap_compose(polymap_pair(p1, polymap_compose(polymap_pair(p2, p3), o.sigma)), o.sigma),
    )
    with checks.guard("product-witness"):
        mu = diffobj_mu(o)
        pairing = product_pairing(o)
        eq("product-witness", polymap_compose(pairing, mu), ident2k, "mu after <phat, p>")
        eq(
            "product-witness",
            polymap_compose(mu, pairing),
            ident2k,
            "<phat, p> after mu",
        )
    eq(
        "phat-additive",
        polymap_compose(cdc_T(o.sigma), o.phat),
        polymap_compose(
            polymap_pair(
                polymap_compose(cdc_T(polymap_proj(2 * k, 0, k, mode)), o.phat),
                polymap_compose(cdc_T(polymap_proj(2 * k, k, 2 * k, mode)), o.phat),
            ),
            o.sigma,
        ),
    )
    eq("phat-zero", polymap_compose(cdc_T(o.zeta), o.phat), o.zeta)
    eq(
        "phat-plus",
        polymap_compose(tangent_plus(k, mode), o.phat),
        polymap_compose(
            polymap_pair(
                polymap_compose(polymap_pair(polymap_proj(3 * k, 0, k, mode), polymap_proj(3 * k, 2 * k, 3 * k, mode)), o.phat),
                polymap_compose(polymap_pair(polymap_proj(3 * k, k, 2 * k, mode), polymap_proj(3 * k, 2 * k, 3 * k, mode)), o.phat),
            ),
            o.sigma,
        ),
    )
    eq(
        "phat-zero-section",
        polymap_compose(tangent_zero(k, mode), o.phat),
        zhat,
    )
    eq(
        "phat-lift-coherence",
        polymap_compose(cdc_ell(k, mode), polymap_compose(cdc_T(o.phat), o.phat)),
        o.phat,
    )
    lam = diffobj_lambda(o)
    eq("lambda-sections", polymap_compose(lam, o.phat), identity_map(k, mode), "lambda;phat")
    eq(
        "lambda-sections",
        polymap_compose(lam, point_proj(k, mode)),
        zhat,
        "lambda;p",
    )
    return checks.report(f"diffobj[{label}]", {"carrier": k, "mode": mode})


def derived_D(
    f: PolyMap,
    dom_obj: Optional[DiffObject] = None,
    cod_obj: Optional[DiffObject] = None,
) -> PolyMap:
    """D[f] := mu T(f) phat, the differential recovered from the objects."""
    if dom_obj is None:
        dom_obj = canonical_diffobj(f.dom, f.mode)
    if cod_obj is None:
        cod_obj = canonical_diffobj(f.cod, f.mode)
    if dom_obj.carrier != f.dom or cod_obj.carrier != f.cod:
        raise DimensionMismatch("differential objects must match the map's endpoints")
    return polymap_compose(
        diffobj_mu(dom_obj), polymap_compose(cdc_T(f), cod_obj.phat)
    )


def exchange_map(k: int, mode: str) -> PolyMap:
    """ex : (A x A) x (A x A) -> (A x A) x (A x A) swapping the middle blocks."""
    images = (
        list(range(0, k))
        + list(range(2 * k, 3 * k))
        + list(range(k, 2 * k))
        + list(range(3 * k, 4 * k))
    )
    return permutation_map(4 * k, images, mode)


def check_cds(
    bound: int,
    mode: str = scalars.RATIONAL,
    phat_for: Optional[Callable[[int], PolyMap]] = None,
) -> Report:
    """Coherence of the canonical differential-object assignment.

    Verifies the product compatibility (lambda- and phat-forms), the
    T-compatibility (both forms), the flip identity c T(phat) phat =
    T(phat) phat, the exchange identity, and the product witness at every
    dimension <= bound.  phat_for substitutes an alternative projection
    assignment; only the canonical one is claimed coherent.
    """
    checks = CheckSet()

    def obj(k: int) -> DiffObject:
        o = canonical_diffobj(k, mode)
        if phat_for is not None:
            o = DiffObject(k, o.sigma, o.zeta, phat_for(k), mode)
        return o

    def eq(name, lhs, rhs, detail=""):
        checks.equality(name, lhs, rhs, detail, render=polymap_to_str)

    dims = range(1, bound + 1)
    for k1 in dims:
        for k2 in dims:
            a, b2, ab = obj(k1), obj(k2), obj(k1 + k2)
            n = k1 + k2
            pi_a = polymap_proj(n, 0, k1, mode)
            pi_b = polymap_proj(n, k1, n, mode)
            lam_pair = polymap_pair(
                polymap_compose(pi_a, diffobj_lambda(a)),
                polymap_compose(pi_b, diffobj_lambda(b2)),
            )
            eq(
                "cds1-lambda",
                polymap_compose(diffobj_lambda(ab), interleave(k1, k2, mode)),
                lam_pair,
                f"dims ({k1},{k2})",
            )
            phat_pair = polymap_pair(
                polymap_compose(cdc_T(pi_a), a.phat),
                polymap_compose(cdc_T(pi_b), b2.phat),
            )
            eq("cds1-phat", ab.phat, phat_pair, f"dims ({k1},{k2})")
    for k in dims:
        a, ta = obj(k), obj(2 * k)
        eq(
            "cds2-lambda",
            diffobj_lambda(ta),
            polymap_compose(cdc_T(diffobj_lambda(a)), cdc_flip(k, mode)),
            f"dim {k}",
        )
        eq(
            "cds2-phat",
            ta.phat,
            polymap_compose(cdc_flip(k, mode), cdc_T(a.phat)),
            f"dim {k}",
        )
    for k in range(1, max(bound, 3) + 1):
        a = obj(k)
        tp = polymap_compose(cdc_T(a.phat), a.phat)
        eq(
            "flip-phat",
            polymap_compose(cdc_flip(k, mode), tp),
            tp,
            f"dim {k}",
        )
    for k in range(1, max(bound, 2) + 1):
        a, aa = obj(k), obj(2 * k)
        with checks.guard("exchange"):
            mu_aa = diffobj_mu(aa)
            t_mu = cdc_T(diffobj_mu(a))
            lhs = polymap_compose(
                exchange_map(k, mode), polymap_compose(mu_aa, t_mu)
            )
            rhs = polymap_compose(
                polymap_compose(mu_aa, t_mu), cdc_flip(k, mode)
            )
            eq("exchange", lhs, rhs, f"dim {k}")
    for k in dims:
        a = obj(k)
        with checks.guard("product-witness"):
            mu = diffobj_mu(a)
            pairing = product_pairing(a)
            eq(
                "product-witness",
                polymap_compose(pairing, mu),
                identity_map(2 * k, mode),
                f"dim {k}: mu after <phat, p>",
            )
            eq(
                "product-witness",
                polymap_compose(mu, pairing),
                identity_map(2 * k, mode),
                f"dim {k}: <phat, p> after mu",
            )
    return checks.report("cds", {"bound": bound, "mode": mode})
