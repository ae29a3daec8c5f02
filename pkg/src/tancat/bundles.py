"""Differential bundles over the polynomial model.

A differential bundle packages an additive bundle (q : E -> M, sigma, zeta)
with a lift lambda : E -> T(E) subject to the lift axioms, and here always
carries an explicit trivialization t : E ~ M x F ("display normal form").
The trivialization is what makes everything else mechanical: the fibred
square E_2 is realized as the carrier (x, a, b) of dimension m + 2k, the
canonical pullback R of T(q) along 0 as (x, alpha, beta) of the same
dimension, and the universality witness rho : R -> E_2 is derived by
inverting the fibre-tangent block of the trivialized lift.

Nothing is trusted: make_bundle only derives data, verify_bundle checks
every axiom and the witness identities, reporting counterexamples in
canonical form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from . import scalars
from .errors import (
    DimensionMismatch,
    NotABundleMorphism,
    PreconditionFailure,
)
from .cdc import cdc_T, cdc_ell, cdc_flip, point_proj, tangent_plus, tangent_zero
from .poly import (
    Poly,
    PolyMap,
    identity_map,
    permutation_map,
    poly_add,
    poly_scale,
    polymap_compose,
    polymap_equal,
    polymap_pair,
    polymap_proj,
    polymap_to_str,
    zero_map,
)
from .report import CheckSet, Report


@dataclass(frozen=True)
class DiffBundle:
    base: int
    fibre: int
    total: int
    q: PolyMap
    sigma: PolyMap
    zeta: PolyMap
    lam: PolyMap
    triv: PolyMap
    triv_inv: PolyMap
    rho: PolyMap
    mode: str

    @property
    def e2_dim(self) -> int:
        return self.base + 2 * self.fibre

    @property
    def r_dim(self) -> int:
        # R = (x, alpha, beta): same carrier size as E_2 by coincidence
        return self.base + 2 * self.fibre


@dataclass(frozen=True)
class BundleMor:
    """A commuting square f : E -> E', g : M -> M' with f;q' = q;g."""

    f: PolyMap
    g: PolyMap


# ---------------------------------------------------------------------------
# Coordinate plumbing through the trivialization


def _shuffle_to_display(m: int, k: int, mode: str) -> PolyMap:
    """T(M x F) coords (dx, da, x, a) -> display order (dx, x, da, a)."""
    images = (
        list(range(0, m))
        + list(range(m + k, 2 * m + k))
        + list(range(m, m + k))
        + list(range(2 * m + k, 2 * m + 2 * k))
    )
    return permutation_map(2 * m + 2 * k, images, mode)


def _shuffle_from_display(m: int, k: int, mode: str) -> PolyMap:
    images = (
        list(range(0, m))
        + list(range(2 * m, 2 * m + k))
        + list(range(m, 2 * m))
        + list(range(2 * m + k, 2 * m + 2 * k))
    )
    return permutation_map(2 * m + 2 * k, images, mode)


def tangent_triv(b: DiffBundle) -> PolyMap:
    """tau : T(E) -> (dx, x, da, a), the tangent of the trivialization."""
    return polymap_compose(cdc_T(b.triv), _shuffle_to_display(b.base, b.fibre, b.mode))


def tangent_triv_inv(b: DiffBundle) -> PolyMap:
    return polymap_compose(
        _shuffle_from_display(b.base, b.fibre, b.mode), cdc_T(b.triv_inv)
    )


def bundle_pi(b: DiffBundle, which: int) -> PolyMap:
    """Projection E_2 -> E picking the first (0) or second (1) summand."""
    m, k = b.base, b.fibre
    x = polymap_proj(b.e2_dim, 0, m, b.mode)
    fib = polymap_proj(b.e2_dim, m + which * k, m + (which + 1) * k, b.mode)
    return polymap_compose(polymap_pair(x, fib), b.triv_inv)


def pair_into_e2(b: DiffBundle, u: PolyMap, v: PolyMap) -> PolyMap:
    """<u, v> : W -> E_2 for u, v : W -> E with u;q = v;q."""
    if not polymap_equal(polymap_compose(u, b.q), polymap_compose(v, b.q)):
        raise PreconditionFailure("pair into E_2: base images disagree")
    ut = polymap_compose(u, b.triv)
    vt = polymap_compose(v, b.triv)
    m = b.base
    comps = ut.components[:m] + ut.components[m:] + vt.components[m:]
    return PolyMap(u.dom, b.e2_dim, comps, b.mode)


def pair_into_t_e2(b: DiffBundle, u: PolyMap, v: PolyMap) -> PolyMap:
    """<u, v> : W -> T(E_2) for u, v : W -> T(E) with u;T(q) = v;T(q).

    T(E_2) carries coordinates (dx, da, db, x, a, b).
    """
    tau = tangent_triv(b)
    ut = polymap_compose(u, tau)
    vt = polymap_compose(v, tau)
    m, k = b.base, b.fibre
    same_dx = ut.components[:m] == vt.components[:m]
    same_x = ut.components[m : 2 * m] == vt.components[m : 2 * m]
    if not (same_dx and same_x):
        raise PreconditionFailure("pair into T(E_2): T(q) images disagree")
    comps = (
        ut.components[:m]
        + ut.components[2 * m : 2 * m + k]
        + vt.components[2 * m : 2 * m + k]
        + ut.components[m : 2 * m]
        + ut.components[2 * m + k :]
        + vt.components[2 * m + k :]
    )
    return PolyMap(u.dom, 2 * b.e2_dim, comps, b.mode)


def pair_into_t2_total(e: int, u: PolyMap, v: PolyMap, mode: str) -> PolyMap:
    """<u, v> : W -> T_2(E) for u, v : W -> T(E) with equal point parts."""
    if u.components[e:] != v.components[e:]:
        raise PreconditionFailure("pair into T_2(E): point parts disagree")
    comps = u.components[:e] + v.components[:e] + u.components[e:]
    return PolyMap(u.dom, 3 * e, comps, mode)


def assemble_tangent(b: DiffBundle, dx: PolyMap, x: PolyMap, da: PolyMap, a: PolyMap) -> PolyMap:
    """Build W -> T(E) from display blocks (dx, x, da, a)."""
    return polymap_compose(polymap_pair(dx, x, da, a), tangent_triv_inv(b))


# ---------------------------------------------------------------------------
# The mu map, selection into R, and the bracket


def mu_map(b: DiffBundle) -> PolyMap:
    """mu := <pi0 lambda, pi1 0> T(sigma) : E_2 -> T(E)."""
    left = polymap_compose(bundle_pi(b, 0), b.lam)
    right = polymap_compose(bundle_pi(b, 1), tangent_zero(b.total, b.mode))
    return polymap_compose(pair_into_t_e2(b, left, right), cdc_T(b.sigma))


def sel_map(b: DiffBundle) -> PolyMap:
    """T(E) -> R, reading off (x, fibre-tangent, fibre-point) blocks."""
    m, k = b.base, b.fibre
    return polymap_compose(
        tangent_triv(b), polymap_proj(2 * m + 2 * k, m, 2 * m + 2 * k, b.mode)
    )


def kappa_map(b: DiffBundle) -> PolyMap:
    """The comparison E_2 -> R against which rho is a two-sided inverse."""
    return polymap_compose(mu_map(b), sel_map(b))


def r_into_tangent(b: DiffBundle) -> PolyMap:
    """Cone leg R -> T(E): (x, alpha, beta) |-> tau^{-1}(0, x, alpha, beta)."""
    m, k = b.base, b.fibre
    r = b.r_dim
    return polymap_compose(
        polymap_pair(zero_map(r, m, b.mode), polymap_proj(r, 0, r, b.mode)),
        tangent_triv_inv(b),
    )


def r_into_base(b: DiffBundle) -> PolyMap:
    return polymap_proj(b.r_dim, 0, b.base, b.mode)


def bracket(f: PolyMap, b: DiffBundle) -> PolyMap:
    """The unique {f} with f = <{f} lambda, f p 0> T(sigma).

    Accepts f : X -> T(E) in the equalizer f;T(q) = f;p;q;0 and reads the
    answer off through rho; the defining equation is re-verified exactly.
    """
    e = b.total
    if f.cod != 2 * e:
        raise DimensionMismatch(f"bracket input must land in T(E) = {2 * e}")
    p_e = point_proj(e, b.mode)
    lhs = polymap_compose(f, cdc_T(b.q))
    rhs = polymap_compose(
        f, polymap_compose(p_e, polymap_compose(b.q, tangent_zero(b.base, b.mode)))
    )
    if not polymap_equal(lhs, rhs):
        raise PreconditionFailure(
            "bracket precondition f;T(q) = f;p;q;0 fails; " + _residual(lhs, rhs, b.mode)
        )
    mediate = polymap_compose(polymap_compose(f, sel_map(b)), b.rho)
    out = polymap_compose(mediate, bundle_pi(b, 0))
    # defining equation, re-checked from scratch
    left = polymap_compose(out, b.lam)
    right = polymap_compose(f, polymap_compose(p_e, tangent_zero(e, b.mode)))
    recon = polymap_compose(pair_into_t_e2(b, left, right), cdc_T(b.sigma))
    if not polymap_equal(recon, f):
        raise PreconditionFailure(
            "bracket defining equation failed; " + _residual(recon, f, b.mode)
        )
    return out


def _residual(lhs: PolyMap, rhs: PolyMap, mode: str) -> str:
    if mode == scalars.RATIONAL:
        diff = tuple(
            poly_add(a, poly_scale(bb, Fraction(-1))) for a, bb in zip(lhs.components, rhs.components)
        )
        text = polymap_to_str(PolyMap(lhs.dom, lhs.cod, diff, mode))
        return f"residual = {text}"
    return f"lhs = {polymap_to_str(lhs)}; rhs = {polymap_to_str(rhs)}"


# ---------------------------------------------------------------------------
# Witness derivation (display normal form)


def _constant_matrix(block: PolyMap, m: int, k: int) -> Optional[List[List]]:
    """Read block : (m+k) -> k as a constant k x k matrix in the fibre
    variables, or None if it is not of that shape."""
    mat: List[List] = []
    for i in range(k):
        row = []
        for j in range(k):
            unit = [0] * (m + k)
            unit[m + j] = 1
            row.append(dict(block.components[i].terms).get(tuple(unit), 0))
        mat.append(row)
    # the block must be exactly sum_j mat[i][j] * a_j
    for i in range(k):
        recon = Poly.zero(m + k, block.mode)
        for j in range(k):
            if mat[i][j] == 0:
                continue
            term = poly_scale(Poly.variable(m + k, m + j, block.mode), mat[i][j])
            recon = poly_add(recon, term)
        if recon != block.components[i]:
            return None
    return mat


def _invert_rational(mat: List[List]) -> Optional[List[List[Fraction]]]:
    k = len(mat)
    aug = [[Fraction(mat[i][j]) for j in range(k)] + [Fraction(int(i == j)) for j in range(k)] for i in range(k)]
    for col in range(k):
        pivot = next((r for r in range(col, k) if aug[r][col] != 0), None)
        if pivot is None:
            return None
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for r in range(k):
            if r != col and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [a - factor * c for a, c in zip(aug[r], aug[col])]
    return [row[k:] for row in aug]


def _invert_natural(mat: List[List]) -> Optional[List[List[int]]]:
    # units of the natural-number semiring are just {1}; invertible
    # constant matrices are exactly the permutation matrices
    k = len(mat)
    for row in mat:
        if sorted(row) != [0] * (k - 1) + [1]:
            return None
    for j in range(k):
        if sum(mat[i][j] for i in range(k)) != 1:
            return None
    return [[mat[j][i] for j in range(k)] for i in range(k)]


def _derive_rho(m: int, k: int, lam_display: PolyMap, mode: str) -> PolyMap:
    """rho : R -> E_2 by inverting the fibre-tangent block of the lift.

    For display-normal-form data the trivialized lift has fibre-tangent
    block Lambda(x, a); rho sends (x, alpha, beta) to (x, Lambda^{-1}(x,
    alpha), beta).  When the block is not recognizably invertible we fall
    back to the identity relabelling; verify_bundle then reports honestly.
    """
    r = m + 2 * k
    fib_proj = polymap_proj(m + k, m, m + k, mode)
    block = PolyMap(m + k, k, lam_display.components[2 * m : 2 * m + k], mode)
    lam_inv: Optional[PolyMap] = None
    if polymap_equal(block, fib_proj):
        lam_inv = fib_proj
    else:
        mat = _constant_matrix(block, m, k)
        if mat is not None:
            inv = _invert_rational(mat) if mode == scalars.RATIONAL else _invert_natural(mat)
            if inv is not None:
                comps = []
                for i in range(k):
                    acc = Poly.zero(m + k, mode)
                    for j in range(k):
                        if inv[i][j] == 0:
                            continue
                        acc = poly_add(
                            acc,
                            poly_scale(Poly.variable(m + k, m + j, mode), inv[i][j]),
                        )
                    comps.append(acc)
                lam_inv = PolyMap(m + k, k, tuple(comps), mode)
    if lam_inv is None:
        lam_inv = fib_proj
    x = polymap_proj(r, 0, m, mode)
    alpha = polymap_proj(r, m, m + k, mode)
    beta = polymap_proj(r, m + k, r, mode)
    middle = polymap_compose(polymap_pair(x, alpha), lam_inv)
    return polymap_pair(x, middle, beta)


# ---------------------------------------------------------------------------
# Construction and verification


def make_bundle(
    base: int,
    fibre: int,
    sigma: PolyMap,
    zeta: PolyMap,
    lam: PolyMap,
    triv: Optional[Tuple[PolyMap, PolyMap]] = None,
    mode: str = scalars.RATIONAL,
) -> DiffBundle:
    """Assemble a DiffBundle; derives q, E_2 data and the witness rho.

    No axiom is assumed here: run verify_bundle on the result.
    """
    scalars.check_mode(mode)
    if triv is None:
        total = base + fibre
        t = identity_map(total, mode)
        t_inv = identity_map(total, mode)
    else:
        t, t_inv = triv
        total = t.dom
        if t.cod != base + fibre or t_inv.dom != base + fibre or t_inv.cod != total:
            raise DimensionMismatch("trivialization must map total <-> base+fibre")
        if not (
            polymap_equal(polymap_compose(t, t_inv), identity_map(total, mode))
            and polymap_equal(polymap_compose(t_inv, t), identity_map(base + fibre, mode))
        ):
            raise PreconditionFailure("triv not two-sided inverse")
    q = polymap_compose(t, polymap_proj(base + fibre, 0, base, mode))
    e2 = base + 2 * fibre
    if sigma.dom != e2 or sigma.cod != total:
        raise DimensionMismatch(f"sigma must map E_2 = {e2} to total {total}")
    if zeta.dom != base or zeta.cod != total:
        raise DimensionMismatch(f"zeta must map base {base} to total {total}")
    if lam.dom != total or lam.cod != 2 * total:
        raise DimensionMismatch(f"lambda must map total {total} to T(total) {2 * total}")
    for f in (sigma, zeta, lam, t, t_inv):
        if f.mode != mode:
            raise DimensionMismatch("bundle data must share one scalar mode")
    shuffle = _shuffle_to_display(base, fibre, mode)
    lam_display = polymap_compose(t_inv, polymap_compose(lam, polymap_compose(cdc_T(t), shuffle)))
    rho = _derive_rho(base, fibre, lam_display, mode)
    return DiffBundle(
        base=base,
        fibre=fibre,
        total=total,
        q=q,
        sigma=sigma,
        zeta=zeta,
        lam=lam,
        triv=t,
        triv_inv=t_inv,
        rho=rho,
        mode=mode,
    )


def trivial_bundle(m: int, mode: str = scalars.RATIONAL) -> DiffBundle:
    """The bundle (1_M, 1_M, 1_M, 0-lift) with empty fibre."""
    ident = identity_map(m, mode)
    return make_bundle(m, 0, ident, ident, tangent_zero(m, mode), None, mode)


def standard_bundle(m: int, k: int, mode: str = scalars.RATIONAL) -> DiffBundle:
    """Base m, fibre k, total m+k, fibrewise addition, lift (x,a) |-> (0,a,x,0)."""
    e2 = m + 2 * k
    sigma_comps = [Poly.variable(e2, i, mode) for i in range(m)]
    for i in range(k):
        sigma_comps.append(
            poly_add(Poly.variable(e2, m + i, mode), Poly.variable(e2, m + k + i, mode))
        )
    sigma = PolyMap(e2, m + k, tuple(sigma_comps), mode)
    zeta = polymap_pair(identity_map(m, mode), zero_map(m, k, mode))
    total = m + k
    lam = polymap_pair(
        zero_map(total, m, mode),
        polymap_proj(total, m, total, mode),
        polymap_proj(total, 0, m, mode),
        zero_map(total, k, mode),
    )
    return make_bundle(m, k, sigma, zeta, lam, None, mode)


def tangent_bundle_of(m: int, mode: str = scalars.RATIONAL) -> DiffBundle:
    """(p : T(M) -> M, +, 0, ell) with the (u, x) -> (x, u) trivialization."""
    swap = permutation_map(2 * m, list(range(m, 2 * m)) + list(range(0, m)), mode)
    e2 = 3 * m
    sigma_comps = [
        poly_add(Poly.variable(e2, m + i, mode), Poly.variable(e2, 2 * m + i, mode))
        for i in range(m)
    ]
    sigma_comps += [Poly.variable(e2, i, mode) for i in range(m)]
    sigma = PolyMap(e2, 2 * m, tuple(sigma_comps), mode)
    return make_bundle(
        m,
        m,
        sigma,
        tangent_zero(m, mode),
        cdc_ell(m, mode),
        (swap, permutation_map(2 * m, list(range(m, 2 * m)) + list(range(0, m)), mode)),
        mode,
    )


def verify_bundle(b: DiffBundle, label: str = "bundle") -> Report:
    """One check per axiom of the lift definition, plus witness identities."""
    checks = CheckSet()
    m, e = b.base, b.total
    ident_e = identity_map(e, b.mode)
    pi0, pi1 = bundle_pi(b, 0), bundle_pi(b, 1)
    p_e = point_proj(e, b.mode)
    zero_e = tangent_zero(e, b.mode)
    zero_m = tangent_zero(m, b.mode)

    def eq(name: str, lhs: PolyMap, rhs: PolyMap, detail: str = ""):
        checks.equality(name, lhs, rhs, detail, render=polymap_to_str)

    eq("triv-left-inverse", polymap_compose(b.triv, b.triv_inv), ident_e)
    eq(
        "triv-right-inverse",
        polymap_compose(b.triv_inv, b.triv),
        identity_map(m + b.fibre, b.mode),
    )
    eq(
        "triv-projection",
        polymap_compose(b.triv, polymap_proj(m + b.fibre, 0, m, b.mode)),
        b.q,
    )
    eq("sigma-over-base", polymap_compose(b.sigma, b.q), polymap_compose(pi0, b.q))
    eq("sigma-base-agreement", polymap_compose(pi0, b.q), polymap_compose(pi1, b.q))
    eq("zeta-section", polymap_compose(b.zeta, b.q), identity_map(m, b.mode))
    with checks.guard("sigma-unit"):
        qz = polymap_compose(b.q, b.zeta)
        eq(
            "sigma-unit",
            polymap_compose(pair_into_e2(b, ident_e, qz), b.sigma),
            ident_e,
            "unit on the right",
        )
        eq(
            "sigma-unit",
            polymap_compose(pair_into_e2(b, qz, ident_e), b.sigma),
            ident_e,
            "unit on the left",
        )
    with checks.guard("sigma-commutative"):
        swap = pair_into_e2(b, pi1, pi0)
        eq("sigma-commutative", polymap_compose(swap, b.sigma), b.sigma)
    with checks.guard("sigma-associative"):
        k = b.fibre
        e3 = m + 3 * k
        legs = []
        for i in range(3):
            x = polymap_proj(e3, 0, m, b.mode)
            fib = polymap_proj(e3, m + i * k, m + (i + 1) * k, b.mode)
            legs.append(polymap_compose(polymap_pair(x, fib), b.triv_inv))
        s12 = polymap_compose(pair_into_e2(b, legs[0], legs[1]), b.sigma)
        s23 = polymap_compose(pair_into_e2(b, legs[1], legs[2]), b.sigma)
        eq(
            "sigma-associative",
            polymap_compose(pair_into_e2(b, s12, legs[2]), b.sigma),
            polymap_compose(pair_into_e2(b, legs[0], s23), b.sigma),
        )
    eq(
        "lambda-zero-square",
        polymap_compose(b.lam, cdc_T(b.q)),
        polymap_compose(b.q, zero_m),
    )
    with checks.guard("lambda-additive-over-zero"):
        paired = pair_into_t_e2(
            b, polymap_compose(pi0, b.lam), polymap_compose(pi1, b.lam)
        )
        eq(
            "lambda-additive-over-zero",
            polymap_compose(b.sigma, b.lam),
            polymap_compose(paired, cdc_T(b.sigma)),
        )
    eq(
        "lambda-zero-over-zero",
        polymap_compose(b.zeta, b.lam),
        polymap_compose(zero_m, cdc_T(b.zeta)),
    )
    eq(
        "lambda-zeta-square",
        polymap_compose(b.lam, p_e),
        polymap_compose(b.q, b.zeta),
    )
    with checks.guard("lambda-additive-over-zeta"):
        paired = pair_into_t2_total(
            e, polymap_compose(pi0, b.lam), polymap_compose(pi1, b.lam), b.mode
        )
        eq(
            "lambda-additive-over-zeta",
            polymap_compose(b.sigma, b.lam),
            polymap_compose(paired, tangent_plus(e, b.mode)),
        )
    eq(
        "lambda-zero-over-zeta",
        polymap_compose(b.zeta, b.lam),
        polymap_compose(b.zeta, zero_e),
    )
    eq(
        "lambda-lift-coherence",
        polymap_compose(b.lam, cdc_ell(e, b.mode)),
        polymap_compose(b.lam, cdc_T(b.lam)),
    )
    with checks.guard("universality"):
        kap = kappa_map(b)
        eq(
            "universality-left",
            polymap_compose(kap, b.rho),
            identity_map(b.e2_dim, b.mode),
        )
        eq(
            "universality-right",
            polymap_compose(b.rho, kap),
            identity_map(b.r_dim, b.mode),
        )
        mu = mu_map(b)
        into_t = r_into_tangent(b)
        eq("universality-cone", polymap_compose(kap, into_t), mu, "kappa over T(E)")
        eq(
            "universality-cone",
            polymap_compose(kap, r_into_base(b)),
            polymap_compose(pi0, b.q),
            "kappa over the base",
        )
        eq("universality-cone", polymap_compose(b.rho, mu), into_t, "rho over T(E)")
        eq(
            "universality-cone",
            polymap_compose(b.rho, polymap_compose(pi0, b.q)),
            r_into_base(b),
            "rho over the base",
        )
        eq("mu-projection", polymap_compose(mu, p_e), pi1)
        section = pair_into_e2(b, ident_e, polymap_compose(b.q, b.zeta))
        eq("mu-section", polymap_compose(section, mu), b.lam)
    return checks.report(f"verify[{label}]", {"base": b.base, "fibre": b.fibre, "mode": b.mode})


# ---------------------------------------------------------------------------
# Morphisms: squares, additivity, linearity


def is_bundle_morphism(mor: BundleMor, b: DiffBundle, b2: DiffBundle) -> bool:
    return polymap_equal(
        polymap_compose(mor.f, b2.q), polymap_compose(b.q, mor.g)
    )


def _require_morphism(mor: BundleMor, b: DiffBundle, b2: DiffBundle):
    if mor.f.dom != b.total or mor.f.cod != b2.total:
        raise NotABundleMorphism("total map has wrong endpoints")
    if mor.g.dom != b.base or mor.g.cod != b2.base:
        raise NotABundleMorphism("base map has wrong endpoints")
    if not is_bundle_morphism(mor, b, b2):
        raise NotABundleMorphism("square f;q' = q;g fails")


def is_linear(mor: BundleMor, b: DiffBundle, b2: DiffBundle) -> bool:
    """fq' = qg and f;lambda' = lambda;T(f)."""
    _require_morphism(mor, b, b2)
    return polymap_equal(
        polymap_compose(mor.f, b2.lam), polymap_compose(b.lam, cdc_T(mor.f))
    )


def is_additive(mor: BundleMor, b: DiffBundle, b2: DiffBundle) -> bool:
    """Preserves sigma and zeta over g."""
    _require_morphism(mor, b, b2)
    f2 = pair_into_e2(
        b2, polymap_compose(bundle_pi(b, 0), mor.f), polymap_compose(bundle_pi(b, 1), mor.f)
    )
    adds = polymap_equal(
        polymap_compose(b.sigma, mor.f), polymap_compose(f2, b2.sigma)
    )
    zeros = polymap_equal(
        polymap_compose(b.zeta, mor.f), polymap_compose(mor.g, b2.zeta)
    )
    return adds and zeros


def mu_characterization(mor: BundleMor, b: DiffBundle, b2: DiffBundle) -> bool:
    """mu;T(f) = <pi0 f, pi1 f> mu' together with zeta preservation."""
    _require_morphism(mor, b, b2)
    f2 = pair_into_e2(
        b2, polymap_compose(bundle_pi(b, 0), mor.f), polymap_compose(bundle_pi(b, 1), mor.f)
    )
    main = polymap_equal(
        polymap_compose(mu_map(b), cdc_T(mor.f)), polymap_compose(f2, mu_map(b2))
    )
    zeros = polymap_equal(
        polymap_compose(b.zeta, mor.f), polymap_compose(mor.g, b2.zeta)
    )
    return main and zeros


# ---------------------------------------------------------------------------
# Constructions: tangent, pullback, Whitney sum


def tangent_of_bundle(b: DiffBundle) -> DiffBundle:
    """T of a bundle: (T(q), T(sigma), T(zeta), T(lambda) c), transported."""
    m, k, e = b.base, b.fibre, b.total
    mode = b.mode
    # E'_2 carries (dx, x, da, a, db, b); permute into T(E_2) order
    # (dx, da, db, x, a, b) before applying T(sigma)
    images = (
        list(range(0, m))
        + list(range(2 * m, 2 * m + k))
        + list(range(2 * m + 2 * k, 2 * m + 3 * k))
        + list(range(m, 2 * m))
        + list(range(2 * m + k, 2 * m + 2 * k))
        + list(range(2 * m + 3 * k, 2 * m + 4 * k))
    )
    perm = permutation_map(2 * m + 4 * k, images, mode)
    sigma2 = polymap_compose(perm, cdc_T(b.sigma))
    zeta2 = cdc_T(b.zeta)
    lam2 = polymap_compose(cdc_T(b.lam), cdc_flip(e, mode))
    triv2 = polymap_compose(cdc_T(b.triv), _shuffle_to_display(m, k, mode))
    triv2_inv = polymap_compose(_shuffle_from_display(m, k, mode), cdc_T(b.triv_inv))
    return make_bundle(2 * m, 2 * k, sigma2, zeta2, lam2, (triv2, triv2_inv), mode)


def bundle_projection_mor(b: DiffBundle) -> BundleMor:
    """(p_E, p_M) : T(bundle) -> bundle."""
    return BundleMor(point_proj(b.total, b.mode), point_proj(b.base, b.mode))


def bundle_zero_mor(b: DiffBundle) -> BundleMor:
    """(0_E, 0_M) : bundle -> T(bundle)."""
    return BundleMor(tangent_zero(b.total, b.mode), tangent_zero(b.base, b.mode))


def _display_blocks(b: DiffBundle):
    """Trivialized structural data: sigma, zeta and lift blocks over (x, a)."""
    m, k = b.base, b.fibre
    sigma_fib = polymap_compose(
        polymap_compose(b.sigma, b.triv), polymap_proj(m + k, m, m + k, b.mode)
    )
    zeta_fib = polymap_compose(
        polymap_compose(b.zeta, b.triv), polymap_proj(m + k, m, m + k, b.mode)
    )
    shuffle = _shuffle_to_display(m, k, b.mode)
    lam_display = polymap_compose(
        b.triv_inv, polymap_compose(b.lam, polymap_compose(cdc_T(b.triv), shuffle))
    )
    lam_tan = PolyMap(m + k, k, lam_display.components[2 * m : 2 * m + k], b.mode)
    lam_pt = PolyMap(m + k, k, lam_display.components[2 * m + k :], b.mode)
    return sigma_fib, zeta_fib, lam_tan, lam_pt


def pullback_bundle(f: PolyMap, b: DiffBundle) -> DiffBundle:
    """f*(bundle) over the domain of f, total realized as (x', a)."""
    if f.cod != b.base:
        raise DimensionMismatch("pullback map must land in the base")
    if f.mode != b.mode:
        raise DimensionMismatch("pullback map must share the scalar mode")
    x, k = f.dom, b.fibre
    mode = b.mode
    sigma_fib, zeta_fib, lam_tan, lam_pt = _display_blocks(b)
    # sigma'(x', a, b) = (x', s(f(x'), a, b))
    e2 = x + 2 * k
    base_of = polymap_proj(e2, 0, x, mode)
    fx = polymap_compose(base_of, f)
    args = polymap_pair(fx, polymap_proj(e2, x, e2, mode))
    sigma2 = polymap_pair(base_of, polymap_compose(args, sigma_fib))
    zeta2 = polymap_pair(identity_map(x, mode), polymap_compose(f, zeta_fib))
    total = x + k
    fx1 = polymap_pair(
        polymap_compose(polymap_proj(total, 0, x, mode), f),
        polymap_proj(total, x, total, mode),
    )
    lam2 = polymap_pair(
        zero_map(total, x, mode),
        polymap_compose(fx1, lam_tan),
        polymap_proj(total, 0, x, mode),
        polymap_compose(fx1, lam_pt),
    )
    return make_bundle(x, k, sigma2, zeta2, lam2, None, mode)


def pullback_mor(f: PolyMap, b: DiffBundle, pulled: DiffBundle) -> BundleMor:
    """The Cartesian projection (f*_E, f) : f*(bundle) -> bundle."""
    total = pulled.total
    fx1 = polymap_pair(
        polymap_compose(polymap_proj(total, 0, pulled.base, pulled.mode), f),
        polymap_proj(total, pulled.base, total, pulled.mode),
    )
    return BundleMor(polymap_compose(fx1, b.triv_inv), f)


def whitney_sum(b1: DiffBundle, b2: DiffBundle) -> DiffBundle:
    """Fibre product over a shared base: fibre coordinates concatenated."""
    if b1.base != b2.base:
        raise DimensionMismatch("base-mismatch: Whitney sum needs a common base")
    if b1.mode != b2.mode:
        raise DimensionMismatch("Whitney sum needs a common scalar mode")
    m, k1, k2 = b1.base, b1.fibre, b2.fibre
    mode = b1.mode
    s1, z1, l1t, l1p = _display_blocks(b1)
    s2, z2, l2t, l2p = _display_blocks(b2)
    k = k1 + k2
    e2 = m + 2 * k
    x = polymap_proj(e2, 0, m, mode)
    a1 = polymap_proj(e2, m, m + k1, mode)
    a2 = polymap_proj(e2, m + k1, m + k, mode)
    c1 = polymap_proj(e2, m + k, m + k + k1, mode)
    c2 = polymap_proj(e2, m + k + k1, e2, mode)
    sigma = polymap_pair(
        x,
        polymap_compose(polymap_pair(x, a1, c1), s1),
        polymap_compose(polymap_pair(x, a2, c2), s2),
    )
    zeta = polymap_pair(identity_map(m, mode), z1, z2)
    total = m + k
    tx = polymap_proj(total, 0, m, mode)
    ta1 = polymap_proj(total, m, m + k1, mode)
    ta2 = polymap_proj(total, m + k1, total, mode)
    pair1 = polymap_pair(tx, ta1)
    pair2 = polymap_pair(tx, ta2)
    lam = polymap_pair(
        zero_map(total, m, mode),
        polymap_compose(pair1, l1t),
        polymap_compose(pair2, l2t),
        tx,
        polymap_compose(pair1, l1p),
        polymap_compose(pair2, l2p),
    )
    return make_bundle(m, k, sigma, zeta, lam, None, mode)


def whitney_proj(bsum: DiffBundle, b1: DiffBundle, b2: DiffBundle, which: int) -> BundleMor:
    """(pi_i, 1_M) out of the Whitney sum."""
    m, k1 = bsum.base, b1.fibre
    total = bsum.total
    mode = bsum.mode
    tx = polymap_proj(total, 0, m, mode)
    if which == 0:
        fib = polymap_proj(total, m, m + k1, mode)
        target = b1
    else:
        fib = polymap_proj(total, m + k1, total, mode)
        target = b2
    f = polymap_compose(polymap_pair(tx, fib), target.triv_inv)
    return BundleMor(f, identity_map(m, mode))


def whitney_pair(
    mor1: BundleMor, mor2: BundleMor, b1: DiffBundle, b2: DiffBundle, bsum: DiffBundle
) -> BundleMor:
    """<mor1, mor2> into the sum, for morphisms over a shared base map."""
    if not polymap_equal(mor1.g, mor2.g):
        raise PreconditionFailure("Whitney pairing needs a shared base map")
    f1t = polymap_compose(mor1.f, b1.triv)
    f2t = polymap_compose(mor2.f, b2.triv)
    m = bsum.base
    x_block = PolyMap(f1t.dom, m, f1t.components[:m], bsum.mode)
    fib1 = PolyMap(f1t.dom, b1.fibre, f1t.components[m:], bsum.mode)
    fib2 = PolyMap(f2t.dom, b2.fibre, f2t.components[m:], bsum.mode)
    return BundleMor(polymap_pair(x_block, fib1, fib2), mor1.g)


# ---------------------------------------------------------------------------
# Bundle description files


def parse_bundle_text(text: str) -> DiffBundle:
    """Read a bundle from INI text with a [bundle] section.

    Required fields: base, fibre, sigma, zeta, lambda.  Optional: mode
    (default rational), triv and triv_inv (default identity layout).
    Maps use the component grammar of the expression parser.
    """
    import configparser

    from .parser import parse_polymap

    cfg = configparser.ConfigParser()
    cfg.read_string(text)
    if "bundle" not in cfg:
        raise PreconditionFailure("missing [bundle] section")
    sec = cfg["bundle"]
    mode = sec.get("mode", scalars.RATIONAL).strip()
    scalars.check_mode(mode)
    base = int(sec["base"])
    fibre = int(sec["fibre"])
    total = base + fibre
    triv = None
    if "triv" in sec or "triv_inv" in sec:
        if "triv" not in sec or "triv_inv" not in sec:
            raise PreconditionFailure("triv and triv_inv must be given together")
        t = parse_polymap(sec["triv"], total, mode)
        t_inv = parse_polymap(sec["triv_inv"], total, mode)
        triv = (t, t_inv)
    sigma = parse_polymap(sec["sigma"], base + 2 * fibre, mode)
    zeta = parse_polymap(sec["zeta"], base, mode)
    lam = parse_polymap(sec["lambda"], total, mode)
    return make_bundle(base, fibre, sigma, zeta, lam, triv, mode)


def load_bundle(path: str) -> DiffBundle:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_bundle_text(fh.read())
