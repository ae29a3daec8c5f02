"""Named verification suites over the symbolic and numeric models.

Every suite runs a fixed list of named checks, aggregating repeated random
instances under one row per check name.  All randomness is drawn from
per-check streams seeded as "<suite>:<group>:<seed>", so reports are
reproducible byte for byte (modulo wall time) for fixed parameters.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable, Dict, Optional

from . import scalars
from .bundles import (
    BundleMor,
    DiffBundle,
    assemble_tangent,
    bracket,
    bundle_pi,
    bundle_projection_mor,
    bundle_zero_mor,
    is_additive,
    is_linear,
    make_bundle,
    mu_characterization,
    mu_map,
    pair_into_e2,
    pair_into_t2_total,
    pair_into_t_e2,
    pullback_bundle,
    pullback_mor,
    standard_bundle,
    tangent_bundle_of,
    tangent_of_bundle,
    trivial_bundle,
    verify_bundle,
    whitney_pair,
    whitney_proj,
    whitney_sum,
)
from .cdc import (
    PolyTangentModel,
    cdc_D,
    cdc_T,
    cdc_flip,
    point_proj,
    tangent_plus,
    tangent_zero,
)
from .diffobj import (
    bundle_from_diffobj,
    canonical_diffobj,
    check_cds,
    derived_D,
    diffobj_from_bundle,
    verify_diffobj,
)
from .errors import DimensionMismatch, PreconditionFailure
from .fibration import (
    SimpleMor,
    SimpleObj,
    simple_D,
    simple_add,
    simple_compose,
    simple_identity,
    simple_pair,
    simple_proj,
    simple_product,
    simple_str,
    simple_zero_mor,
    vertical_T,
    vertical_tangent_map,
    verify_fibre_axioms,
)
from .model import TangentModel, monad_mult, vertical_lift_v
from .numeric import NumericProgram, dual_eval, fd_check
from .poly import (
    Poly,
    PolyMap,
    constant_map,
    eval_polymap,
    identity_map,
    permutation_map,
    poly_add,
    poly_mul,
    poly_scale,
    poly_shift_vars,
    polymap_add,
    polymap_compose,
    polymap_equal,
    polymap_pair,
    polymap_proj,
    polymap_to_str,
    random_polymap,
    zero_map,
)
from .report import PASS, CheckSet, Report

FAULTS = ("identity-flip", "dropped-zero-block", "corrupted-lambda")
_MODEL_FAULT_SUITES = {"tangent-axioms", "monad-laws"}
_BUNDLE_FAULT_SUITES = {"bundle", "bracket-laws"}

DEFAULTS: Dict[str, object] = {
    "mode": scalars.RATIONAL,
    "max_dim": 3,
    "max_degree": 3,
    "instances": 50,
    "seed": 0,
    "coeff_bound": 5,
    "fault": None,
}


def rng_for(suite: str, group: str, seed: int) -> random.Random:
    """One deterministic stream per (suite, check group, seed)."""
    return random.Random(f"{suite}:{group}:{seed}")


# ---------------------------------------------------------------------------
# Fault injection


class IdentityFlipModel(PolyTangentModel):
    """Fault: the flip on second tangents is replaced by the identity."""

    def flip(self, m: int) -> PolyMap:
        return identity_map(4 * m, self.mode)


class DroppedZeroModel(PolyTangentModel):
    """Fault: the lift forgets to zero its point block, (u,x) |-> (u,0,u,x)."""

    def ell(self, m: int) -> PolyMap:
        u = polymap_proj(2 * m, 0, m, self.mode)
        x = polymap_proj(2 * m, m, 2 * m, self.mode)
        return polymap_pair(u, zero_map(2 * m, m, self.mode), u, x)


def poly_model(mode: str, fault: Optional[str] = None) -> PolyTangentModel:
    if fault == "identity-flip":
        return IdentityFlipModel(mode)
    if fault == "dropped-zero-block":
        return DroppedZeroModel(mode)
    return PolyTangentModel(mode)


def corrupted_standard_bundle(mode: str = scalars.RATIONAL) -> DiffBundle:
    """standard(1,1) whose lift leaks the fibre value, (x,a) |-> (0,a,x,a)."""
    base = standard_bundle(1, 1, mode)
    x = polymap_proj(2, 0, 1, mode)
    a = polymap_proj(2, 1, 2, mode)
    lam = polymap_pair(zero_map(2, 1, mode), a, x, a)
    return make_bundle(1, 1, base.sigma, base.zeta, lam, None, mode)


# ---------------------------------------------------------------------------
# Tangent axioms, generic over the model (shared with the fibre model)


def tangent_axioms_checks(
    model: TangentModel,
    max_dim: int,
    max_degree: int,
    coeff_bound: int,
    instances: int,
    seed: int,
    suite_name: str = "tangent-axioms",
) -> CheckSet:
    checks = CheckSet()

    def eq(name, lhs, rhs, detail=""):
        checks.equality(name, lhs, rhs, detail, render=model.mor_str)

    for m in range(1, max_dim + 1):
        d = f"dim {m}"
        tm = model.t_obj(m)
        p = model.p(m)
        z = model.zero(m)
        pl = model.plus(m)
        el = model.ell(m)
        c = model.flip(m)
        t2 = model.t_n(m, 2)
        pi0, pi1 = t2.projections

        eq("p-section", model.compose(z, p), model.identity(m), d)
        eq("plus-over-base", model.compose(pl, p), model.compose(pi0, p), d)
        with checks.guard("plus-unit"):
            pz = model.compose(p, z)
            right_unit = model.pair_t2(m, model.identity(tm), pz)
            left_unit = model.pair_t2(m, pz, model.identity(tm))
            eq("plus-unit", model.compose(right_unit, pl), model.identity(tm), d + ", unit on the right")
            eq("plus-unit", model.compose(left_unit, pl), model.identity(tm), d + ", unit on the left")
        with checks.guard("plus-commutative"):
            swap = model.pair_t2(m, pi1, pi0)
            eq("plus-commutative", model.compose(swap, pl), pl, d)
        with checks.guard("plus-associative"):
            t3 = model.t_n(m, 3)
            q0, q1, q2 = t3.projections
            s01 = model.compose(model.pair_t2(m, q0, q1), pl)
            s12 = model.compose(model.pair_t2(m, q1, q2), pl)
            eq(
                "plus-associative",
                model.compose(model.pair_t2(m, s01, q2), pl),
                model.compose(model.pair_t2(m, q0, s12), pl),
                d,
            )

        eq("flip-involution", model.compose(c, c), model.identity(model.t_obj(tm)), d)
        eq("ell-flip", model.compose(el, c), el, d)
        eq("ell-projection", model.compose(el, model.t_mor(p)), model.compose(p, z), d)
        with checks.guard("ell-additive"):
            paired = model.pair_t_t2(m, model.compose(pi0, el), model.compose(pi1, el))
            eq(
                "ell-additive",
                model.compose(pl, el),
                model.compose(paired, model.t_mor(pl)),
                d,
            )
        eq("ell-zero", model.compose(z, el), model.compose(z, model.t_mor(z)), d)
        eq("flip-vs-tangent-projection", model.compose(c, model.p(tm)), model.t_mor(p), d)
        with checks.guard("flip-additive"):
            a = model.compose(model.t_mor(pi0), c)
            b = model.compose(model.t_mor(pi1), c)
            paired = model.pair_t2(tm, a, b)
            eq(
                "flip-additive",
                model.compose(model.t_mor(pl), c),
                model.compose(paired, model.plus(tm)),
                d,
            )
        eq("flip-zero", model.compose(model.t_mor(z), c), model.zero(tm), d)
        eq(
            "ell-coassociative",
            model.compose(el, model.t_mor(el)),
            model.compose(el, model.ell(tm)),
            d,
        )
        c_t = model.flip(tm)
        t_c = model.t_mor(c)
        eq(
            "yang-baxter",
            model.compose(t_c, model.compose(c_t, t_c)),
            model.compose(c_t, model.compose(t_c, c_t)),
            d,
        )
        ell_t = model.ell(tm)
        eq(
            "ell-flip-braid",
            model.compose(c, model.compose(ell_t, t_c)),
            model.compose(model.t_mor(el), c_t),
            d + ", form c ell_T T(c) = T(ell) c_T",
        )
        eq(
            "ell-flip-braid",
            model.compose(ell_t, model.compose(t_c, c_t)),
            model.compose(c, model.t_mor(el)),
            d + ", form ell_T T(c) c_T = c T(ell)",
        )

        with checks.guard("lift-v-projection"):
            v = vertical_lift_v(model, m)
            eq(
                "lift-v-projection",
                model.compose(v, model.t_mor(p)),
                model.compose(pi0, model.compose(p, z)),
                d,
            )
            eq("lift-v-point", model.compose(v, model.p(tm)), pi1, d)
        with checks.guard("lift-witness"):
            v = vertical_lift_v(model, m)
            w = model.lift_witness(m)
            eq(
                "lift-witness-inverse",
                model.compose(w.kappa, w.rho),
                model.identity(t2.carrier),
                d + ", kappa;rho",
            )
            eq(
                "lift-witness-inverse",
                model.compose(w.rho, w.kappa),
                model.identity(w.carrier),
                d + ", rho;kappa",
            )
            eq("lift-witness-cone", model.compose(w.kappa, w.into_tangent), v, d + ", kappa over T")
            eq(
                "lift-witness-cone",
                model.compose(w.kappa, w.into_base),
                model.compose(pi0, p),
                d + ", kappa over the base",
            )
            eq("lift-witness-cone", model.compose(w.rho, v), w.into_tangent, d + ", rho over T")
            t_kappa = model.t_mor(w.kappa)
            t_rho = model.t_mor(w.rho)
            eq(
                "lift-witness-tangent",
                model.compose(t_kappa, t_rho),
                model.identity(model.t_obj(t2.carrier)),
                d + ", T level",
            )
            eq(
                "lift-witness-tangent",
                model.compose(t_rho, t_kappa),
                model.identity(model.t_obj(w.carrier)),
                d + ", T level",
            )
            if m == 1:
                tt_kappa = model.t_mor(t_kappa)
                tt_rho = model.t_mor(t_rho)
                eq(
                    "lift-witness-tangent",
                    model.compose(tt_kappa, tt_rho),
                    model.identity(model.t_obj(model.t_obj(t2.carrier))),
                    d + ", T^2 level",
                )

    rng = rng_for(suite_name, "naturality", seed)
    for i in range(instances):
        dx = rng.randint(1, max_dim)
        dy = rng.randint(1, max_dim)
        f = model.random_mor(dx, dy, rng, max_degree, coeff_bound)
        desc = f"instance {i}: f = {model.mor_str(f)}"
        tf = model.t_mor(f)
        eq("naturality-p", model.compose(tf, model.p(dy)), model.compose(model.p(dx), f), desc)
        eq("naturality-zero", model.compose(f, model.zero(dy)), model.compose(model.zero(dx), tf), desc)
        with checks.guard("naturality-plus"):
            pi0x, pi1x = model.t_n(dx, 2).projections
            t2f = model.pair_t2(dy, model.compose(pi0x, tf), model.compose(pi1x, tf))
            eq(
                "naturality-plus",
                model.compose(t2f, model.plus(dy)),
                model.compose(model.plus(dx), tf),
                desc,
            )
        eq(
            "naturality-ell",
            model.compose(tf, model.ell(dy)),
            model.compose(model.ell(dx), model.t_mor(tf)),
            desc,
        )
        t2f = model.t_mor(tf)
        eq(
            "naturality-flip",
            model.compose(t2f, model.flip(dy)),
            model.compose(model.flip(dx), t2f),
            desc,
        )

    # functoriality carries every identity above to its image under T
    rng = rng_for(suite_name, "functor", seed)
    for m in range(1, max_dim + 1):
        eq(
            "functor-identity",
            model.t_mor(model.identity(m)),
            model.identity(model.t_obj(m)),
            f"dim {m}",
        )
    for i in range(instances):
        dx = rng.randint(1, max_dim)
        dy = rng.randint(1, max_dim)
        dz = rng.randint(1, max_dim)
        f = model.random_mor(dx, dy, rng, max_degree, coeff_bound)
        g = model.random_mor(dy, dz, rng, max_degree, coeff_bound)
        eq(
            "functor-compose",
            model.t_mor(model.compose(f, g)),
            model.compose(model.t_mor(f), model.t_mor(g)),
            f"instance {i}: f = {model.mor_str(f)}; g = {model.mor_str(g)}",
        )
    return checks


def _suite_tangent_axioms(params: Dict[str, object]) -> Report:
    model = poly_model(params["mode"], params["fault"])
    checks = tangent_axioms_checks(
        model,
        params["max_dim"],
        params["max_degree"],
        params["coeff_bound"],
        params["instances"],
        params["seed"],
    )
    return checks.report("tangent-axioms", params)


# ---------------------------------------------------------------------------
# Cartesian differential axioms, generic over the differential operator


def _const_map(dim_out: int, rng: random.Random, bound: int, mode: str) -> PolyMap:
    values = [scalars.random_scalar(mode, rng, bound) for _ in range(dim_out)]
    return constant_map(0, values, mode)


def cdc_axioms_checks(
    dfun: Callable[[PolyMap], PolyMap],
    mode: str,
    max_dim: int,
    max_degree: int,
    coeff_bound: int,
    instances: int,
    seed: int,
    suite_name: str,
    checks: Optional[CheckSet] = None,
) -> CheckSet:
    if checks is None:
        checks = CheckSet()

    def eq(name, lhs, rhs, detail=""):
        checks.equality(name, lhs, rhs, detail, render=polymap_to_str)

    rng = rng_for(suite_name, "cd", seed)
    for i in range(instances):
        m = rng.randint(1, max_dim)
        n = rng.randint(1, max_dim)
        pdim = rng.randint(1, max_dim)
        f = random_polymap(m, n, max_degree, coeff_bound, rng, mode)
        g = random_polymap(m, n, max_degree, coeff_bound, rng, mode)
        h = random_polymap(n, pdim, max_degree, coeff_bound, rng, mode)
        desc = f"instance {i}: f = {polymap_to_str(f)}"
        df = dfun(f)

        eq("cd1-additive", dfun(polymap_add(f, g)), polymap_add(df, dfun(g)), desc)
        eq("cd1-zero", dfun(zero_map(m, n, mode)), zero_map(2 * m, n, mode), f"dims ({m},{n})")

        dom3 = 3 * m
        a = polymap_proj(dom3, 0, m, mode)
        b = polymap_proj(dom3, m, 2 * m, mode)
        x = polymap_proj(dom3, 2 * m, dom3, mode)
        lhs = polymap_compose(polymap_pair(polymap_add(a, b), x), df)
        rhs = polymap_add(
            polymap_compose(polymap_pair(a, x), df),
            polymap_compose(polymap_pair(b, x), df),
        )
        eq("cd2-additive", lhs, rhs, desc)
        eq("cd2-zero", polymap_compose(tangent_zero(m, mode), df), zero_map(m, n, mode), desc)
        ca = _const_map(m, rng, coeff_bound, mode)
        cb = _const_map(m, rng, coeff_bound, mode)
        cx = _const_map(m, rng, coeff_bound, mode)
        lhs_c = polymap_compose(polymap_pair(polymap_add(ca, cb), cx), df)
        rhs_c = polymap_add(
            polymap_compose(polymap_pair(ca, cx), df),
            polymap_compose(polymap_pair(cb, cx), df),
        )
        eq("cd2-additive-points", lhs_c, rhs_c, desc)

        eq(
            "cd3-identity",
            dfun(identity_map(m, mode)),
            polymap_proj(2 * m, 0, m, mode),
            f"dim {m}",
        )
        first = polymap_proj(2 * (m + n), 0, m + n, mode)
        for lo, hi, which in ((0, m, "first"), (m, m + n, "second")):
            pi = polymap_proj(m + n, lo, hi, mode)
            eq(
                "cd3-projection",
                dfun(pi),
                polymap_compose(first, pi),
                f"dims ({m},{n}), {which} factor",
            )

        eq("cd4-pairing", dfun(polymap_pair(f, g)), polymap_pair(df, dfun(g)), desc)

        chain = polymap_compose(
            polymap_pair(df, polymap_compose(point_proj(m, mode), f)), dfun(h)
        )
        eq("cd5-chain", dfun(polymap_compose(f, h)), chain, desc + f", h = {polymap_to_str(h)}")

        ddf = dfun(df)
        dom2 = 2 * m
        inject = polymap_pair(
            polymap_proj(dom2, 0, m, mode),
            zero_map(dom2, m, mode),
            zero_map(dom2, m, mode),
            polymap_proj(dom2, m, dom2, mode),
        )
        eq("cd6-lift", polymap_compose(inject, ddf), df, desc)
        zero0 = zero_map(0, m, mode)
        c6 = polymap_pair(ca, zero0, zero0, cx)
        eq(
            "cd6-lift-points",
            polymap_compose(c6, ddf),
            polymap_compose(polymap_pair(ca, cx), df),
            desc,
        )

        ex = cdc_flip(m, mode)
        eq("cd7-symmetry", polymap_compose(ex, ddf), ddf, desc)
        cc = _const_map(m, rng, coeff_bound, mode)
        c7 = polymap_pair(ca, cb, cc, cx)
        eq(
            "cd7-symmetry-points",
            polymap_compose(c7, ddf),
            polymap_compose(polymap_compose(c7, ex), ddf),
            desc,
        )
    return checks


def _suite_cdc_axioms(params: Dict[str, object]) -> Report:
    checks = cdc_axioms_checks(
        cdc_D,
        params["mode"],
        params["max_dim"],
        params["max_degree"],
        params["coeff_bound"],
        params["instances"],
        params["seed"],
        "cdc-axioms",
    )
    return checks.report("cdc-axioms", params)


def _suite_derived_differential(params: Dict[str, object]) -> Report:
    checks = CheckSet()
    mode = params["mode"]
    rng = rng_for("derived-differential", "agreement", params["seed"])
    # full (dom, cod) grid, instances maps per cell
    for m in range(1, params["max_dim"] + 1):
        for n in range(1, params["max_dim"] + 1):
            for i in range(params["instances"]):
                f = random_polymap(
                    m, n, params["max_degree"], params["coeff_bound"], rng, mode
                )
                checks.equality(
                    "derived-equals-direct",
                    derived_D(f),
                    cdc_D(f),
                    f"dom {m}, cod {n}, instance {i}: f = {polymap_to_str(f)}",
                    render=polymap_to_str,
                )
    cdc_axioms_checks(
        derived_D,
        mode,
        params["max_dim"],
        params["max_degree"],
        params["coeff_bound"],
        params["instances"],
        params["seed"],
        "derived-differential",
        checks=checks,
    )
    return checks.report("derived-differential", params)


# ---------------------------------------------------------------------------
# Bundle constructors


def _bundle_families(mode: str, fault: Optional[str]):
    std11 = (
        corrupted_standard_bundle(mode)
        if fault == "corrupted-lambda"
        else standard_bundle(1, 1, mode)
    )
    return [
        ("trivial-1", trivial_bundle(1, mode)),
        ("trivial-2", trivial_bundle(2, mode)),
        ("standard-1-1", std11),
        ("standard-2-1", standard_bundle(2, 1, mode)),
        ("standard-1-2", standard_bundle(1, 2, mode)),
        ("tangent-1", tangent_bundle_of(1, mode)),
        ("tangent-2", tangent_bundle_of(2, mode)),
    ]


def _first_failure(report: Report) -> str:
    for c in report.checks:
        if c.status != PASS:
            return f"; first failing check {c.name}: {c.counterexample}"
    return ""


def _suite_bundle(params: Dict[str, object]) -> Report:
    mode = params["mode"]
    seed = params["seed"]
    checks = CheckSet()
    fams = _bundle_families(mode, params["fault"])
    by_label = dict(fams)

    for label, b in fams:
        checks.absorb(verify_bundle(b, label), prefix=f"{label}:")
        tb = tangent_of_bundle(b)
        checks.absorb(verify_bundle(tb, f"T[{label}]"), prefix=f"T[{label}]:")
        with checks.guard("tangent-projection-linear"):
            checks.condition(
                "tangent-projection-linear", is_linear(bundle_projection_mor(b), tb, b), label
            )
        with checks.guard("tangent-zero-linear"):
            checks.condition("tangent-zero-linear", is_linear(bundle_zero_mor(b), b, tb), label)

    t_triv = tangent_of_bundle(by_label["trivial-1"])
    plain = trivial_bundle(2, mode)
    same = all(
        polymap_equal(getattr(t_triv, fld), getattr(plain, fld))
        for fld in ("q", "sigma", "zeta", "lam", "triv", "triv_inv")
    )
    checks.condition(
        "tangent-of-trivial", same, "T of the empty-fibre bundle must again be empty-fibre"
    )

    rng = rng_for("bundle", "pullback", seed)
    targets = [
        ("standard-1-1", by_label["standard-1-1"]),
        ("standard-2-1", by_label["standard-2-1"]),
        ("tangent-1", by_label["tangent-1"]),
    ]
    for i in range(params["instances"]):
        label, b = targets[i % len(targets)]
        xdim = rng.randint(1, 2)
        fmap = random_polymap(
            xdim, b.base, params["max_degree"], params["coeff_bound"], rng, mode
        )
        detail = f"instance {i} over {label}, f = {polymap_to_str(fmap)}"
        with checks.guard("pullback-verify"):
            pb = pullback_bundle(fmap, b)
            rep = verify_bundle(pb, "pullback")
            checks.condition(
                "pullback-verify", rep.all_passed, detail + _first_failure(rep)
            )
            mor = pullback_mor(fmap, b, pb)
            checks.condition("pullback-cartesian-linear", is_linear(mor, pb, b), detail)

    b = by_label["standard-2-1"]
    pb = pullback_bundle(identity_map(2, mode), b)
    same = all(
        polymap_equal(getattr(pb, fld), getattr(b, fld))
        for fld in ("q", "sigma", "zeta", "lam")
    )
    checks.condition("pullback-along-identity", same, "pullback along 1 must reproduce the bundle")

    with checks.guard("pullback-point-diffobj"):
        pt = constant_map(0, [scalars.coerce(mode, 1), scalars.coerce(mode, 2)], mode)
        pb0 = pullback_bundle(pt, b)
        o = diffobj_from_bundle(pb0)
        rep = verify_diffobj(o, "pullback-point")
        checks.condition(
            "pullback-point-diffobj",
            rep.all_passed,
            "fibre over a point" + _first_failure(rep),
        )

    base1 = [(label, bb) for label, bb in fams if bb.base == 1]
    for l1, b1 in base1:
        for l2, b2 in base1:
            detail = f"{l1} (+) {l2}"
            with checks.guard("whitney-verify"):
                bs = whitney_sum(b1, b2)
                rep = verify_bundle(bs, "whitney")
                checks.condition("whitney-verify", rep.all_passed, detail + _first_failure(rep))
                checks.condition(
                    "whitney-fibre-dimension", bs.fibre == b1.fibre + b2.fibre, detail
                )
                pr0 = whitney_proj(bs, b1, b2, 0)
                pr1 = whitney_proj(bs, b1, b2, 1)
                checks.condition(
                    "whitney-projection-linear",
                    is_linear(pr0, bs, b1) and is_linear(pr1, bs, b2),
                    detail,
                )
                paired = whitney_pair(pr0, pr1, b1, b2, bs)
                checks.equality(
                    "whitney-pairing-recovers",
                    paired.f,
                    identity_map(bs.total, mode),
                    detail,
                    render=polymap_to_str,
                )

    bs = whitney_sum(by_label["standard-1-1"], by_label["trivial-1"])
    same = all(
        polymap_equal(getattr(bs, fld), getattr(by_label["standard-1-1"], fld))
        for fld in ("q", "sigma", "zeta", "lam")
    )
    checks.condition("whitney-unit", same, "sum with the empty-fibre bundle changes nothing")

    raised = False
    try:
        whitney_sum(by_label["standard-1-1"], by_label["standard-2-1"])
    except DimensionMismatch:
        raised = True
    checks.condition(
        "whitney-base-mismatch-rejected", raised, "sums over different bases must be refused"
    )
    return checks.report("bundle", params)


# ---------------------------------------------------------------------------
# The bracket and its laws


def _zeta_fibre(b: DiffBundle) -> PolyMap:
    n = b.base + b.fibre
    return polymap_compose(
        b.zeta, polymap_compose(b.triv, polymap_proj(n, b.base, n, b.mode))
    )


def _bracket_bundles(mode: str, fault: Optional[str]):
    std11 = (
        corrupted_standard_bundle(mode)
        if fault == "corrupted-lambda"
        else standard_bundle(1, 1, mode)
    )
    return [
        ("standard-1-1", std11),
        ("standard-2-1", standard_bundle(2, 1, mode)),
        ("tangent-1", tangent_bundle_of(1, mode)),
    ]


def _suite_bracket_laws(params: Dict[str, object]) -> Report:
    mode = params["mode"]
    seed = params["seed"]
    deg = params["max_degree"]
    bound = params["coeff_bound"]
    checks = CheckSet()
    bundles = _bracket_bundles(mode, params["fault"])
    tangents = {label: tangent_of_bundle(b) for label, b in bundles}

    def eq(name, lhs, rhs, detail=""):
        checks.equality(name, lhs, rhs, detail, render=polymap_to_str)

    for label, b in bundles:
        e = b.total
        with checks.guard("bracket-of-zero"):
            eq(
                "bracket-of-zero",
                bracket(tangent_zero(e, mode), b),
                polymap_compose(b.q, b.zeta),
                label,
            )
        with checks.guard("bracket-of-lambda"):
            eq("bracket-of-lambda", bracket(b.lam, b), identity_map(e, mode), label)
        with checks.guard("bracket-of-mu"):
            eq("bracket-of-mu", bracket(mu_map(b), b), bundle_pi(b, 0), label)
        eq(
            "zeta-equalizes",
            polymap_compose(b.zeta, tangent_zero(e, mode)),
            polymap_compose(b.zeta, b.lam),
            label,
        )

    rng = rng_for("bracket-laws", "instances", seed)
    for i in range(params["instances"]):
        label, b = bundles[i % len(bundles)]
        e, m, k = b.total, b.base, b.fibre
        tb = tangents[label]
        xdim = rng.randint(1, 2)

        def rand(cod, dom=xdim):
            return random_polymap(dom, cod, deg, bound, rng, mode)

        xmap = rand(m)
        zero_dx = zero_map(xdim, m, mode)
        f = assemble_tangent(b, zero_dx, xmap, rand(k), rand(k))
        desc = f"{label}, instance {i}"
        with checks.guard("bracket-defining"):
            bf = bracket(f, b)
            recon = polymap_compose(
                pair_into_t_e2(
                    b,
                    polymap_compose(bf, b.lam),
                    polymap_compose(
                        f, polymap_compose(point_proj(e, mode), tangent_zero(e, mode))
                    ),
                ),
                cdc_T(b.sigma),
            )
            eq("bracket-defining", recon, f, desc)

            wdim = rng.randint(1, 2)
            kmap = random_polymap(wdim, xdim, deg, bound, rng, mode)
            eq(
                "bracket-precompose",
                polymap_compose(kmap, bf),
                bracket(polymap_compose(kmap, f), b),
                desc,
            )

            unit = trivial_bundle(m, mode)
            eq(
                "bracket-postcompose-linear",
                polymap_compose(bf, b.q),
                bracket(polymap_compose(f, cdc_T(b.q)), unit),
                desc + ", along (q, 1)",
            )
            eq(
                "bracket-postcompose-zero",
                polymap_compose(bf, tangent_zero(e, mode)),
                bracket(polymap_compose(f, cdc_T(tangent_zero(e, mode))), tb),
                desc + ", along (0_E, 0_M)",
            )

            eq(
                "bracket-over-base",
                polymap_compose(bf, b.q),
                polymap_compose(f, polymap_compose(cdc_T(b.q), point_proj(m, mode))),
                desc,
            )

            g = assemble_tangent(b, zero_dx, xmap, rand(k), rand(k))
            bg = bracket(g, b)
            eq(
                "bracket-sigma",
                polymap_compose(pair_into_e2(b, bf, bg), b.sigma),
                bracket(polymap_compose(pair_into_t_e2(b, f, g), cdc_T(b.sigma)), b),
                desc,
            )

            ashared = rand(k)
            f2 = assemble_tangent(b, zero_dx, xmap, rand(k), ashared)
            g2 = assemble_tangent(b, zero_dx, xmap, rand(k), ashared)
            plus_fg = polymap_compose(
                pair_into_t2_total(e, f2, g2, mode), tangent_plus(e, mode)
            )
            eq(
                "bracket-plus",
                polymap_compose(
                    pair_into_e2(b, bracket(f2, b), bracket(g2, b)), b.sigma
                ),
                bracket(plus_fg, b),
                desc,
            )

            eq(
                "bracket-tangent",
                cdc_T(bf),
                bracket(polymap_compose(cdc_T(f), cdc_flip(e, mode)), tb),
                desc,
            )

            f3 = assemble_tangent(
                b, zero_dx, xmap, rand(k), polymap_compose(xmap, _zeta_fibre(b))
            )
            eq(
                "bracket-section-form",
                polymap_compose(bracket(f3, b), b.lam),
                f3,
                desc + ", member with zeta point part",
            )

        y = polymap_compose(xmap, b.zeta)
        hyp = polymap_equal(
            polymap_compose(y, tangent_zero(e, mode)), polymap_compose(y, b.lam)
        )
        concl = polymap_equal(y, polymap_compose(polymap_compose(y, b.q), b.zeta))
        checks.condition("zero-lambda-forces-section", (not hyp) or concl, desc)
    return checks.report("bracket-laws", params)


# ---------------------------------------------------------------------------
# Interchange of fibre addition with tangent addition


def _suite_interchange(params: Dict[str, object]) -> Report:
    mode = params["mode"]
    checks = CheckSet()
    bundles = [
        standard_bundle(1, 1, mode),
        standard_bundle(2, 1, mode),
        tangent_bundle_of(1, mode),
    ]
    rng = rng_for("interchange", "instances", params["seed"])
    deg, bound = params["max_degree"], params["coeff_bound"]
    for i in range(params["instances"]):
        b = bundles[i % len(bundles)]
        m, k, e = b.base, b.fibre, b.total
        xdim = rng.randint(1, 2)

        def rand(cod):
            return random_polymap(xdim, cod, deg, bound, rng, mode)

        xmap = rand(m)
        dx12, dx34 = rand(m), rand(m)
        a13, a24 = rand(k), rand(k)
        da = [rand(k) for _ in range(4)]
        v1 = assemble_tangent(b, dx12, xmap, da[0], a13)
        v2 = assemble_tangent(b, dx12, xmap, da[1], a24)
        v3 = assemble_tangent(b, dx34, xmap, da[2], a13)
        v4 = assemble_tangent(b, dx34, xmap, da[3], a24)
        desc = f"instance {i}: base {m}, fibre {k}"
        with checks.guard("interchange"):
            s12 = polymap_compose(pair_into_t_e2(b, v1, v2), cdc_T(b.sigma))
            s34 = polymap_compose(pair_into_t_e2(b, v3, v4), cdc_T(b.sigma))
            lhs = polymap_compose(
                pair_into_t2_total(e, s12, s34, mode), tangent_plus(e, mode)
            )
            p13 = polymap_compose(
                pair_into_t2_total(e, v1, v3, mode), tangent_plus(e, mode)
            )
            p24 = polymap_compose(
                pair_into_t2_total(e, v2, v4, mode), tangent_plus(e, mode)
            )
            rhs = polymap_compose(pair_into_t_e2(b, p13, p24), cdc_T(b.sigma))
            checks.equality("interchange", lhs, rhs, desc, render=polymap_to_str)
        with checks.guard("interchange-shared-zero"):
            azero = polymap_compose(xmap, _zeta_fibre(b))
            zero_dx = zero_map(xdim, m, mode)
            w1 = assemble_tangent(b, zero_dx, xmap, da[0], azero)
            w2 = assemble_tangent(b, zero_dx, xmap, da[1], azero)
            checks.equality(
                "interchange-shared-zero",
                polymap_compose(pair_into_t_e2(b, w1, w2), cdc_T(b.sigma)),
                polymap_compose(
                    pair_into_t2_total(e, w1, w2, mode), tangent_plus(e, mode)
                ),
                desc,
                render=polymap_to_str,
            )
    return checks.report("interchange", params)


# ---------------------------------------------------------------------------
# Linearity of the constructor morphisms and the two characterizations


def _linear_fibre_map(m: int, k1: int, k2: int, rng: random.Random, deg: int, bound: int, mode: str) -> PolyMap:
    """F(x, a) = C(x) a with polynomial coefficients, fibrewise linear."""
    dom = m + k1
    comps = []
    for _ in range(k2):
        acc = Poly.zero(dom, mode)
        for j in range(k1):
            cpoly = random_polymap(m, 1, deg, bound, rng, mode).components[0]
            wide = poly_shift_vars(cpoly, 0, dom)
            acc = poly_add(acc, poly_mul(wide, Poly.variable(dom, m + j, mode)))
        comps.append(acc)
    return PolyMap(dom, k2, tuple(comps), mode)


def _suite_linearity(params: Dict[str, object]) -> Report:
    mode = params["mode"]
    seed = params["seed"]
    deg, bound = params["max_degree"], params["coeff_bound"]
    checks = CheckSet()
    families = [
        ("standard-1-1", standard_bundle(1, 1, mode)),
        ("standard-2-1", standard_bundle(2, 1, mode)),
        ("standard-1-2", standard_bundle(1, 2, mode)),
        ("tangent-1", tangent_bundle_of(1, mode)),
    ]
    trivials: Dict[int, DiffBundle] = {}
    tangent_cache: Dict[int, DiffBundle] = {}

    def trivial_over(m: int) -> DiffBundle:
        if m not in trivials:
            trivials[m] = trivial_bundle(m, mode)
        return trivials[m]

    def tangent_over(m: int) -> DiffBundle:
        if m not in tangent_cache:
            tangent_cache[m] = tangent_bundle_of(m, mode)
        return tangent_cache[m]

    def lin_rows(name: str, mor: BundleMor, src: DiffBundle, dst: DiffBundle, detail: str):
        with checks.guard(name):
            ok = is_linear(mor, src, dst)
            checks.condition(name, ok, detail)
            if ok:
                checks.condition(
                    "linear-implies-additive", is_additive(mor, src, dst), detail
                )
                checks.condition(
                    "linear-matches-mu-form", mu_characterization(mor, src, dst), detail
                )

    for label, b in families:
        unit = trivial_over(b.base)
        ident = identity_map(b.base, mode)
        lin_rows("projection-to-unit-linear", BundleMor(b.q, ident), b, unit, label)
        lin_rows("zero-section-linear", BundleMor(b.zeta, ident), unit, b, label)
        tb = tangent_of_bundle(b)
        lin_rows("bundle-projection-linear", bundle_projection_mor(b), tb, b, label)
        lin_rows("bundle-zero-linear", bundle_zero_mor(b), b, tb, label)

    rng = rng_for("linearity", "tangent-functor", seed)
    for i in range(params["instances"]):
        dn = rng.randint(1, 2)
        dm = rng.randint(1, 2)
        f = random_polymap(dn, dm, deg, bound, rng, mode)
        lin_rows(
            "tangent-functor-linear",
            BundleMor(cdc_T(f), f),
            tangent_over(dn),
            tangent_over(dm),
            f"instance {i}: f = {polymap_to_str(f)}",
        )

    rng = rng_for("linearity", "pullback", seed)
    b = dict(families)["standard-2-1"]
    for i in range(10):
        xdim = rng.randint(1, 2)
        f = random_polymap(xdim, b.base, deg, bound, rng, mode)
        pb = pullback_bundle(f, b)
        lin_rows(
            "pullback-cartesian-linear",
            pullback_mor(f, b, pb),
            pb,
            b,
            f"instance {i}: f = {polymap_to_str(f)}",
        )

    b1 = dict(families)["standard-1-1"]
    b2 = dict(families)["standard-1-2"]
    bs = whitney_sum(b1, b2)
    pr0 = whitney_proj(bs, b1, b2, 0)
    pr1 = whitney_proj(bs, b1, b2, 1)
    lin_rows("whitney-projection-linear", pr0, bs, b1, "first projection")
    lin_rows("whitney-projection-linear", pr1, bs, b2, "second projection")
    paired = whitney_pair(pr0, pr1, b1, b2, bs)
    lin_rows("whitney-pairing-linear", paired, bs, bs, "pairing of the projections")
    bs2 = whitney_sum(b2, b1)
    m, k1, k2 = 1, b1.fibre, b2.fibre
    swap = permutation_map(
        m + k1 + k2,
        list(range(m)) + list(range(m + k1, m + k1 + k2)) + list(range(m, m + k1)),
        mode,
    )
    swap_back = permutation_map(
        m + k1 + k2,
        list(range(m)) + list(range(m + k2, m + k1 + k2)) + list(range(m, m + k2)),
        mode,
    )
    ident = identity_map(m, mode)
    lin_rows("whitney-swap-linear", BundleMor(swap, ident), bs, bs2, "swap")
    lin_rows("whitney-swap-linear", BundleMor(swap_back, ident), bs2, bs, "swap inverse")

    rng = rng_for("linearity", "equivalence", seed)
    b_src = standard_bundle(1, 1, mode)
    for i in range(params["instances"]):
        g = random_polymap(1, 1, deg, bound, rng, mode)
        if i % 2 == 0:
            fib = _linear_fibre_map(1, 1, 1, rng, deg, bound, mode)
        else:
            fib = random_polymap(2, 1, deg, bound, rng, mode)
        f_total = polymap_pair(polymap_compose(polymap_proj(2, 0, 1, mode), g), fib)
        mor = BundleMor(f_total, g)
        lam_ok = is_linear(mor, b_src, b_src)
        mu_ok = mu_characterization(mor, b_src, b_src)
        detail = f"instance {i}: fibre part {polymap_to_str(fib)}; lift-form {lam_ok}, mu-form {mu_ok}"
        checks.condition("linearity-mu-equivalence", lam_ok == mu_ok, detail)
        if lam_ok:
            checks.condition(
                "linear-implies-additive", is_additive(mor, b_src, b_src), detail
            )

    a_sq = poly_mul(Poly.variable(2, 1, mode), Poly.variable(2, 1, mode))
    squaring = BundleMor(
        polymap_pair(
            polymap_proj(2, 0, 1, mode), PolyMap(2, 1, (a_sq,), mode)
        ),
        identity_map(1, mode),
    )
    checks.condition(
        "squaring-not-linear",
        not is_linear(squaring, b_src, b_src),
        "fibrewise squaring must fail the lift square",
    )
    checks.condition(
        "squaring-not-additive",
        not is_additive(squaring, b_src, b_src),
        "fibrewise squaring must fail additivity",
    )
    checks.condition(
        "squaring-not-mu-form",
        not mu_characterization(squaring, b_src, b_src),
        "fibrewise squaring must fail the mu characterization",
    )

    rng = rng_for("linearity", "diffobj", seed)
    for i in range(params["instances"]):
        k1 = rng.randint(1, 2)
        k2 = rng.randint(1, 2)
        if i % 2 == 0:
            comps = []
            for _ in range(k2):
                acc = Poly.zero(k1, mode)
                for j in range(k1):
                    cval = scalars.random_scalar(mode, rng, bound)
                    acc = poly_add(acc, poly_scale(Poly.variable(k1, j, mode), cval))
                comps.append(acc)
            f = PolyMap(k1, k2, tuple(comps), mode)
        else:
            f = random_polymap(k1, k2, deg, bound, rng, mode)
        o1 = canonical_diffobj(k1, mode)
        o2 = canonical_diffobj(k2, mode)
        d1 = bundle_from_diffobj(o1)
        d2 = bundle_from_diffobj(o2)
        mor = BundleMor(f, identity_map(0, mode))
        lam_ok = is_linear(mor, d1, d2)
        phat_ok = polymap_equal(
            polymap_compose(cdc_T(f), o2.phat), polymap_compose(o1.phat, f)
        )
        checks.condition(
            "diffobj-linearity-equivalence",
            lam_ok == phat_ok,
            f"instance {i}: f = {polymap_to_str(f)}; lift-form {lam_ok}, phat-form {phat_ok}",
        )
    return checks.report("linearity", params)


# ---------------------------------------------------------------------------
# Differential objects and Cartesian differential structure


def _suite_diffobj(params: Dict[str, object]) -> Report:
    mode = params["mode"]
    checks = CheckSet()
    for k in range(1, params["max_dim"] + 1):
        o = canonical_diffobj(k, mode)
        checks.absorb(verify_diffobj(o, f"canonical-{k}"), prefix=f"canonical-{k}:")
        b = bundle_from_diffobj(o)
        checks.absorb(verify_bundle(b, f"as-bundle-{k}"), prefix=f"as-bundle-{k}:")
        with checks.guard("roundtrip-through-bundle"):
            o2 = diffobj_from_bundle(b)
            same = (
                polymap_equal(o2.sigma, o.sigma)
                and polymap_equal(o2.zeta, o.zeta)
                and polymap_equal(o2.phat, o.phat)
            )
            checks.condition("roundtrip-through-bundle", same, f"dim {k}")
            checks.equality(
                "phat-is-first-projection",
                o2.phat,
                polymap_proj(2 * k, 0, k, mode),
                f"dim {k}",
                render=polymap_to_str,
            )
        checks.equality(
            "derived-identity",
            derived_D(identity_map(k, mode)),
            polymap_proj(2 * k, 0, k, mode),
            f"dim {k}",
            render=polymap_to_str,
        )
        const = constant_map(k, [scalars.coerce(mode, 3)] * k, mode)
        checks.equality(
            "derived-constant",
            derived_D(const),
            zero_map(2 * k, k, mode),
            f"dim {k}",
            render=polymap_to_str,
        )

    raised = False
    try:
        diffobj_from_bundle(standard_bundle(1, 1, mode))
    except PreconditionFailure:
        raised = True
    checks.condition("diffobj-needs-point-base", raised, "nonzero base must be rejected")

    with checks.guard("pullback-point-diffobj"):
        b = standard_bundle(2, 2, mode)
        pt = constant_map(0, [scalars.coerce(mode, 1), scalars.coerce(mode, 2)], mode)
        pb = pullback_bundle(pt, b)
        o = diffobj_from_bundle(pb)
        checks.absorb(verify_diffobj(o, "pullback-point"), prefix="pullback-point:")
    return checks.report("diffobj", params)


def _suite_cds(params: Dict[str, object]) -> Report:
    checks = CheckSet()
    checks.absorb(check_cds(params["max_dim"], params["mode"]))
    return checks.report("cds", params)


# ---------------------------------------------------------------------------
# The simple fibration


def _suite_fibration(params: Dict[str, object]) -> Report:
    mode = params["mode"]
    seed = params["seed"]
    deg, bound = params["max_degree"], params["coeff_bound"]
    checks = CheckSet()

    def eq(name, lhs, rhs, detail=""):
        checks.equality(name, lhs, rhs, detail, render=simple_str)

    def rand_obj(rng: random.Random) -> SimpleObj:
        return SimpleObj(rng.randint(0, 2), rng.randint(1, 2))

    def rand_mor(dom: SimpleObj, cod: SimpleObj, rng: random.Random) -> SimpleMor:
        f = random_polymap(dom.context, cod.context, deg, bound, rng, mode)
        g = random_polymap(dom.context + dom.payload, cod.payload, deg, bound, rng, mode)
        return SimpleMor(f, g)

    rng = rng_for("fibration", "composition", seed)
    for i in range(params["instances"]):
        o1, o2, o3, o4 = (rand_obj(rng) for _ in range(4))
        m1 = rand_mor(o1, o2, rng)
        m2 = rand_mor(o2, o3, rng)
        m3 = rand_mor(o3, o4, rng)
        desc = f"instance {i}: m1 = {simple_str(m1)}"
        eq(
            "compose-associative",
            simple_compose(simple_compose(m1, m2), m3),
            simple_compose(m1, simple_compose(m2, m3)),
            desc,
        )
        eq("compose-unit-left", simple_compose(simple_identity(o1, mode), m1), m1, desc)
        eq("compose-unit-right", simple_compose(m1, simple_identity(o2, mode)), m1, desc)

    rng = rng_for("fibration", "cd", seed)
    for i in range(min(params["instances"], 25)):
        v = rand_obj(rng)
        w = rand_obj(rng)
        o1 = rand_obj(rng)
        o2 = rand_obj(rng)
        f1 = rand_mor(w, o1, rng)
        f2 = rand_mor(w, o1, rng)
        g2 = rand_mor(w, o2, rng)
        h = rand_mor(o1, o2, rng)
        desc = f"instance {i}: f = {simple_str(f1)}"
        ww = simple_product(w, w)
        df1 = simple_D(f1)

        eq(
            "simple-cd1-additive",
            simple_D(simple_add(f1, f2)),
            simple_add(df1, simple_D(f2)),
            desc,
        )
        eq(
            "simple-cd1-zero",
            simple_D(simple_zero_mor(w, o1, mode)),
            simple_zero_mor(ww, o1, mode),
            desc,
        )

        a = rand_mor(v, w, rng)
        b = rand_mor(v, w, rng)
        cpt = rand_mor(v, w, rng)
        eq(
            "simple-cd2-additive",
            simple_compose(simple_pair(simple_add(a, b), cpt), df1),
            simple_add(
                simple_compose(simple_pair(a, cpt), df1),
                simple_compose(simple_pair(b, cpt), df1),
            ),
            desc,
        )
        eq(
            "simple-cd2-zero",
            simple_compose(
                simple_pair(simple_zero_mor(w, w, mode), simple_identity(w, mode)), df1
            ),
            simple_zero_mor(w, o1, mode),
            desc,
        )

        eq(
            "simple-cd3-identity",
            simple_D(simple_identity(w, mode)),
            simple_proj(w, w, 0, mode),
            desc,
        )
        prod = simple_product(o1, o2)
        for which in (0, 1):
            pi = simple_proj(o1, o2, which, mode)
            eq(
                "simple-cd3-projection",
                simple_D(pi),
                simple_compose(simple_proj(prod, prod, 0, mode), pi),
                desc + f", factor {which}",
            )

        eq(
            "simple-cd4-pairing",
            simple_D(simple_pair(f1, g2)),
            simple_pair(df1, simple_D(g2)),
            desc,
        )

        eq(
            "simple-cd5-chain",
            simple_D(simple_compose(f1, h)),
            simple_compose(
                simple_pair(df1, simple_compose(simple_proj(w, w, 1, mode), f1)),
                simple_D(h),
            ),
            desc,
        )

        ddf = simple_D(df1)
        pi0w = simple_proj(w, w, 0, mode)
        pi1w = simple_proj(w, w, 1, mode)
        zero_w = simple_zero_mor(ww, w, mode)
        inj = simple_pair(simple_pair(pi0w, zero_w), simple_pair(zero_w, pi1w))
        eq("simple-cd6-lift", simple_compose(inj, ddf), df1, desc)

        q0 = simple_compose(simple_proj(ww, ww, 0, mode), pi0w)
        q1 = simple_compose(simple_proj(ww, ww, 0, mode), pi1w)
        q2 = simple_compose(simple_proj(ww, ww, 1, mode), pi0w)
        q3 = simple_compose(simple_proj(ww, ww, 1, mode), pi1w)
        ex = simple_pair(simple_pair(q0, q2), simple_pair(q1, q3))
        eq("simple-cd7-symmetry", simple_compose(ex, ddf), ddf, desc)

    for ctx in (1, 2):
        rep = verify_fibre_axioms(ctx, 2, min(params["instances"], 25), seed, mode)
        checks.absorb(rep, prefix=f"fibre[{ctx}]:")

    rng = rng_for("fibration", "vertical", seed)
    for i in range(params["instances"]):
        # instance 0 pins the empty context so the context-free row always runs
        a = 0 if i == 0 else rng.randint(0, 2)
        x = rng.randint(1, 2)
        y = rng.randint(1, 2)
        z = rng.randint(1, 2)
        g1 = random_polymap(a + x, y, deg, bound, rng, mode)
        g2 = random_polymap(a + y, z, deg, bound, rng, mode)
        ident_a = identity_map(a, mode)
        m1 = SimpleMor(ident_a, g1)
        m2 = SimpleMor(ident_a, g2)
        desc = f"instance {i}: context {a}, g = {polymap_to_str(g1)}"
        eq(
            "vertical-functorial",
            vertical_T(a, simple_compose(m1, m2)),
            simple_compose(vertical_T(a, m1), vertical_T(a, m2)),
            desc,
        )
        obj = SimpleObj(a, x)
        eq(
            "vertical-identity",
            vertical_T(a, simple_identity(obj, mode)),
            simple_identity(SimpleObj(a, 2 * x), mode),
            desc,
        )
        vt = vertical_tangent_map(a, g1)
        if a == 0:
            checks.equality(
                "vertical-context-free", vt, cdc_T(g1), desc, render=polymap_to_str
            )
        dom = a + 2 * x
        inj = polymap_pair(
            zero_map(dom, a, mode),
            polymap_proj(dom, 0, a, mode),
            polymap_proj(dom, a, a + x, mode),
            polymap_proj(dom, a + x, dom, mode),
        )
        checks.equality(
            "vertical-vs-simple-d",
            polymap_compose(vt, polymap_proj(2 * y, 0, y, mode)),
            polymap_compose(inj, simple_D(m1).g),
            desc,
            render=polymap_to_str,
        )

    raised = False
    try:
        vertical_T(1, SimpleMor(zero_map(1, 1, mode), random_polymap(2, 1, deg, bound, 7, mode)))
    except PreconditionFailure:
        raised = True
    checks.condition(
        "vertical-requires-identity", raised, "non-identity context part must be refused"
    )
    return checks.report("fibration", params)


# ---------------------------------------------------------------------------
# Monad laws for the tangent addition


def _suite_monad_laws(params: Dict[str, object]) -> Report:
    model = poly_model(params["mode"], params["fault"])
    checks = CheckSet()

    def eq(name, lhs, rhs, detail=""):
        checks.equality(name, lhs, rhs, detail, render=model.mor_str)

    for m in range(1, params["max_dim"] + 1):
        d = f"dim {m}"
        tm = model.t_obj(m)
        mu = monad_mult(model, m)
        eq("monad-unit-zero", model.compose(model.zero(tm), mu), model.identity(tm), d)
        eq(
            "monad-unit-tangent-zero",
            model.compose(model.t_mor(model.zero(m)), mu),
            model.identity(tm),
            d,
        )
        eq(
            "monad-associative",
            model.compose(model.t_mor(mu), mu),
            model.compose(monad_mult(model, tm), mu),
            d,
        )
        eq(
            "monad-over-point",
            model.compose(mu, model.p(m)),
            model.compose(model.p(tm), model.p(m)),
            d + ", via p_T",
        )
        eq(
            "monad-over-point",
            model.compose(mu, model.p(m)),
            model.compose(model.t_mor(model.p(m)), model.p(m)),
            d + ", via T(p)",
        )
    rng = rng_for("monad-laws", "naturality", params["seed"])
    for i in range(params["instances"]):
        dx = rng.randint(1, params["max_dim"])
        dy = rng.randint(1, params["max_dim"])
        f = model.random_mor(dx, dy, rng, params["max_degree"], params["coeff_bound"])
        desc = f"instance {i}: f = {model.mor_str(f)}"
        eq(
            "monad-naturality",
            model.compose(model.t_mor(model.t_mor(f)), monad_mult(model, dy)),
            model.compose(monad_mult(model, dx), model.t_mor(f)),
            desc,
        )
    return checks.report("monad-laws", params)


# ---------------------------------------------------------------------------
# Numeric consistency of the dual-number evaluator


def _suite_numeric_consistency(params: Dict[str, object]) -> Report:
    checks = CheckSet()
    seed = params["seed"]
    deg, bound = params["max_degree"], params["coeff_bound"]

    rng = rng_for("numeric-consistency", "dual-vs-symbolic", seed)
    for i in range(params["instances"]):
        m = rng.randint(1, params["max_dim"])
        n = rng.randint(1, 2)
        f = random_polymap(m, n, deg, bound, rng, scalars.RATIONAL)
        prog = NumericProgram.from_polymap(f)
        df = cdc_D(f)
        for j in range(100):
            point = [rng.uniform(-2.0, 2.0) for _ in range(m)]
            direction = [rng.uniform(-2.0, 2.0) for _ in range(m)]
            _, tangents = dual_eval(prog, point, direction)
            exact_arg = [Fraction(c) for c in direction] + [Fraction(c) for c in point]
            exact = eval_polymap(df, exact_arg)
            for t, ex in zip(tangents, exact):
                err = abs(t - float(ex)) / max(1.0, abs(float(ex)))
                checks.numeric(
                    "dual-vs-symbolic", err, 1e-9, f"instance {i}, point {j}"
                )

    rng = rng_for("numeric-consistency", "fd-vs-dual", seed)
    for i in range(params["instances"]):
        m = rng.randint(1, params["max_dim"])
        n = rng.randint(1, 2)
        f = random_polymap(m, n, deg, bound, rng, scalars.RATIONAL)
        prog = NumericProgram.from_polymap(f)
        for j in range(5):
            point = [rng.uniform(-1.5, 1.5) for _ in range(m)]
            direction = [rng.uniform(-1.5, 1.5) for _ in range(m)]
            err = fd_check(prog, point, direction)
            checks.numeric("fd-vs-dual", err, 1e-5, f"instance {i}, point {j}")

    rng = rng_for("numeric-consistency", "affine", seed)
    for i in range(10):
        m = rng.randint(1, 3)
        comps = []
        for _ in range(m):
            acc = Poly.constant(m, Fraction(rng.randint(-bound, bound)), scalars.RATIONAL)
            for v in range(m):
                acc = poly_add(
                    acc,
                    poly_scale(
                        Poly.variable(m, v, scalars.RATIONAL),
                        Fraction(rng.randint(-bound, bound)),
                    ),
                )
            comps.append(acc)
        prog = NumericProgram.from_polymap(PolyMap(m, m, tuple(comps), scalars.RATIONAL))
        point = [rng.uniform(-2.0, 2.0) for _ in range(m)]
        direction = [rng.uniform(-2.0, 2.0) for _ in range(m)]
        err = fd_check(prog, point, direction)
        checks.numeric("affine-fd-tight", err, 1e-8, f"instance {i}")

    rng = rng_for("numeric-consistency", "degenerate", seed)
    for i in range(10):
        m = rng.randint(1, 3)
        f = random_polymap(m, 2, deg, bound, rng, scalars.RATIONAL)
        prog = NumericProgram.from_polymap(f)
        point = [rng.uniform(-2.0, 2.0) for _ in range(m)]
        _, tangents = dual_eval(prog, point, [0.0] * m)
        checks.condition(
            "zero-direction-zero-tangent",
            all(t == 0.0 for t in tangents),
            f"instance {i}",
        )
        cprog = NumericProgram.from_polymap(
            constant_map(m, [Fraction(5), Fraction(-7)], scalars.RATIONAL)
        )
        direction = [rng.uniform(-2.0, 2.0) for _ in range(m)]
        _, ctans = dual_eval(cprog, point, direction)
        checks.condition(
            "constant-zero-tangent", all(t == 0.0 for t in ctans), f"instance {i}"
        )
    return checks.report("numeric-consistency", params)


# ---------------------------------------------------------------------------
# Registry


_SUITES: Dict[str, Callable[[Dict[str, object]], Report]] = {
    "tangent-axioms": _suite_tangent_axioms,
    "cdc-axioms": _suite_cdc_axioms,
    "derived-differential": _suite_derived_differential,
    "bundle": _suite_bundle,
    "bracket-laws": _suite_bracket_laws,
    "interchange": _suite_interchange,
    "linearity": _suite_linearity,
    "diffobj": _suite_diffobj,
    "cds": _suite_cds,
    "fibration": _suite_fibration,
    "monad-laws": _suite_monad_laws,
    "numeric-consistency": _suite_numeric_consistency,
}

SUITE_NAMES = tuple(sorted(_SUITES))


def run_suite(name: str, **overrides) -> Report:
    """Run a named suite; raises ValueError for unknown names or parameters."""
    if name not in _SUITES:
        raise ValueError(
            f"unknown-suite: {name!r}; choose from {', '.join(SUITE_NAMES)}"
        )
    params = dict(DEFAULTS)
    for key, value in overrides.items():
        if key not in DEFAULTS:
            raise ValueError(f"invalid-params: unknown parameter {key!r}")
        if value is None:
            continue
        params[key] = value
    if params["mode"] not in scalars.MODES:
        raise ValueError(f"invalid-params: unknown mode {params['mode']!r}")
    for key in ("max_dim", "max_degree", "instances", "coeff_bound"):
        value = params[key]
        if not isinstance(value, int) or value < 1:
            raise ValueError(f"invalid-params: {key} must be a positive integer")
    if not isinstance(params["seed"], int):
        raise ValueError("invalid-params: seed must be an integer")
    fault = params["fault"]
    if fault is not None:
        if fault not in FAULTS:
            raise ValueError(
                f"invalid-params: unknown fault {fault!r}; choose from {', '.join(FAULTS)}"
            )
        if name in _MODEL_FAULT_SUITES:
            applicable = fault in ("identity-flip", "dropped-zero-block")
        elif name in _BUNDLE_FAULT_SUITES:
            applicable = fault == "corrupted-lambda"
        else:
            applicable = False
        if not applicable:
            raise ValueError(
                f"invalid-params: fault {fault!r} does not affect suite {name!r}"
            )
    return _SUITES[name](params)
