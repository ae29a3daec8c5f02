"""Differential objects: bundles over the point and the derived differential."""

from fractions import Fraction
from random import Random

import pytest

from tancat import scalars
from tancat.bundles import pullback_bundle, standard_bundle, verify_bundle
from tancat.cdc import cdc_D, cdc_T, cdc_flip, point_proj
from tancat.diffobj import (
    DiffObject,
    bundle_from_diffobj,
    canonical_diffobj,
    check_cds,
    derived_D,
    diffobj_from_bundle,
    diffobj_lambda,
    diffobj_mu,
    exchange_map,
    interleave,
    interleave_inv,
    product_pairing,
    verify_diffobj,
)
from tancat.errors import PreconditionFailure
from tancat.parser import parse_polymap
from tancat.poly import (
    constant_map,
    identity_map,
    polymap_compose,
    polymap_proj,
    polymap_to_str,
    random_polymap,
    zero_map,
)


def test_canonical_phat_is_tangent_projection():
    for k in (1, 2, 3):
        o = canonical_diffobj(k)
        assert o.carrier == k
        assert o.phat == polymap_proj(2 * k, 0, k, scalars.RATIONAL)
        assert verify_diffobj(o).all_passed


def test_lambda_from_phat_satisfies_section_laws():
    for k in (1, 2):
        o = canonical_diffobj(k)
        lam = diffobj_lambda(o)
        assert polymap_compose(lam, o.phat) == identity_map(k, o.mode)
        p = point_proj(k, o.mode)
        want_zero = zero_map(k, k, o.mode)
        assert polymap_compose(lam, p) == want_zero


def test_roundtrip_through_bundle():
    for k in (1, 2):
        o = canonical_diffobj(k)
        b = bundle_from_diffobj(o)
        assert (b.base, b.fibre) == (0, k)
        assert verify_bundle(b).all_passed
        back = diffobj_from_bundle(b)
        assert (back.sigma, back.zeta, back.phat) == (o.sigma, o.zeta, o.phat)


def test_diffobj_requires_point_base():
    b = standard_bundle(1, 1)
    with pytest.raises(PreconditionFailure):
        diffobj_from_bundle(b)


def test_pullback_along_point_yields_diffobj():
    b = standard_bundle(1, 1)
    point = constant_map(0, [Fraction(2)], scalars.RATIONAL)
    fibre_at_2 = pullback_bundle(point, b)
    o = diffobj_from_bundle(fibre_at_2)
    assert o.carrier == 1
    assert verify_diffobj(o).all_passed


def test_derived_d_square():
    f = parse_polymap("x0^2", 1, scalars.RATIONAL)
    d = derived_D(f)
    assert polymap_to_str(d) == "2*x0*x1"
    assert d == cdc_D(f)


def test_derived_d_identity_and_constant():
    one = identity_map(2, scalars.RATIONAL)
    assert derived_D(one) == polymap_proj(4, 0, 2, scalars.RATIONAL)
    const = constant_map(2, [Fraction(3), Fraction(0)], scalars.RATIONAL)
    assert derived_D(const) == zero_map(4, 2, scalars.RATIONAL)


def test_derived_d_agrees_with_combinator_everywhere():
    rng = Random(77)
    for mode in scalars.MODES:
        for _ in range(20):
            f = random_polymap(rng.randint(1, 3), rng.randint(1, 3), 3, 5, rng, mode)
            assert derived_D(f) == cdc_D(f)


def test_flip_transports_phat():
    # the tangent of a differential object carries p-hat = c;T(p-hat)
    lhs = polymap_compose(
        cdc_flip(1, scalars.RATIONAL), cdc_T(canonical_diffobj(1).phat)
    )
    assert lhs == canonical_diffobj(2).phat


def test_product_pairing_shape():
    o = canonical_diffobj(1)
    assert polymap_to_str(product_pairing(o)) == "x0; x1"


def test_interleave_roundtrip():
    for k1, k2 in ((1, 1), (1, 2), (2, 3)):
        fwd = interleave(k1, k2, scalars.RATIONAL)
        back = interleave_inv(k1, k2, scalars.RATIONAL)
        n = 2 * (k1 + k2)
        assert polymap_compose(fwd, back) == identity_map(n, scalars.RATIONAL)
        assert polymap_compose(back, fwd) == identity_map(n, scalars.RATIONAL)


def test_exchange_is_involutive():
    for k in (1, 2):
        ex = exchange_map(k, scalars.RATIONAL)
        assert polymap_compose(ex, ex) == identity_map(4 * k, scalars.RATIONAL)
    assert polymap_to_str(exchange_map(1, scalars.RATIONAL)) == "x0; x2; x1; x3"


def test_diffobj_mu_reads_both_tangents():
    o = canonical_diffobj(1)
    assert polymap_to_str(diffobj_mu(o)) == "x0; x1"


def test_cds_canonical_passes_and_corrupted_fails():
    good = check_cds(2, scalars.RATIONAL)
    assert good.all_passed

    def bad_phat(k):
        return polymap_proj(2 * k, k, 2 * k, scalars.RATIONAL)

    bad = check_cds(2, scalars.RATIONAL, phat_for=bad_phat)
    names = {c.name for c in bad.checks if c.status != "pass"}
    assert "product-witness" in names
