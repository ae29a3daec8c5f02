"""Differential bundles: constructors, verification, brackets, morphisms.

Layout reminders for the frozen strings below: totals of constructor
bundles are base-first (x, a); tangents are tangent-first, so T(E) reads
(du, dx-ish tangent block, then the point).  E_2 is (x, a1, a2).
"""

from random import Random

import pytest

from tancat import scalars
from tancat.bundles import (
    BundleMor,
    bracket,
    bundle_pi,
    bundle_projection_mor,
    bundle_zero_mor,
    is_additive,
    is_bundle_morphism,
    is_linear,
    make_bundle,
    mu_characterization,
    mu_map,
    pair_into_e2,
    parse_bundle_text,
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
from tancat.cdc import cdc_T, point_proj
from tancat.errors import (
    DimensionMismatch,
    NotABundleMorphism,
    PreconditionFailure,
)
from tancat.parser import parse_polymap
from tancat.poly import (
    identity_map,
    polymap_compose,
    polymap_to_str,
    random_polymap,
    zero_map,
)


def failing_names(report):
    return {c.name for c in report.checks if c.status != "pass"}


# ------------------------------------------------------------ constructors

def test_standard_bundle_frozen_maps():
    b = standard_bundle(1, 1)
    assert polymap_to_str(b.q) == "x0"
    assert polymap_to_str(b.sigma) == "x0; x1 + x2"
    assert polymap_to_str(b.zeta) == "x0; 0"
    assert polymap_to_str(b.lam) == "0; x1; x0; 0"


def test_trivial_bundle_is_identity_data():
    t = trivial_bundle(2)
    assert t.fibre == 0 and t.total == 2
    assert t.q == identity_map(2, scalars.RATIONAL)
    assert t.sigma == identity_map(2, scalars.RATIONAL)
    assert t.zeta == identity_map(2, scalars.RATIONAL)
    # lift degenerates to the zero section of T
    assert polymap_to_str(t.lam) == "0; 0; x0; x1"
    assert mu_map(t) == t.lam


def test_constructor_bundles_verify():
    for b in (
        trivial_bundle(1),
        trivial_bundle(3),
        standard_bundle(1, 1),
        standard_bundle(2, 1),
        standard_bundle(1, 2),
        tangent_bundle_of(1),
        tangent_bundle_of(2),
    ):
        rep = verify_bundle(b)
        assert rep.all_passed, failing_names(rep)


def test_constructor_bundles_verify_natural_mode():
    for b in (
        trivial_bundle(2, scalars.NATURAL),
        standard_bundle(1, 1, scalars.NATURAL),
        tangent_bundle_of(1, scalars.NATURAL),
    ):
        assert verify_bundle(b).all_passed


def test_tangent_bundle_of_object_is_tangent_structure():
    tb = tangent_bundle_of(1)
    assert tb.base == 1 and tb.fibre == 1
    assert polymap_to_str(tb.q) == "x1"  # point projection of (u, x)
    assert polymap_to_str(tb.lam) == "x0; 0; 0; x1"  # the vertical lift


def test_mu_map_frozen_and_derived_identities():
    b = standard_bundle(1, 1)
    mu = mu_map(b)
    assert polymap_to_str(mu) == "0; x1; x0; x2"
    # mu;p = pi1 and <1, q zeta>;mu = lambda
    p_e = point_proj(b.total, b.mode)
    assert polymap_compose(mu, p_e) == bundle_pi(b, 1)
    one_qzeta = pair_into_e2(
        b, identity_map(b.total, b.mode), polymap_compose(b.q, b.zeta)
    )
    assert polymap_compose(one_qzeta, mu) == b.lam


def test_corrupted_lambda_fails_zeta_square():
    base = standard_bundle(1, 1)
    lam = parse_polymap("0; x1; x0; x1", 2, scalars.RATIONAL)
    bad = make_bundle(1, 1, base.sigma, base.zeta, lam, None, scalars.RATIONAL)
    rep = verify_bundle(bad)
    bad_rows = failing_names(rep)
    assert "lambda-zeta-square" in bad_rows
    assert "universality-left" in bad_rows
    assert "sigma-over-base" not in bad_rows


def test_make_bundle_rejects_fake_trivialization():
    b = standard_bundle(1, 1)
    swap = parse_polymap("x1; x0", 2, scalars.RATIONAL)
    with pytest.raises(PreconditionFailure):
        make_bundle(1, 1, b.sigma, b.zeta, b.lam, (swap, identity_map(2, b.mode)), b.mode)


# ----------------------------------------------------------------- bracket

def test_bracket_of_structure_maps():
    for b in (standard_bundle(1, 1), standard_bundle(2, 1), tangent_bundle_of(1)):
        assert bracket(b.lam, b) == identity_map(b.total, b.mode)
        zero_e = polymap_compose(b.q, polymap_compose(b.zeta, b.lam))
        # {0_E} = q;zeta, where 0_E is the vertical zero q;zeta;lambda
        assert bracket(zero_e, b) == polymap_compose(b.q, b.zeta)
        assert bracket(mu_map(b), b) == bundle_pi(b, 0)


def test_bracket_constant_example():
    # fibre R over the point: f constant at tangent 3 over 0 pulls back to 3
    b = standard_bundle(0, 1)
    f = parse_polymap("3; 0", 1, scalars.RATIONAL)
    assert polymap_to_str(bracket(f, b)) == "3"


def test_bracket_section_example():
    b = standard_bundle(1, 1)
    f = parse_polymap("0; x0^2; x0; x0", 1, scalars.RATIONAL)
    assert polymap_to_str(bracket(f, b)) == "x0; x0^2"


def test_bracket_rejects_non_equalizer_input():
    b = standard_bundle(1, 1)
    f = parse_polymap("x0; x0^2; x0; x0", 1, scalars.RATIONAL)
    with pytest.raises(PreconditionFailure):
        bracket(f, b)
    with pytest.raises(DimensionMismatch):
        bracket(parse_polymap("x0; x0", 1, scalars.RATIONAL), b)


# --------------------------------------------------------------- morphisms

def test_projection_to_unit_is_linear():
    b = standard_bundle(2, 1)
    unit = trivial_bundle(2)
    mor = BundleMor(b.q, identity_map(2, b.mode))
    assert is_linear(mor, b, unit)
    assert is_additive(mor, b, unit)
    assert mu_characterization(mor, b, unit)


def test_tangent_functor_morphisms_are_linear():
    rng = Random(23)
    for _ in range(10):
        n, m = rng.randint(1, 2), rng.randint(1, 2)
        f = random_polymap(n, m, 3, 5, rng, scalars.RATIONAL)
        mor = BundleMor(cdc_T(f), f)
        assert is_linear(mor, tangent_bundle_of(n), tangent_bundle_of(m))
        assert is_additive(mor, tangent_bundle_of(n), tangent_bundle_of(m))


def test_fibrewise_squaring_is_not_linear():
    b = standard_bundle(1, 1)
    sq = parse_polymap("x0; x1^2", 2, scalars.RATIONAL)
    mor = BundleMor(sq, identity_map(1, scalars.RATIONAL))
    assert is_bundle_morphism(mor, b, b)
    assert not is_linear(mor, b, b)
    assert not is_additive(mor, b, b)
    assert not mu_characterization(mor, b, b)


def test_non_morphism_square_is_rejected():
    b = standard_bundle(1, 1)
    bad = BundleMor(parse_polymap("x1; x0", 2, scalars.RATIONAL),
                    identity_map(1, scalars.RATIONAL))
    with pytest.raises(NotABundleMorphism):
        is_linear(bad, b, b)


def test_projection_and_zero_constructor_morphisms():
    b = standard_bundle(2, 1)
    t = tangent_of_bundle(b)
    proj = bundle_projection_mor(b)
    assert is_linear(proj, t, b)
    z = bundle_zero_mor(b)
    assert is_linear(z, b, t)


# ------------------------------------------------- derived constructions

def test_tangent_of_bundle_verifies():
    for b in (standard_bundle(1, 1), standard_bundle(1, 2), tangent_bundle_of(1)):
        tb = tangent_of_bundle(b)
        assert tb.base == 2 * b.base and tb.fibre == 2 * b.fibre
        rep = verify_bundle(tb)
        assert rep.all_passed, failing_names(rep)


def test_tangent_of_trivial_has_zero_fibre():
    t = tangent_of_bundle(trivial_bundle(2))
    assert t.fibre == 0 and t.base == 4
    assert verify_bundle(t).all_passed


def test_pullback_along_identity_is_same_data():
    b = standard_bundle(1, 2)
    pb = pullback_bundle(identity_map(1, b.mode), b)
    assert (pb.sigma, pb.zeta, pb.lam) == (b.sigma, b.zeta, b.lam)


def test_pullback_preserves_fibre_shape():
    b = standard_bundle(1, 1)
    f = parse_polymap("x0^2", 1, scalars.RATIONAL)
    pb = pullback_bundle(f, b)
    assert (pb.base, pb.fibre) == (1, 1)
    assert (pb.sigma, pb.zeta, pb.lam) == (b.sigma, b.zeta, b.lam)
    assert verify_bundle(pb).all_passed
    assert is_linear(pullback_mor(f, b, pb), pb, b)


def test_pullback_verifies_along_random_maps():
    rng = Random(40)
    for b in (standard_bundle(1, 1), standard_bundle(2, 1)):
        for _ in range(5):
            f = random_polymap(rng.randint(1, 2), b.base, 3, 5, rng, b.mode)
            pb = pullback_bundle(f, b)
            assert verify_bundle(pb).all_passed
            assert is_linear(pullback_mor(f, b, pb), pb, b)


def test_whitney_sum_shapes_and_projections():
    b1 = standard_bundle(1, 1)
    b2 = standard_bundle(1, 2)
    s = whitney_sum(b1, b2)
    assert s.fibre == 3 and s.base == 1
    assert verify_bundle(s).all_passed
    for which, target in ((0, b1), (1, b2)):
        assert is_linear(whitney_proj(s, b1, b2, which), s, target)


def test_whitney_unit_is_identity_on_data():
    b = standard_bundle(1, 1)
    s = whitney_sum(b, trivial_bundle(1))
    assert (s.base, s.fibre) == (b.base, b.fibre)
    assert (s.sigma, s.zeta, s.lam) == (b.sigma, b.zeta, b.lam)


def test_whitney_pairing_recovers_components():
    b1 = standard_bundle(1, 1)
    b2 = standard_bundle(1, 1)
    s = whitney_sum(b1, b2)
    t = tangent_bundle_of(1)
    m1 = BundleMor(cdc_T(identity_map(1, scalars.RATIONAL)), identity_map(1, scalars.RATIONAL))
    # two linear maps t -> b_i with the same base map pair into the sum
    f1 = BundleMor(parse_polymap("x1; x0", 2, scalars.RATIONAL), identity_map(1, scalars.RATIONAL))
    f2 = BundleMor(parse_polymap("x1; 2*x0", 2, scalars.RATIONAL), identity_map(1, scalars.RATIONAL))
    paired = whitney_pair(f1, f2, b1, b2, s)
    for which, f in ((0, f1), (1, f2)):
        back = polymap_compose(paired.f, whitney_proj(s, b1, b2, which).f)
        assert back == f.f


def test_whitney_rejects_base_mismatch():
    with pytest.raises(DimensionMismatch):
        whitney_sum(standard_bundle(1, 1), standard_bundle(2, 1))


def test_whitney_pair_needs_shared_base_map():
    b1 = standard_bundle(1, 1)
    s = whitney_sum(b1, b1)
    f1 = BundleMor(parse_polymap("x1; x0", 2, scalars.RATIONAL), identity_map(1, scalars.RATIONAL))
    f2 = BundleMor(parse_polymap("0; x0", 1, scalars.RATIONAL), zero_map(1, 1, scalars.RATIONAL))
    with pytest.raises(PreconditionFailure):
        whitney_pair(f1, f2, b1, b1, s)


# --------------------------------------------------------------- text form

BUNDLE_TEXT = """
[bundle]
base = 1
fibre = 1
sigma = x0; x1 + x2
zeta = x0; 0
lambda = 0; x1; x0; 0
"""


def test_parse_bundle_text_roundtrip():
    b = parse_bundle_text(BUNDLE_TEXT)
    ref = standard_bundle(1, 1)
    assert (b.sigma, b.zeta, b.lam) == (ref.sigma, ref.zeta, ref.lam)
    assert verify_bundle(b).all_passed


def test_parse_bundle_text_natural_mode():
    b = parse_bundle_text(BUNDLE_TEXT + "mode = natural\n")
    assert b.mode == scalars.NATURAL


def test_parse_bundle_text_errors():
    with pytest.raises(PreconditionFailure):
        parse_bundle_text("[other]\nx = 1\n")
    with pytest.raises(PreconditionFailure):
        parse_bundle_text(BUNDLE_TEXT + "triv = x0; x1\n")
