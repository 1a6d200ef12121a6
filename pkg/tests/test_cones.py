from fractions import Fraction as F

import pytest

from kmroots import cones
from kmroots.errors import NotRealRoot, NotSymmetrizable, WJNotFinite
from kmroots.fixtures import gcm
from kmroots.roots import enumerate_roots, slice_In


def db(name, H=20):
    return enumerate_roots(gcm(name), H)


def test_convex_member_examples():
    c = cones.convex_member((1, 1), [(0, 1), (2, 1)])
    assert c.feasible and c.coefficients == (F(1, 2), F(1, 2))
    c = cones.convex_member((2, 1), [(0, 1), (2, 1)])
    assert c.feasible and c.coefficients == (0, 1)
    gens = [(0, 1, 0), (0, 1, 1), (1, 1, 1)]
    c = cones.convex_member((1, 1, 0), gens)
    assert not c.feasible
    assert cones.verify_certificate(c, (1, 1, 0), gens, convex=True)


def test_cone_member_examples():
    a3 = db("A3")
    gens = sorted(slice_In(a3, ["2"], 1))
    assert cones.cone_member((3, 0, 3), [(1, 0, 1)]).feasible
    c = cones.cone_member((1, 2, 1), gens)
    assert c.feasible and cones.verify_certificate(c, (1, 2, 1), gens, convex=False)
    c = cones.cone_member((1, 0, 0), gens)
    assert not c.feasible and cones.verify_certificate(c, (1, 0, 0), gens, convex=False)


def test_empty_generator_lists():
    assert not cones.convex_member((0, 0), []).feasible
    assert cones.cone_member((0, 0), []).feasible
    c = cones.cone_member((1, 0), [])
    assert not c.feasible and cones.verify_certificate(c, (1, 0), [], convex=False)


def test_extremal_examples():
    gens = sorted(slice_In(db("A3"), ["2"], 1))
    assert cones.extremal_ray_check((1, 1, 0), gens).extremal
    chk = cones.extremal_ray_check((1, 1), [(0, 1), (1, 1), (2, 1)])
    assert not chk.extremal
    assert chk.certificate.coefficients == (F(1, 2), F(1, 2))
    assert cones.extremal_ray_check((1, 2), [(1, 2)]).extremal
    # positive multiples of the candidate are not other generators
    assert cones.extremal_ray_check((1, 2), [(2, 4), (1, 2)]).extremal


def test_proportional():
    assert cones.proportional((1, 2), (2, 4))
    assert not cones.proportional((1, 2), (-1, -2))
    assert not cones.proportional((1, 2), (1, 3))
    assert not cones.proportional((0, 0), (1, 0))


def test_rescaling_invariance():
    gens = [(0, 1), (2, 1), (1, 3)]
    scaled = [tuple(F(k + 2, 3) * x for x in g) for k, g in enumerate(gens)]
    for t in [(1, 1), (5, 2), (-1, 0), (0, 0)]:
        assert cones.cone_member(t, gens).feasible == cones.cone_member(t, scaled).feasible


def test_slice_generator_examples():
    r = cones.lemma61_check(db("A3"), ["2"], 1)
    assert r.ok and r.generators == r.slice_elements and not r.interior
    r = cones.lemma61_check(db("B2"), ["2"], 1)
    assert r.ok and r.generators == {(0, 1), (2, 1)} and r.interior == {(1, 1)}
    r = cones.lemma61_check(db("A3"), ["2"], 2)
    assert r.slice_elements == frozenset() and r.generators == frozenset() and r.ok


def test_slice_generators_more_systems():
    for name, I in (("G2", ["2"]), ("G2", ["1"]), ("A3", ["1", "3"]), ("B2", ["1"])):
        assert cones.lemma61_check(db(name), I, 1).ok, (name, I)


def test_length_bound_examples():
    r = cones.lemma65_check(db("A1(1)"), (1, 0), ["2"])
    assert r.ok
    assert r.lengths == {(1, 0): 2, (1, 1): 0, (1, 2): 2}
    assert r.witnesses[(1, 2)] == ("2",)
    r = cones.lemma65_check(db("A3"), (0, 1, 0), ["1", "3"])
    assert r.ok and set(r.witnesses) == {(0, 1, 0), (1, 1, 0), (0, 1, 1), (1, 1, 1)}


def test_orbit_equivalence_examples():
    r = cones.cor66_check(db("A1(1)"), (1, 0), ["2"])
    assert r.consistent and not r.equals_orbit and not r.all_real
    r = cones.cor66_check(db("A3"), (0, 1, 0), ["1", "3"])
    assert r.consistent and r.equals_orbit
    r = cones.cor66_check(db("B2"), (0, 1), ["1"])
    assert r.consistent and not r.equals_orbit and r.all_real and not r.alpha_shortest


def test_length_bound_errors():
    with pytest.raises(NotRealRoot):
        cones.lemma65_check(db("A1(1)"), (1, 1), [])
    from kmroots.cartan import validate_gcm
    from kmroots.roots import enumerate_roots as er

    g = validate_gcm([[2, -1, -1], [-2, 2, -1], [-1, -1, 2]])
    with pytest.raises(NotSymmetrizable):
        cones.lemma65_check(er(g, 4), (1, 0, 0), ["2"])


def test_P_member_examples():
    a2, d = gcm("A2"), db("A2")
    assert cones.P_lambdaJ_member(a2, d, (1, 1), ["1"], (0, 0)).feasible
    assert not cones.P_lambdaJ_member(a2, d, (1, 1), ["1"], (0, -1)).feasible
    # s1 sends λ - 2α1 to λ + α1, so the point lies outside
    c = cones.P_lambdaJ_member(a2, d, (1, 1), ["1"], (2, 0))
    assert not c.feasible
    assert cones.P_lambdaJ_member(a2, d, (1, 1), ["1"], (1, 3)).feasible


def test_P_member_certificates_check_out():
    a2, d = gcm("A2"), db("A2")
    shape = cones.build_shape(a2, d, (1, 1), ["1"])
    for p in [(0, 0), (1, 0), (2, 0), (F(1, 2), F(1, 3)), (3, 1), (-1, 2)]:
        cert = cones.shape_member(shape, p)
        if cert.feasible:
            k = len(shape.vertices)
            lam, mu = cert.coefficients[:k], cert.coefficients[k:]
            total = [sum(l * v[i] for l, v in zip(lam, shape.vertices)) + sum(m * r[i] for m, r in zip(mu, shape.rays)) for i in range(2)]
            assert tuple(total) == tuple(F(x) for x in p) and sum(lam) == 1
        else:
            assert cones._infeasible_ok(shape, tuple(F(x) for x in p), cert)


def test_orbit_characterization_examples():
    a2, d = gcm("A2"), db("A2")
    grid = [(F(a, 2), F(b, 2)) for a in range(-2, 7) for b in range(-2, 7)]
    assert cones.propA1_check(a2, d, (1, 1), [], grid).ok
    r = cones.propA1_check(a2, d, (1, 1), ["1"], [(F(3, 2), 0), (0, 0)])
    assert r.ok and r.inside == 1
    with pytest.raises(WJNotFinite):
        cones.propA1_check(gcm("A1(1)"), db("A1(1)"), (1, 1), ["1", "2"], [(0, 0)])


def test_maximal_property():
    a3, d = gcm("A3"), db("A3")
    seeds = [(F(a, 2), F(b, 2), F(c, 2)) for a in range(0, 5) for b in range(0, 5) for c in range(0, 5)]
    assert cones.maximal_property_check(a3, d, (1, 0, 1), ["1", "2"], seeds)


def test_extremal_rays_examples():
    a2, d = gcm("A2"), db("A2")
    r = cones.extremal_rays_P(a2, d, (1, 1), ["1"])
    assert r.ok and r.J0 == frozenset()
    assert r.certified == {((0, 0), (0, 1)), ((1, 0), (1, 1))}
    assert any(w.kind == "step-2 ray" and w.ray == (1, 1) and w.valid for w in r.witnesses)
    r = cones.extremal_rays_P(a2, d, (1, 1), [])
    assert r.ok and r.certified == {((0, 0), (1, 0)), ((0, 0), (0, 1))}
    r = cones.extremal_rays_P(a2, d, (0, 1), ["1"])
    assert r.ok and r.J0 == {"1"}
    assert r.at_lambda == {((0, 0), (0, 1)), ((0, 0), (1, 1))}


def test_extremal_rays_rank_three():
    a3, d = gcm("A3"), db("A3")
    for anchor, J in [((1, 1, 1), ["1", "2"]), ((0, 1, 0), ["1", "2"]), ((1, 0, 2), ["1", "3"]), ((0, 0, 1), ["1", "2", "3"])]:
        r = cones.extremal_rays_P(a3, d, anchor, J)
        assert r.ok, (anchor, J)


def test_ray_verdict_relation_is_exact():
    a2, d = gcm("A2"), db("A2")
    shape = cones.build_shape(a2, d, (1, 1), ["1"])
    v = cones.ray_verdict(shape, (0, 0), (1, 1))
    assert not v.extremal and cones.check_ray_verdict(v)
