import pytest

from derfree.algebra import (DependentModM2, adapted_basis,
                             artin_algebra_from_constants)
from derfree.field import GF101, QQ
from derfree.linalg import Matrix, rank
from derfree.modules import minimal_generators, nu, submodule_from_spanning, free_module
from derfree.monomial import NotArtinianError, TruncationError, monomial_algebra


def plane(field=GF101):
    return monomial_algebra(field, ["x", "y"], ["x^2", "x*y", "y^2"], 4).artinize()


def test_validate_square_zero_plane(any_field):
    A = plane(any_field)
    rep = A.validate()
    assert rep.valid and A.dim == 3
    assert rep.nilpotency_index == 2


def test_validate_broken_associativity_has_witness():
    # plant e1*e1 = e0 (a unit value inside m): breaks the ideal axiom and
    # associativity/nilpotency along with it
    A = artin_algebra_from_constants(
        GF101, ["1", "e1"],
        [(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1), (1, 1, 0, 1)])
    rep = A.validate()
    assert not rep.valid
    assert any(i.axiom == "ideal" for i in rep.issues)


def test_validate_uv4_dim10_nilpotency_4():
    Q = monomial_algebra(GF101, ["u", "v"],
                         ["u^4", "u^3*v", "u^2*v^2", "u*v^3", "v^4"], 8).artinize()
    assert Q.dim == 10  # 1 + 2 + 3 + 4 standard monomials below degree 4
    rep = Q.validate()
    assert rep.valid and rep.nilpotency_index == 4


def test_artinize_chain():
    B = monomial_algebra(GF101, ["u"], ["u^4"], 8).artinize()
    assert B.labels == ("1", "u", "u^2", "u^3")


def test_artinize_field():
    k = monomial_algebra(GF101, ["x"], ["x"], 4).artinize()
    assert k.dim == 1 and k.is_field()


def test_artinize_refuses_infinite():
    A = monomial_algebra(GF101, ["x", "y"], ["x^2", "x*y"], 6)
    with pytest.raises(NotArtinianError):
        A.artinize()


def test_edim_examples():
    space = monomial_algebra(
        GF101, ["x", "y", "z"],
        ["x^2", "x*y", "x*z", "y^2", "y*z", "z^2"], 4).artinize()
    assert space.edim() == 3
    k = monomial_algebra(GF101, ["x"], ["x"], 4).artinize()
    assert k.edim() == 0
    Q = monomial_algebra(GF101, ["u", "v"],
                         ["u^4", "u^3*v", "u^2*v^2", "u*v^3", "v^4"], 8).artinize()
    assert Q.edim() == 2


def test_adapted_basis_plane():
    A = plane()
    ab = adapted_basis(A, prescribed=(A.parse_element("x"),))
    assert [A.element_to_str(e) for e in ab.lifts] == ["x", "y"]
    assert ab.m2_basis == ()


def test_adapted_basis_rejects_dependent():
    A = plane()
    x = A.parse_element("x")
    with pytest.raises(DependentModM2):
        adapted_basis(A, prescribed=(x, x))


def test_adapted_basis_completes_u_plus_v():
    Q = monomial_algebra(GF101, ["u", "v"],
                         ["u^4", "u^3*v", "u^2*v^2", "u*v^3", "v^4"], 8).artinize()
    ab = adapted_basis(Q, prescribed=(Q.parse_element("u + v"),))
    assert ab.n == 2
    imgs = Matrix.from_columns(GF101, [list(v) for v in ab.lifts], nrows=Q.dim)
    assert rank(imgs) == 2


def test_adapted_coords_mod_m2():
    Q = monomial_algebra(GF101, ["u", "v"],
                         ["u^4", "u^3*v", "u^2*v^2", "u*v^3", "v^4"], 8).artinize()
    ab = adapted_basis(Q)
    e = Q.parse_element("3*u + 2*v + u^2")
    assert ab.coords_mod_m2(e) == (3, 2)


def test_minimal_generators_of_submodule():
    B = monomial_algebra(GF101, ["u"], ["u^4"], 8).artinize()
    F1 = free_module(B, 1)
    sub, _ = submodule_from_spanning(F1, [B.parse_element("u^2"), B.parse_element("u^3")])
    assert nu(sub) == 1
    gens = minimal_generators(sub)
    assert len(gens) == 1


def test_minimal_generators_zero_module():
    B = plane()
    from derfree.modules import zero_module
    assert minimal_generators(zero_module(B)) == []


def test_nu_of_m_equals_edim():
    for ideal in (["x^2", "x*y", "y^2"], ["x^2", "x*y", "y^3"]):
        A = monomial_algebra(GF101, ["x", "y"], ideal, 8).artinize()
        F1 = free_module(A, 1)
        sub, _ = submodule_from_spanning(
            F1, [A.basis_element(i) for i in range(1, A.dim)])
        assert nu(sub) == A.edim()


def test_parse_print_round_trip(any_field):
    A = plane(any_field)
    for s in ("x", "y", "1 + x", "2*x + 3*y", "x - y", "0"):
        el = A.parse_element(s)
        assert A.parse_element(A.element_to_str(el)) == el


def test_rational_coefficients():
    A = plane(QQ)
    el = A.parse_element("1/2*x + 2/3*y")
    back = A.element_to_str(el)
    assert A.parse_element(back) == el


def test_truncation_refusal():
    A = monomial_algebra(GF101, ["x", "y"], ["x^2", "x*y"], 4)
    y4 = A.parse_element("y^4")
    with pytest.raises(TruncationError):
        A.el_mul(y4, A.parse_element("y"))


def test_graded_basis_is_standard_monomials():
    A = monomial_algebra(GF101, ["x", "y"], ["x^2", "x*y"], 6)
    assert A.basis_dims(6) == (1, 2, 1, 1, 1, 1, 1)
    assert [len(A.basis(d)) for d in (0, 1)] == [1, 2]
