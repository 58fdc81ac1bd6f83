#include <doctest.h>

#include <random>

#include "modal/decomposition.hpp"
#include "support.hpp"

using namespace modal;
using namespace modal::testing;

namespace {

LocalAlgebra<Q> alg(int l, CQ lambda = CQ(0), Field f = Field::real) { return LocalAlgebra<Q>{f, lambda, l}; }

AlgElem<Q> elem(const LocalAlgebra<Q>& a, std::vector<CQ> c) { return AlgElem<Q>(a, std::move(c)); }

Poly1<Q> poly1(std::vector<long> c) {
    std::vector<CQ> v;
    for (long x : c) v.emplace_back(Q(x));
    return Poly1<Q>(v);
}

}  // namespace

TEST_CASE("alg_mul truncates the convolution") {
    auto a = alg(3);
    CHECK(alg_mul(elem(a, {1, 1, 0}), elem(a, {1, 1, 1})) == elem(a, {1, 2, 2}));
    CHECK(alg_mul(AlgElem<Q>::e_power(a, 2), AlgElem<Q>::e_power(a, 1)).is_zero());

    auto c = alg(2, CQ(0, 1), Field::complex);
    auto x = elem(c, {CQ(0, 1), 1});
    CHECK(alg_mul(x, x) == elem(c, {CQ(-1), CQ(0, 2)}));
}

TEST_CASE("alg_mul rejects elements of different algebras") {
    CHECK_THROWS_AS(alg_mul(elem(alg(2), {1, 0}), elem(alg(3), {1, 0, 0})), UsageError);
}

TEST_CASE("inverse of a unit and non-units") {
    auto a = alg(3, CQ(2));
    auto x = elem(a, {2, 1, 3});
    CHECK(x * x.inverse() == AlgElem<Q>::scalar(a, 1));
    CHECK_THROWS_AS(AlgElem<Q>::e_power(a, 1).inverse(), UndefinedInputError);
}

TEST_CASE("nil_index") {
    auto a = alg(3);
    CHECK(nil_index(AlgElem<Q>::scalar(a, 1)) == 2);
    CHECK(nil_index(AlgElem<Q>::e_power(a, 1)) == 1);
    CHECK(nil_index(AlgElem<Q>::e_power(a, 2)) == 0);
    CHECK_THROWS_AS(nil_index(elem(a, {0, 0, 0})), UndefinedInputError);
}

TEST_CASE("frobenius functional") {
    CHECK(frobenius_phi(elem(alg(2), {3, 5})) == CQ(5));
    CHECK(frobenius_phi(elem(alg(1), {7})) == CQ(7));
    auto cf = alg(1, CQ(0, 1));
    CHECK(cf.complex_factor());
    CHECK(frobenius_phi_field(elem(cf, {CQ(2, 3)})) == CQ(3));
}

TEST_CASE("frobenius_solve represents functionals") {
    auto a2 = alg(2);
    CHECK(frobenius_solve(a2, {CQ(1), CQ(0)}) == AlgElem<Q>::e_power(a2, 1));
    CHECK(frobenius_solve(a2, {CQ(0), CQ(1)}) == AlgElem<Q>::scalar(a2, 1));
    auto a3 = alg(3);
    CHECK(frobenius_solve(a3, {CQ(0), CQ(1), CQ(0)}) == AlgElem<Q>::e_power(a3, 1));

    std::mt19937 rng(7);
    std::vector<CQ> k{random_coeff<Q>(rng, false), random_coeff<Q>(rng, false), random_coeff<Q>(rng, false)};
    auto c = frobenius_solve(a3, k);
    for (int i = 0; i < 3; ++i) CHECK(frobenius_phi(AlgElem<Q>::e_power(a3, i) * c) == k[i]);
}

TEST_CASE("minimal polynomial") {
    CHECK(minimal_polynomial(Matrix<Q>::identity(2), 0) == poly1({-1, 1}));
    CHECK(minimal_polynomial(golden_matrix(), 0) == poly1({4, -4, 1}));
    CHECK(minimal_polynomial(rotation(), 0) == poly1({1, 0, 1}));

    auto pf = minimal_polynomial(to_backend<double>(golden_matrix()), 1e-10);
    REQUIRE(pf.degree() == 2);
    CHECK(pf.coeff(0).re == doctest::Approx(4));
    CHECK(pf.coeff(1).re == doctest::Approx(-4));
}

TEST_CASE("factorization over the reals merges conjugate pairs") {
    auto p = poly1({-2, 1}).pow(2) * poly1({1, 0, 1});
    for (auto d : {factor_min_poly(p, Field::real)}) {
        REQUIRE(d.factors.size() == 2);
        CHECK(d.factors[0].lambda == CQ(0, 1));
        CHECK(d.factors[0].l == 1);
        CHECK(d.factors[0].complex_factor());
        CHECK(d.factors[1].lambda == CQ(2));
        CHECK(d.factors[1].l == 2);
        CHECK(factor_product(d) == p);
    }
    auto dc = factor_min_poly(p, Field::complex);
    CHECK(dc.factors.size() == 3);

    Poly1<double> pd({CD(4), CD(-4), CD(5), CD(-4), CD(1)});  // (x-2)^2 (x^2+1)
    auto df = factor_min_poly(pd, Field::real);
    REQUIRE(df.factors.size() == 2);
    CHECK(df.factors[1].l == 2);
    CHECK(df.factors[1].lambda.re == doctest::Approx(2).epsilon(1e-10));
}

TEST_CASE("partial fraction idempotents") {
    auto p = poly1({2, -3, 1});  // (x-1)(x-2)
    auto d = factor_min_poly(p, Field::real);
    REQUIRE(d.idempotents.size() == 2);
    CHECK(d.idempotents[0] == poly1({2, -1}));
    CHECK(d.idempotents[1] == poly1({-1, 1}));
    CHECK((d.idempotents[0] * d.idempotents[1]).mod(p).is_zero());

    auto single = factor_min_poly(poly1({-3, 1}), Field::real);
    REQUIRE(single.factors.size() == 1);
    CHECK(single.idempotents[0] == poly1({1}));
}

TEST_CASE("idempotents are complete and orthogonal on a mixed matrix") {
    // blocks: J_2(2), rotation, and 5
    Matrix<Q> m = mat<Q>({{2, 1, 0, 0, 0}, {0, 2, 0, 0, 0}, {0, 0, 0, -1, 0}, {0, 0, 1, 0, 0}, {0, 0, 0, 0, 5}});
    auto d = factor_min_poly(minimal_polynomial(m, 0), Field::real);
    auto r = idempotent_residuals(d, m.transpose());
    CHECK(r.max() == 0);
    for (const auto& p : d.idempotents) CHECK(p.is_real());
}

TEST_CASE("rational mode rejects irrational roots") {
    CHECK_THROWS_AS(factor_min_poly(poly1({-2, 0, 1}), Field::real), AmbiguityError);
}

TEST_CASE("float clustering refuses near-coincident roots") {
    // roots 1 and 1 + 2e-3: closer than ten cluster radii but not within one
    Poly1<double> p = Poly1<double>::linear_root(CD(1)) * Poly1<double>::linear_root(CD(1.002));
    CHECK_THROWS_AS(factor_min_poly(p, Field::real), AmbiguityError);
}

TEST_CASE("supplied eigenvalues") {
    auto p = poly1({-2, 1}).pow(3) * poly1({1, 0, 1});
    auto d = factor_with_eigenvalues(p, Field::real, {CQ(2), CQ(0, 1)});
    REQUIRE(d.factors.size() == 2);
    CHECK(d.factors[0].lambda == CQ(0, 1));
    CHECK(d.factors[1].l == 3);
    CHECK_THROWS(factor_with_eigenvalues(p, Field::real, {CQ(2)}));
}

TEST_CASE("aberth roots and multiple-root refinement") {
    std::vector<cplx> coeffs{cplx(-6), cplx(11), cplx(-6), cplx(1)};  // (x-1)(x-2)(x-3)
    auto r = aberth_roots(coeffs);
    REQUIRE(r.size() == 3);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(r[i] - cplx(i + 1)) < 1e-12);

    std::vector<cplx> triple{cplx(-8), cplx(12), cplx(-6), cplx(1)};  // (x-2)^3
    auto cl = cluster_roots(aberth_roots(triple), 1e-3);
    REQUIRE(cl.size() == 1);
    CHECK(std::abs(refine_multiple_root(triple, cl[0].center, 3) - cplx(2)) < 1e-12);
}

TEST_CASE("continued fraction snapping") {
    CHECK(rational_approx(0.75, 1000000) == std::pair<long, long>(3, 4));
    CHECK(rational_approx(-1.0 / 3.0, 1000000) == std::pair<long, long>(-1, 3));
}
