#include <doctest.h>

#include <random>

#include "support.hpp"

using namespace modal;
using namespace modal::testing;

namespace {

BoundaryData<Q> golden_boundary(const Analysis<Q>& an) {
    auto bd = zero_boundary(an);
    bd.factors[0].f[0] = poly<Q>(1, {{{2}, CQ(1)}});
    bd.factors[0].f[1] = poly<Q>(2, {{{1, 0}, CQ(1)}, {{0, 1}, CQ(1)}});
    return bd;
}

struct Xs {
    MPoly<Q> x1, x2, x3;
};

Xs xs() { return {MPoly<Q>::variable(3, 0), MPoly<Q>::variable(3, 1), MPoly<Q>::variable(3, 2)}; }

}  // namespace

TEST_CASE("golden pair") {
    auto an = analyze(golden_matrix(), Field::real);
    auto sp = build_pair(an, golden_boundary(an));
    auto [x1, x2, x3] = xs();
    CHECK(sp.v == x2 * x3 * CQ(2) + x1 + x3);
    CHECK(sp.w == x3 * x3 + x2 * x3 * CQ(4) + x1 * CQ(2) + x3 * CQ(2));
    CHECK(sp.report.symbolic_zero);

    auto shifted = build_pair(an, golden_boundary(an), CQ(7));
    CHECK(shifted.w == sp.w + MPoly<Q>::constant(3, CQ(7)));
}

TEST_CASE("classical pair from the rotation") {
    auto an = analyze(rotation(), Field::real);
    REQUIRE(an.num_factors() == 1);
    auto bd = zero_boundary(an);
    bd.factors[0].f[0] = poly<Q>(1, {{{1}, CQ(1)}});
    auto sp = build_pair(an, bd, CQ(3));
    CHECK(sp.v == MPoly<Q>::variable(2, 0));
    CHECK(sp.w == MPoly<Q>::variable(2, 1) + MPoly<Q>::constant(2, CQ(3)));
    CHECK(sp.report.symbolic_zero);
}

TEST_CASE("zero data gives v = 0 and w = c") {
    auto an = analyze(golden_matrix(), Field::real);
    auto sp = build_pair(an, zero_boundary(an), CQ(5));
    CHECK(sp.v.is_zero());
    CHECK(sp.w == MPoly<Q>::constant(3, CQ(5)));
}

TEST_CASE("build_pair validates the data") {
    auto an = analyze(golden_matrix(), Field::real);
    auto bd = zero_boundary(an);
    bd.factors[0].f[0] = MPoly<Q>(2);
    CHECK_THROWS_AS(build_pair(an, bd), UsageError);
    auto bd2 = zero_boundary(an);
    bd2.factors[0].f[1] = poly<Q>(2, {{{1, 0}, CQ(0, 1)}});
    CHECK_THROWS_AS(build_pair(an, bd2), UsageError);
    CHECK_THROWS_AS(build_pair(an, BoundaryData<Q>{}), UsageError);
}

TEST_CASE("degenerate scalar matrix gives w = lambda v") {
    auto m = Matrix<Q>::identity(3) * CQ(3);
    auto an = analyze(m, Field::real);
    std::mt19937 rng(2);
    auto bd = zero_boundary(an);
    bd.factors[0].f[0] = random_poly<Q>(rng, 3, 3, 6);
    auto sp = build_pair(an, bd);
    CHECK(sp.v == bd.factors[0].f[0]);
    CHECK(sp.w == sp.v * CQ(3));
}

TEST_CASE("check_pair") {
    auto x = MPoly<Q>::variable(2, 0), y = MPoly<Q>::variable(2, 1);
    CHECK_FALSE(check_pair(x, x, rotation(), 0).symbolic_zero);
    CHECK(check_pair(x, y, rotation(), 0).symbolic_zero);
    std::mt19937 rng(4);
    auto v = random_poly<Q>(rng, 2, 4, 6);
    CHECK(check_pair(v, v + MPoly<Q>::constant(2, CQ(9)), Matrix<Q>::identity(2), 0).symbolic_zero);
}

TEST_CASE("grid residuals are sampled in lexicographic order") {
    auto x = MPoly<Q>::variable(2, 0);
    auto g = GridSpec::cube(2, 0, 1, 3);
    auto rep = check_pair(x, x, rotation(), 0, &g);
    REQUIRE(rep.grid_evaluated);
    CHECK(rep.max_abs == 1);
    CHECK(rep.where == std::vector<double>{0, 0});
    CHECK(g.point(1) == std::vector<double>{0, 0.5});
    CHECK(g.point(3) == std::vector<double>{0.5, 0});
    GridSpec empty = GridSpec::cube(2, 0, 1, 0);
    CHECK(empty.size() == 0);
}

TEST_CASE("integrate_w_from_v") {
    auto an = analyze(golden_matrix(), Field::real);
    auto sp = build_pair(an, golden_boundary(an));
    auto w = integrate_w_from_v(sp.v, an.m, std::vector<CQ>(3), 0);
    CHECK(w == sp.w - MPoly<Q>::constant(3, sp.w.constant_term()));

    auto x = MPoly<Q>::variable(2, 0), y = MPoly<Q>::variable(2, 1);
    CHECK(integrate_w_from_v(x, rotation(), std::vector<CQ>(2), 0) == y);
    CHECK(integrate_w_from_v(MPoly<Q>::constant(2, CQ(4)), rotation(), std::vector<CQ>(2), 0).is_zero());

    // a base point away from the origin only changes the constant
    std::vector<CQ> b0{CQ(1), CQ(-2), CQ(Q(1, 3))};
    auto wb = integrate_w_from_v(sp.v, an.m, b0, 0);
    auto diff = wb - sp.w;
    CHECK(diff.degree() <= 0);
    CHECK(wb.eval(b0) == CQ(0));

    CHECK_THROWS_AS(integrate_w_from_v(x * x + y * y, rotation(), std::vector<CQ>(2), 0), IntegrabilityError);
}

TEST_CASE("boundary value problem on the golden matrix") {
    auto an = analyze(golden_matrix(), Field::real);
    auto bd = golden_boundary(an);
    auto sol = solve_bvp(an, bd);
    auto [x1, x2, x3] = xs();
    CHECK(sol.v == x2 * x3 * CQ(2) + x1 + x3);
    CHECK(sol.report.symbolic_zero);

    auto rep = check_bvp_conditions(sol.v + x2 * x2, an, bd);
    CHECK_FALSE(rep.symbolic_zero);
    bool laplace_hit = false;
    for (const auto& e : rep.equations)
        if (e.name == "laplace[2,1]") laplace_hit = !e.symbolic_zero && e.max_coeff == 2;
    CHECK(laplace_hit);

    auto zero = solve_bvp(an, zero_boundary(an));
    CHECK(zero.v.is_zero());
    CHECK(check_bvp_conditions(MPoly<Q>(3), an, zero_boundary(an)).symbolic_zero);

    // wrong data on the deepest slice is caught by the value condition
    auto other = golden_boundary(an);
    other.factors[0].f[1] = poly<Q>(2, {{{1, 0}, CQ(1)}});
    CHECK_FALSE(check_bvp_conditions(sol.v, an, other).symbolic_zero);
}

TEST_CASE("boundary value problem with l = 1") {
    auto an = analyze(Matrix<Q>::identity(2) * CQ(2), Field::real);
    auto bd = zero_boundary(an);
    bd.factors[0].f[0] = poly<Q>(2, {{{3, 1}, CQ(1)}, {{0, 2}, CQ(-4)}});
    auto sol = solve_bvp(an, bd);
    CHECK(sol.v == bd.factors[0].f[0]);
    CHECK(sol.report.symbolic_zero);
}

TEST_CASE("boundary value problem on a complex factor") {
    // J_2(i) realified: eigenvalues +-i with l = 2
    Matrix<Q> m = mat<Q>({{0, -1, 1, 0}, {1, 0, 0, 1}, {0, 0, 0, -1}, {0, 0, 1, 0}});
    auto an = analyze(m, Field::real);
    REQUIRE(an.num_factors() == 1);
    CHECK(an.structures[0].chains == std::vector<int>{2});
    std::mt19937 rng(8);
    auto bd = zero_boundary(an);
    bd.factors[0].f[0] = random_poly<Q>(rng, 1, 3, 3, true);
    bd.factors[0].f[1] = random_poly<Q>(rng, 1, 3, 3, true);
    auto sol = solve_bvp(an, bd);
    CHECK(sol.v.is_real());
    CHECK(sol.report.symbolic_zero);
    CHECK(build_pair(an, bd).report.symbolic_zero);
}

TEST_CASE("uniqueness kernel") {
    CHECK(uniqueness_kernel(analyze(golden_matrix(), Field::real), 3).kernel == 0);
    CHECK(uniqueness_kernel(analyze(Matrix<Q>::identity(2) * CQ(5), Field::real), 3).kernel == 0);
    auto rot = uniqueness_kernel(analyze(rotation(), Field::real), 3);
    CHECK(rot.kernel == 0);
    CHECK(rot.unknowns > 0);
}

TEST_CASE("splitting over disjoint spectra") {
    Matrix<Q> m = mat<Q>({{2, 0, 0, 0, 0}, {0, 2, 0, 0, 0}, {0, 1, 2, 0, 0}, {0, 0, 0, 0, -1}, {0, 0, 0, 1, 0}});
    auto an = analyze(m, Field::real);
    REQUIRE(an.num_factors() == 2);
    std::mt19937 rng(12);
    auto bd = zero_boundary(an);
    for (int i = 0; i < 2; ++i)
        for (auto& f : bd.factors[i].f)
            f = random_poly<Q>(rng, f.nvars(), 3, 3, an.structures[i].algebra.complex_factor());
    auto full = build_pair(an, bd);
    CHECK(full.report.symbolic_zero);

    auto a1 = analyze(golden_matrix(), Field::real);
    auto a2 = analyze(rotation(), Field::real);
    // factor order: i before 2
    BoundaryData<Q> b1{{ComponentData<Q>{a1.structures[0], bd.factors[1].f}}};
    BoundaryData<Q> b2{{ComponentData<Q>{a2.structures[0], bd.factors[0].f}}};
    auto p1 = build_pair(a1, b1), p2 = build_pair(a2, b2);
    CHECK(full.v == p1.v.embed(5, {0, 1, 2}) + p2.v.embed(5, {3, 4}));
    CHECK(full.w == p1.w.embed(5, {0, 1, 2}) + p2.w.embed(5, {3, 4}));
}

TEST_CASE("float mode golden pair") {
    auto an = analyze(to_backend<double>(golden_matrix()), Field::real);
    auto bd = zero_boundary(an);
    bd.factors[0].f[0] = poly<double>(1, {{{2}, CD(1)}});
    bd.factors[0].f[1] = poly<double>(2, {{{1, 0}, CD(1)}, {{0, 1}, CD(1)}});
    auto g = GridSpec::cube(3, 0, 1, 11);
    auto sp = build_pair(an, bd, CD(0), &g);
    CHECK(sp.report.symbolic_zero);
    CHECK(sp.report.max_abs <= 1e-12);
    CHECK(poly_distance(sp.v, to_backend<double>(build_pair(analyze(golden_matrix(), Field::real),
                                                            golden_boundary(analyze(golden_matrix(), Field::real)))
                                                     .v)) < 1e-12);
}
