#include <doctest.h>

#include <random>

#include "support.hpp"

using namespace modal;
using namespace modal::testing;

namespace {

JordanStructure<Q> golden_structure() {
    return jordan_chains(golden_matrix(), LocalAlgebra<Q>{Field::real, CQ(2), 2}, 0);
}

ComponentData<Q> golden_data() {
    auto js = golden_structure();
    auto cd = zero_components(js);
    cd.f[0] = poly<Q>(1, {{{2}, CQ(1)}});
    cd.f[1] = poly<Q>(2, {{{1, 0}, CQ(1)}, {{0, 1}, CQ(1)}});
    return cd;
}

/// Chain coordinate variables of the golden structure: u1 (short chain), ug (generator), ud (depth 1).
struct GoldenVars {
    MPoly<Q> u1, ug, ud;
};

GoldenVars golden_vars(const JordanStructure<Q>& js) {
    return {MPoly<Q>::variable(3, js.index(0, 0)), MPoly<Q>::variable(3, js.index(1, 0)),
            MPoly<Q>::variable(3, js.index(1, 1))};
}

LocalAlgebra<Q> complex_plane() { return LocalAlgebra<Q>{Field::complex, CQ(0, 1), 1}; }

}  // namespace

TEST_CASE("extend_T on the golden data") {
    auto cd = golden_data();
    auto f = extend_T(cd);
    auto [u1, ug, ud] = golden_vars(cd.structure);
    CHECK(f.coeffs[0] == ug * ug);
    CHECK(f.coeffs[1] == ud * ug * CQ(2) + u1 + ug);
    auto fj = extend_T_jet(cd);
    CHECK(fj.coeffs == f.coeffs);
}

TEST_CASE("extend_T on dual numbers matches the jet of the data") {
    auto a = LocalAlgebra<Q>{Field::real, CQ(0), 2};
    auto f = extend_T_free(a, 1, {poly<Q>(1, {{{2}, CQ(1)}}), MPoly<Q>(1)});
    auto x = MPoly<Q>::variable(2, 0), y = MPoly<Q>::variable(2, 1);
    CHECK(f.coeffs[0] == x * x);
    CHECK(f.coeffs[1] == x * y * CQ(2));
    CHECK(evaluate_chain(f, {CQ(3), CQ(1)}) == AlgElem<Q>(a, {CQ(9), CQ(6)}));

    auto cube = extend_T_free(a, 1, {poly<Q>(1, {{{3}, CQ(1)}}), MPoly<Q>(1)});
    CHECK(cube.coeffs[1] == x * x * y * CQ(3));

    auto one = LocalAlgebra<Q>{Field::real, CQ(4), 1};
    auto p = poly<Q>(2, {{{2, 1}, CQ(3)}, {{0, 0}, CQ(-1)}});
    CHECK(extend_T_free(one, 2, {p}).coeffs[0] == p);
}

TEST_CASE("zero data gives the zero function") {
    auto js = golden_structure();
    auto f = extend_T(zero_components(js));
    for (const auto& c : f.coeffs) CHECK(c.is_zero());
    CHECK(phi_of(f, {CQ(1), CQ(2), CQ(3)}) == CQ(0));
}

TEST_CASE("extend_T and the jet expansion agree on random structures") {
    std::mt19937 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        int l = std::uniform_int_distribution<int>(1, 4)(rng);
        int n = std::uniform_int_distribution<int>(l, 6)(rng);
        auto js = JordanStructure<Q>::canonical(LocalAlgebra<Q>{Field::real, CQ(1), l}, random_partition(rng, n, l));
        auto cd = random_components<Q>(rng, js, 3, 4);
        CHECK(extend_T(cd).coeffs == extend_T_jet(cd).coeffs);
    }
}

TEST_CASE("reduce_H inverts extend_T") {
    auto cd = golden_data();
    auto back = reduce_H(extend_T(cd).coeffs, cd.structure, 3);
    CHECK(back.f == cd.f);

    // a constant a in A has constant components a_k
    auto js = golden_structure();
    std::vector<MPoly<Q>> constant{MPoly<Q>::constant(3, CQ(5)), MPoly<Q>::constant(3, CQ(-2))};
    auto c = reduce_H(constant, js, 2);
    CHECK(c.f[0] == MPoly<Q>::constant(1, CQ(5)));
    CHECK(c.f[1] == MPoly<Q>::constant(2, CQ(-2)));
}

TEST_CASE("reduce_H agrees with reading the generator monomials") {
    // H_(e^k) f restricted to slice k: the e^k coefficient at points of the slice
    std::mt19937 rng(23);
    for (int trial = 0; trial < 10; ++trial) {
        int l = std::uniform_int_distribution<int>(2, 3)(rng);
        auto js = JordanStructure<Q>::canonical(LocalAlgebra<Q>{Field::real, CQ(0), l}, random_partition(rng, 5, l));
        auto cd = random_components<Q>(rng, js, 3, 4);
        auto f = extend_T(cd);
        for (int k = 0; k < l; ++k) {
            auto sp = slice_spec(js, k);
            std::vector<MPoly<Q>> subs(js.dim(), MPoly<Q>(static_cast<int>(sp.coords.size())));
            for (size_t i = 0; i < sp.coords.size(); ++i)
                subs[sp.coords[i]] = MPoly<Q>::variable(static_cast<int>(sp.coords.size()), static_cast<int>(i));
            CHECK(f.coeffs[k].compose(subs) == cd.f[k]);
        }
        CHECK(reduce_H(f.coeffs, js, 3).f == cd.f);
    }
}

TEST_CASE("reduce_H rejects maps that are not A-differentiable") {
    auto js = golden_structure();
    std::vector<MPoly<Q>> f{MPoly<Q>::variable(3, js.index(1, 1)), MPoly<Q>(3)};
    CHECK_THROWS_AS(reduce_H(f, js, 2), NotRepresentableError);
    ReduceOptions loose;
    loose.accept_non_differentiable = true;
    CHECK_THROWS_AS(reduce_H(f, js, 2, loose), NotRepresentableError);
}

TEST_CASE("evaluation of the golden function") {
    auto f = extend_T(golden_data());
    CHECK(evaluate(f, {CQ(1), CQ(1), CQ(1)}) == AlgElem<Q>(f.structure.algebra, {CQ(1), CQ(4)}));
    CHECK(phi_of(f, {CQ(1), CQ(1), CQ(1)}) == CQ(4));
}

TEST_CASE("phi recovery returns gauge-fixed components") {
    auto cd = golden_data();
    auto v = phi_polynomial(extend_T(cd));
    auto back = recover_from_phi(v, cd.structure, 3);
    // f0(0) = 0 already, so the gauge leaves the data unchanged
    CHECK(back.f == cd.f);

    auto rot = jordan_chains(rotation(), LocalAlgebra<Q>{Field::real, CQ(0, 1), 1}, 0, true);
    auto cz = zero_components(rot);
    cz.f[0] = poly<Q>(1, {{{2}, CQ(1, 2)}, {{0}, CQ(0, 3)}});
    auto vz = phi_polynomial(extend_T(cz));
    CHECK(recover_from_phi(vz, rot, 2).f == cz.f);
}

TEST_CASE("cr residual") {
    auto f = extend_T(golden_data());
    CHECK(cr_symbolic_zero(cr_residual(f), 0));

    // A = C, f(z) = z^2 as coefficient polynomials in x, y
    auto sc = StructureConstants<Q>::complex_numbers();
    auto x = MPoly<Q>::variable(2, 0), y = MPoly<Q>::variable(2, 1);
    auto sq = cr_residual_general(sc, {x * x - y * y, x * y * CQ(2)});
    for (const auto& p : sq[0]) CHECK(p.is_zero());
    auto bar = cr_residual_general(sc, {x, -y});
    CHECK(bar[0][0].is_zero());
    CHECK(bar[0][1] == MPoly<Q>::constant(2, CQ(-2)));

    // a_0 = u_d is not A-differentiable
    auto js = golden_structure();
    std::vector<MPoly<Q>> g{MPoly<Q>::variable(3, js.index(1, 1)), MPoly<Q>(3)};
    CHECK_FALSE(cr_symbolic_zero(cr_residual(g, js), 0));
}

TEST_CASE("A-linearity of the derivative by finite differences") {
    std::mt19937 rng(29);
    auto js = JordanStructure<double>::canonical(LocalAlgebra<double>{Field::real, CD(0.5), 3}, {1, 2, 3});
    auto f = extend_T(random_components<double>(rng, js, 3, 4));
    std::uniform_real_distribution<double> u(-1, 1);
    const double h = 1e-5;
    for (int trial = 0; trial < 10; ++trial) {
        ChainCoords<double> p(js.dim()), y(js.dim());
        for (auto& c : p) c = CD(u(rng));
        for (auto& c : y) c = CD(u(rng));
        auto a = AlgElem<double>(js.algebra, {CD(u(rng)), CD(u(rng)), CD(u(rng))});
        auto df = [&](const ChainCoords<double>& dir) {
            ChainCoords<double> pp = p, pm = p;
            for (int i = 0; i < js.dim(); ++i) {
                pp[i] += dir[i] * CD(h);
                pm[i] -= dir[i] * CD(h);
            }
            return (evaluate_chain(f, pp) - evaluate_chain(f, pm)) * CD(1 / (2 * h));
        };
        auto lhs = df(module_action(js, a, y));
        auto rhs = a * df(y);
        CHECK(alg_norm(lhs - rhs) <= 1e-6);
    }
}

TEST_CASE("generalized Laplace residual") {
    auto x = MPoly<Q>::variable(2, 0), y = MPoly<Q>::variable(2, 1);
    for (const auto& r : gen_laplace_residual(x * x - y * y, rotation())) CHECK(r.is_zero());
    bool nonzero = false;
    for (const auto& r : gen_laplace_residual(x * x + y * y, rotation())) nonzero = nonzero || !r.is_zero();
    CHECK(nonzero);

    // on the golden matrix only the mixed and pure x2 second derivatives survive
    std::mt19937 rng(31);
    auto v = random_poly<Q>(rng, 3, 3, 8);
    auto res = gen_laplace_residual(v, golden_matrix());
    auto v12 = v.derivative(0).derivative(1), v22 = v.derivative(1).derivative(1);
    for (int i = 0; i < 9; ++i) {
        if (i == 2 * 3 + 0) CHECK(res[i] == v12);
        else if (i == 0 * 3 + 2) CHECK(res[i] == -v12);
        else if (i == 2 * 3 + 1) CHECK(res[i] == v22);
        else if (i == 1 * 3 + 2) CHECK(res[i] == -v22);
        else CHECK(res[i].is_zero());
    }
}

TEST_CASE("contour integrals on C") {
    auto c = LocalAlgebra<double>{Field::complex, CD(0, 1), 1};
    std::vector<AlgElem<double>> square;
    for (auto z : {CD(0), CD(1), CD(1, 1), CD(0, 1)}) square.push_back(AlgElem<double>::scalar(c, z));
    auto id = [](const AlgElem<double>& a) { return a; };
    CHECK(alg_norm(contour_integral(id, square, true)) < 1e-12);
    auto conj = [](const AlgElem<double>& a) { return AlgElem<double>::scalar(a.algebra(), a[0].conj()); };
    auto r = contour_integral(conj, square, true);
    CHECK(r[0].re == doctest::Approx(0).epsilon(1e-12));
    CHECK(r[0].im == doctest::Approx(2).epsilon(1e-12));
}

TEST_CASE("contour integrals of T outputs vanish") {
    std::mt19937 rng(37);
    auto js = JordanStructure<double>::canonical(LocalAlgebra<double>{Field::real, CD(1), 3}, {2, 3});
    auto f = extend_T(random_components<double>(rng, js, 4, 4));
    ChainCoords<double> base(js.dim());
    base[js.index(0, 0)] = CD(0.3);
    auto g = restrict_to_line(f, base, 1);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int loop = 0; loop < 5; ++loop) {
        std::vector<AlgElem<double>> pts;
        for (int v = 0; v < 5; ++v) pts.push_back(AlgElem<double>(js.algebra, {CD(u(rng)), CD(u(rng)), CD(u(rng))}));
        CHECK(alg_norm(contour_integral(g, pts, true)) < 1e-9);
    }
}

TEST_CASE("a_primitive") {
    auto dual = LocalAlgebra<Q>{Field::real, CQ(0), 2};
    auto js = JordanStructure<Q>::free_module(dual, 1);
    auto x = MPoly<Q>::variable(2, 0), y = MPoly<Q>::variable(2, 1);
    ADiffFunction<Q> one{js, {MPoly<Q>::constant(2, CQ(1)), MPoly<Q>(2)}};
    auto b0 = AlgElem<Q>(dual, {CQ(1), CQ(2)});
    auto g1 = a_primitive(one, b0);
    CHECK(g1.coeffs[0] == x - MPoly<Q>::constant(2, CQ(1)));
    CHECK(g1.coeffs[1] == y - MPoly<Q>::constant(2, CQ(2)));

    ADiffFunction<Q> id{js, {x, y}};
    auto g = a_primitive(id, AlgElem<Q>(dual, {CQ(0), CQ(0)}));
    CHECK(g.coeffs[0] == x * x * CQ(Q(1, 2)));
    CHECK(g.coeffs[1] == x * y);
    CHECK(cr_symbolic_zero(cr_residual(g), 0));

    auto cz = JordanStructure<Q>::free_module(complex_plane(), 1);
    auto z = MPoly<Q>::variable(1, 0);
    auto g3 = a_primitive(ADiffFunction<Q>{cz, {z * z}}, AlgElem<Q>(complex_plane(), {CQ(0)}));
    CHECK(g3.coeffs[0] == z * z * z * CQ(Q(1, 3)));
}

namespace {

/// L(b_i, b_j) = b_i b_j for the basis (1, e, ..., e^{l-1}) of A over the field.
MultilinearTable<Q> squaring_table(const LocalAlgebra<Q>& a) {
    MultilinearTable<Q> t{2, a.l, {}};
    for (int i = 0; i < a.l; ++i)
        for (int j = 0; j < a.l; ++j) t.entries.push_back(AlgElem<Q>::e_power(a, i) * AlgElem<Q>::e_power(a, j));
    return t;
}

}  // namespace

TEST_CASE("A-polynomials") {
    auto a = LocalAlgebra<Q>{Field::real, CQ(0), 2};
    CHECK(apoly_eval<Q>({squaring_table(a)}, {CQ(1), CQ(1)}, a) == AlgElem<Q>(a, {CQ(1), CQ(2)}));

    auto c = symmetrize<Q>(2, 0, {{Exps{0, 0}, AlgElem<Q>(a, {CQ(3), CQ(4)})}}, a);
    CHECK(apoly_eval<Q>({c}, {CQ(7), CQ(8)}, a) == AlgElem<Q>(a, {CQ(3), CQ(4)}));

    // a two-variable quadratic form against direct expansion
    std::mt19937 rng(41);
    auto a11 = AlgElem<Q>(a, {random_coeff<Q>(rng, false), random_coeff<Q>(rng, false)});
    auto a20 = AlgElem<Q>(a, {random_coeff<Q>(rng, false), random_coeff<Q>(rng, false)});
    auto t = symmetrize<Q>(2, 2, {{Exps{1, 1}, a11}, {Exps{2, 0}, a20}}, a);
    std::vector<CQ> pt{CQ(2), CQ(-3)};
    CHECK(apoly_eval<Q>({t}, pt, a) == a11 * CQ(-6) + a20 * CQ(4));
    CHECK(apoly_eval<Q>({t, c}, pt, a) == a11 * CQ(-6) + a20 * CQ(4) + AlgElem<Q>(a, {CQ(3), CQ(4)}));

    MultilinearTable<Q> bad{2, 2, {AlgElem<Q>::scalar(a, 1), AlgElem<Q>::scalar(a, 1), AlgElem<Q>::scalar(a, 2),
                                   AlgElem<Q>::scalar(a, 1)}};
    CHECK_THROWS_AS(apoly_eval<Q>({bad}, pt, a), UsageError);
}

TEST_CASE("apoly of the square agrees with multiplication") {
    std::mt19937 rng(43);
    auto a = LocalAlgebra<Q>{Field::real, CQ(0), 3};
    auto sq = squaring_table(a);
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<CQ> x{random_coeff<Q>(rng, false), random_coeff<Q>(rng, false), random_coeff<Q>(rng, false)};
        auto xa = AlgElem<Q>(a, x);
        CHECK(apoly_eval<Q>({sq}, x, a) == alg_mul(xa, xa));
    }
}

TEST_CASE("norm estimates") {
    auto c = LocalAlgebra<double>{Field::complex, CD(0, 1), 1};
    auto js = JordanStructure<double>::free_module(c, 1);
    ADiffFunction<double> f{js, {MPoly<double>::variable(1, 0)}};
    std::vector<ChainCoords<double>> disk;
    for (int r = 0; r <= 10; ++r)
        for (int a = 0; a < 32; ++a) {
            double rad = r / 10.0, th = 2 * M_PI * a / 32;
            disk.push_back({CD(rad * std::cos(th), rad * std::sin(th))});
        }
    CHECK(estimate_norm_k(f, disk, 0, 0.1).value == doctest::Approx(1));
    CHECK(estimate_norm_k(f, disk, 1, 0.1).value == doctest::Approx(2));
    ADiffFunction<double> k{js, {MPoly<double>::constant(1, CD(3, 4))}};
    CHECK(estimate_norm_k(k, disk, 2, 0.1).value == doctest::Approx(5));
}
