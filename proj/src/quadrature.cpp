#include "modal/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

#include "modal/errors.hpp"

namespace modal {

namespace {

GaussRule build_rule(int n) {
    GaussRule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1);
            double dx = p1 / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-16) break;
        }
        double p0 = 1, p1 = x;
        for (int k = 2; k <= n; ++k) {
            double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1);
        r.nodes[i] = 0.5 * (1 - x);
        r.weights[i] = 1.0 / ((1 - x * x) * dp * dp);
    }
    return r;
}

std::vector<double> apply(const GaussRule& g, const std::function<std::vector<double>(double)>& f, double a,
                          double b) {
    std::vector<double> acc;
    for (size_t i = 0; i < g.nodes.size(); ++i) {
        auto v = f(a + (b - a) * g.nodes[i]);
        if (acc.empty()) acc.assign(v.size(), 0.0);
        for (size_t k = 0; k < v.size(); ++k) acc[k] += g.weights[i] * (b - a) * v[k];
    }
    return acc;
}

double diff_norm(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0;
    for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::fabs(a[i] - b[i]));
    return m;
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
    static std::mutex mu;
    static std::map<int, GaussRule> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, build_rule(n)).first;
    return it->second;
}

QuadratureResult integrate_adaptive(const std::function<std::vector<double>(double)>& f, double tol,
                                    int max_depth) {
    const GaussRule& g8 = gauss_legendre(8);
    const GaussRule& g16 = gauss_legendre(16);
    QuadratureResult res;
    struct Piece {
        double a, b;
        int depth;
    };
    std::vector<Piece> stack{{0.0, 1.0, 0}};
    while (!stack.empty()) {
        Piece p = stack.back();
        stack.pop_back();
        auto lo = apply(g8, f, p.a, p.b);
        auto hi = apply(g16, f, p.a, p.b);
        double err = diff_norm(lo, hi);
        double local_tol = tol * (p.b - p.a);
        if (err <= local_tol || p.depth >= max_depth) {
            if (err > local_tol) {
                std::ostringstream msg;
                msg << "quadrature did not converge; achieved bound " << err;
                throw AccuracyError(msg.str(), err);
            }
            if (res.value.empty()) res.value.assign(hi.size(), 0.0);
            for (size_t k = 0; k < hi.size(); ++k) res.value[k] += hi[k];
            res.error_bound += err;
            continue;
        }
        double mid = 0.5 * (p.a + p.b);
        stack.push_back({mid, p.b, p.depth + 1});
        stack.push_back({p.a, mid, p.depth + 1});
    }
    return res;
}

}  // namespace modal
