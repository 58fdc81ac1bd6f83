#include "modal/roots.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "modal/errors.hpp"

namespace modal {

namespace {

cplx horner(const std::vector<cplx>& c, cplx x) {
    cplx acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
}

std::vector<cplx> derivative(const std::vector<cplx>& c) {
    std::vector<cplx> d;
    for (size_t i = 1; i < c.size(); ++i) d.push_back(c[i] * static_cast<double>(i));
    return d;
}

}  // namespace

std::vector<cplx> aberth_roots(const std::vector<cplx>& coeffs_in, int max_iter) {
    std::vector<cplx> c = coeffs_in;
    while (!c.empty() && c.back() == cplx(0)) c.pop_back();
    if (c.size() <= 1) return {};
    int n = static_cast<int>(c.size()) - 1;
    cplx lead = c.back();
    for (auto& x : c) x /= lead;
    std::vector<cplx> d = derivative(c);

    // Cauchy bound for the initial circle, points offset by an irrational angle
    double bound = 0;
    for (int i = 0; i < n; ++i) bound = std::max(bound, std::abs(c[i]));
    double radius = 1 + bound;
    double mean_re = -c[n - 1].real() / n, mean_im = -c[n - 1].imag() / n;
    double r0 = 0;
    for (int i = 0; i < n; ++i) r0 = std::max(r0, std::pow(std::abs(c[i]), 1.0 / (n - i)));
    r0 = std::min(radius, std::max(r0, 1e-3));
    std::vector<cplx> z(n);
    for (int k = 0; k < n; ++k) {
        double ang = 2 * M_PI * k / n + 0.4;
        z[k] = cplx(mean_re, mean_im) + r0 * cplx(std::cos(ang), std::sin(ang));
    }

    std::vector<bool> done(n, false);
    for (int it = 0; it < max_iter; ++it) {
        bool all = true;
        for (int k = 0; k < n; ++k) {
            if (done[k]) continue;
            cplx p = horner(c, z[k]);
            if (p == cplx(0)) {
                done[k] = true;
                continue;
            }
            cplx ratio = p / horner(d, z[k]);
            cplx sum = 0;
            for (int j = 0; j < n; ++j)
                if (j != k) {
                    cplx diff = z[k] - z[j];
                    if (diff != cplx(0)) sum += 1.0 / diff;
                }
            cplx step = ratio / (1.0 - ratio * sum);
            if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) step = ratio;
            z[k] -= step;
            if (std::abs(step) <= 1e-15 * (1 + std::abs(z[k])))
                done[k] = true;
            else
                all = false;
        }
        if (all) break;
    }
    std::sort(z.begin(), z.end(), [](cplx a, cplx b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return z;
}

std::vector<RootCluster> cluster_roots(const std::vector<cplx>& roots, double tol) {
    int n = static_cast<int>(roots.size());
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto radius = [&](cplx a, cplx b) { return tol * (1 + std::max(std::abs(a), std::abs(b))); };
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (std::abs(roots[i] - roots[j]) <= radius(roots[i], roots[j])) parent[find(i)] = find(j);

    std::vector<RootCluster> out;
    std::vector<int> slot(n, -1);
    for (int i = 0; i < n; ++i) {
        int r = find(i);
        if (slot[r] < 0) {
            slot[r] = static_cast<int>(out.size());
            out.emplace_back();
        }
        out[slot[r]].members.push_back(roots[i]);
    }
    for (auto& cl : out) {
        cplx s = 0;
        for (auto m : cl.members) s += m;
        cl.multiplicity = static_cast<int>(cl.members.size());
        cl.center = s / static_cast<double>(cl.multiplicity);
    }
    for (size_t a = 0; a < out.size(); ++a)
        for (size_t b = a + 1; b < out.size(); ++b)
            for (auto x : out[a].members)
                for (auto y : out[b].members)
                    if (std::abs(x - y) < 10 * radius(x, y)) {
                        std::ostringstream msg;
                        msg << "root clusters near " << out[a].center << " and " << out[b].center
                            << " are separated by less than 10*tol; supply the eigenvalues explicitly";
                        throw AmbiguityError(msg.str());
                    }
    std::sort(out.begin(), out.end(), [](const RootCluster& a, const RootCluster& b) {
        if (a.center.real() != b.center.real()) return a.center.real() < b.center.real();
        return a.center.imag() < b.center.imag();
    });
    return out;
}

cplx refine_multiple_root(const std::vector<cplx>& coeffs, cplx start, int multiplicity) {
    std::vector<cplx> q = coeffs;
    for (int i = 1; i < multiplicity; ++i) q = derivative(q);
    std::vector<cplx> dq = derivative(q);
    cplx z = start;
    for (int it = 0; it < 50; ++it) {
        cplx den = horner(dq, z);
        if (den == cplx(0)) break;
        cplx step = horner(q, z) / den;
        if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
        z -= step;
        if (std::abs(step) <= 1e-16 * (1 + std::abs(z))) break;
    }
    // Newton may wander off for badly scaled input; keep the better of the two
    if (std::abs(z - start) > 1e-2 * (1 + std::abs(start))) return start;
    return z;
}

std::pair<long, long> rational_approx(double x, long max_den) {
    // convergents h/k of the continued fraction of x
    long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    double r = x;
    for (int it = 0; it < 64; ++it) {
        double a = std::floor(r);
        if (std::fabs(a) > 9e15) break;
        long ai = static_cast<long>(a);
        long h2 = ai * h1 + h0, k2 = ai * k1 + k0;
        if (k2 > max_den) break;
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        double frac = r - a;
        if (frac < 1e-12) break;
        r = 1 / frac;
    }
    if (k1 == 0) return {static_cast<long>(std::llround(x)), 1};
    return {h1, k1};
}

}  // namespace modal
