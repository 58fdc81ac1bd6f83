#include "modal/grid.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "modal/errors.hpp"

namespace modal {

size_t GridSpec::size() const {
    if (points_per_axis <= 0 || lo.empty()) return 0;
    size_t n = 1;
    for (int i = 0; i < dims(); ++i) n *= static_cast<size_t>(points_per_axis);
    return n;
}

namespace {

std::vector<int> grid_index(const GridSpec& g, size_t idx) {
    std::vector<int> out(g.dims());
    for (int i = g.dims() - 1; i >= 0; --i) {
        out[i] = static_cast<int>(idx % g.points_per_axis);
        idx /= g.points_per_axis;
    }
    return out;
}

}  // namespace

std::vector<double> GridSpec::point(size_t idx) const {
    auto ix = grid_index(*this, idx);
    std::vector<double> x(dims());
    for (int i = 0; i < dims(); ++i)
        x[i] = points_per_axis == 1 ? lo[i] : lo[i] + (hi[i] - lo[i]) * ix[i] / (points_per_axis - 1);
    return x;
}

template <class R>
std::vector<Complex<R>> GridSpec::point_as(size_t idx) const {
    if constexpr (!Num<R>::exact) {
        auto p = point(idx);
        return std::vector<Complex<R>>(p.begin(), p.end());
    } else {
        auto ix = grid_index(*this, idx);
        std::vector<Complex<R>> x(dims());
        for (int i = 0; i < dims(); ++i) {
            R a = from_decimal<R>(lo[i]), b = from_decimal<R>(hi[i]);
            if (points_per_axis == 1) {
                x[i] = Complex<R>(a);
            } else {
                R t = Num<R>::from_ratio(ix[i], points_per_axis - 1);
                x[i] = Complex<R>(R(a + (b - a) * t));
            }
        }
        return x;
    }
}

GridSpec GridSpec::cube(int n, double lo, double hi, int points) {
    return GridSpec{std::vector<double>(n, lo), std::vector<double>(n, hi), points};
}

template <>
double from_decimal<double>(double v) {
    return v;
}

template <>
Rational from_decimal<Rational>(double v) {
    if (!std::isfinite(v)) throw ParseError("non-finite number");
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return Num<Rational>::parse(std::string(buf, res.ptr));
}

int worker_count() {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw <= 0) hw = 1;
    if (const char* env = std::getenv("MODAL_THREADS")) {
        int cap = std::atoi(env);
        if (cap >= 1) hw = std::min(hw, cap);
    }
    return hw;
}

void parallel_for(size_t n, const std::function<void(size_t)>& body) {
    int workers = static_cast<int>(std::min<size_t>(worker_count(), n));
    if (workers <= 1) {
        for (size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::exception_ptr err;
    std::mutex mu;
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            try {
                for (size_t i = w; i < n; i += workers) body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(mu);
                if (!err) err = std::current_exception();
            }
        });
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
}

template std::vector<Complex<double>> GridSpec::point_as<double>(size_t) const;
template std::vector<Complex<Rational>> GridSpec::point_as<Rational>(size_t) const;

}  // namespace modal
