#include "acmdm/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <exception>
#include <limits>
#include <sstream>
#include <thread>
#include <vector>

#include "acmdm/error.hpp"
#include "gauss_kronrod.hpp"

namespace acmdm {

namespace {

using detail::gk15;

constexpr std::uint64_t kEvalsPerCell = detail::GaussKronrod15::size * detail::GaussKronrod15::size;
constexpr double kMinCellWidth = 1e-13;

struct Cell {
    double u0, u1, v0, v1;
    double value;
    double error;
    double error_u;  // embedded-rule discrepancy attributable to u
    double error_v;
};

struct CellOrder {
    bool operator()(const Cell& a, const Cell& b) const noexcept { return a.error < b.error; }
};

// Integrand on the unit square after x = u*v, y = v.
Cell evaluate_cell(const TriangleIntegrand& f, double u0, double u1, double v0, double v1) {
    const double hu = 0.5 * (u1 - u0);
    const double hv = 0.5 * (v1 - v0);
    const double cu = 0.5 * (u0 + u1);
    const double cv = 0.5 * (v0 + v1);

    double kk = 0.0, gk = 0.0, kg = 0.0, abs_kk = 0.0;
    for (int j = 0; j < gk15.size; ++j) {
        const double v = cv + hv * gk15.node[j];
        double row_k = 0.0, row_g = 0.0, row_abs = 0.0;
        for (int i = 0; i < gk15.size; ++i) {
            const double u = cu + hu * gk15.node[i];
            const double x = u * v;
            const double val = f(x, v) * v;
            if (!std::isfinite(val)) {
                std::ostringstream msg;
                msg << "integrand is not finite at (x, y) = (" << x << ", " << v << ")";
                throw Error(ErrorCode::NonFiniteIntegrand, msg.str());
            }
            row_k += gk15.kronrod_weight[i] * val;
            row_g += gk15.gauss_weight[i] * val;
            row_abs += gk15.kronrod_weight[i] * std::abs(val);
        }
        kk += gk15.kronrod_weight[j] * row_k;
        gk += gk15.kronrod_weight[j] * row_g;
        kg += gk15.gauss_weight[j] * row_k;
        abs_kk += gk15.kronrod_weight[j] * row_abs;
    }
    const double area = hu * hv;
    Cell c{u0, u1, v0, v1, kk * area, 0.0, 0.0, 0.0};
    c.error_u = std::abs(kk - gk) * area;
    c.error_v = std::abs(kk - kg) * area;
    const double roundoff = 50.0 * std::numeric_limits<double>::epsilon() * abs_kk * area;
    c.error = std::max(c.error_u + c.error_v, roundoff);
    return c;
}

double neumaier_sum(const std::vector<Cell>& cells, double Cell::*field) {
    double sum = 0.0, comp = 0.0;
    for (const auto& c : cells) {
        const double t = sum + c.*field;
        if (std::abs(sum) >= std::abs(c.*field))
            comp += (sum - t) + c.*field;
        else
            comp += (c.*field - t) + sum;
        sum = t;
    }
    return sum + comp;
}

}  // namespace

QuadratureResult integrate_triangle(const TriangleIntegrand& f, double tol,
                                    const TriangleQuadratureOptions& options) {
    if (!(tol > 0.0) || !std::isfinite(tol))
        throw Error(ErrorCode::InvalidArgument, "integrate_triangle: tol must be positive");
    if (options.initial_depth < 0 || options.initial_depth > 10)
        throw Error(ErrorCode::InvalidArgument, "integrate_triangle: initial_depth out of range [0, 10]");

    const int n0 = 1 << options.initial_depth;
    if (kEvalsPerCell * static_cast<std::uint64_t>(n0) * n0 > options.max_evaluations)
        throw Error(ErrorCode::NonConvergence, "integrate_triangle: evaluation budget " +
                                                   std::to_string(options.max_evaluations) +
                                                   " is smaller than the initial grid");
    std::vector<Cell> heap;
    std::vector<Cell> frozen;
    heap.reserve(static_cast<std::size_t>(n0) * n0 * 4);
    std::uint64_t evaluations = 0;

    for (int j = 0; j < n0; ++j) {
        for (int i = 0; i < n0; ++i) {
            heap.push_back(evaluate_cell(f, double(i) / n0, double(i + 1) / n0,
                                         double(j) / n0, double(j + 1) / n0));
            evaluations += kEvalsPerCell;
        }
    }
    std::make_heap(heap.begin(), heap.end(), CellOrder{});

    double total_error = neumaier_sum(heap, &Cell::error);
    while (true) {
        if (total_error <= tol) {
            // Incremental bookkeeping drifts; confirm with a fresh sum.
            total_error = neumaier_sum(heap, &Cell::error) + neumaier_sum(frozen, &Cell::error);
            if (total_error <= tol) break;
        }
        if (heap.empty() || evaluations + 2 * kEvalsPerCell > options.max_evaluations) {
            const double value = neumaier_sum(heap, &Cell::value) + neumaier_sum(frozen, &Cell::value);
            std::ostringstream msg;
            msg.precision(10);
            msg << "integrate_triangle: tolerance " << tol << " not reached after " << evaluations
                << " evaluations (estimate " << value << ", error " << total_error << ")";
            throw Error(ErrorCode::NonConvergence, msg.str());
        }

        std::pop_heap(heap.begin(), heap.end(), CellOrder{});
        const Cell worst = heap.back();
        heap.pop_back();

        const bool split_u = worst.error_u >= worst.error_v;
        const double width = split_u ? worst.u1 - worst.u0 : worst.v1 - worst.v0;
        if (width < kMinCellWidth) {
            frozen.push_back(worst);
            continue;
        }

        Cell a, b;
        if (split_u) {
            const double mid = 0.5 * (worst.u0 + worst.u1);
            a = evaluate_cell(f, worst.u0, mid, worst.v0, worst.v1);
            b = evaluate_cell(f, mid, worst.u1, worst.v0, worst.v1);
        } else {
            const double mid = 0.5 * (worst.v0 + worst.v1);
            a = evaluate_cell(f, worst.u0, worst.u1, worst.v0, mid);
            b = evaluate_cell(f, worst.u0, worst.u1, mid, worst.v1);
        }
        evaluations += 2 * kEvalsPerCell;
        total_error += a.error + b.error - worst.error;

        heap.push_back(a);
        std::push_heap(heap.begin(), heap.end(), CellOrder{});
        heap.push_back(b);
        std::push_heap(heap.begin(), heap.end(), CellOrder{});
    }

    QuadratureResult result;
    result.value = neumaier_sum(heap, &Cell::value) + neumaier_sum(frozen, &Cell::value);
    result.error_estimate = total_error;
    result.evaluations = evaluations;
    return result;
}

namespace {

constexpr std::uint64_t kMcBlock = 1u << 16;

constexpr std::uint64_t splitmix64(std::uint64_t z) noexcept {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

constexpr double to_unit(std::uint64_t z) noexcept {
    return static_cast<double>(z >> 11) * 0x1.0p-53;
}

struct Moments {
    std::uint64_t n = 0;
    double mean = 0.0;
    double m2 = 0.0;
};

// Chan et al. pairwise combination of running moments.
Moments combine(const Moments& a, const Moments& b) {
    if (a.n == 0) return b;
    if (b.n == 0) return a;
    Moments r;
    r.n = a.n + b.n;
    const double delta = b.mean - a.mean;
    const double nb_over_n = static_cast<double>(b.n) / static_cast<double>(r.n);
    r.mean = a.mean + delta * nb_over_n;
    r.m2 = a.m2 + b.m2 + delta * delta * static_cast<double>(a.n) * nb_over_n;
    return r;
}

Moments run_block(const TriangleIntegrand& f, std::uint64_t key, std::uint64_t begin,
                  std::uint64_t end) {
    Moments m;
    for (std::uint64_t i = begin; i < end; ++i) {
        double a = to_unit(splitmix64(key + 2 * i));
        double b = to_unit(splitmix64(key + 2 * i + 1));
        if (a > b) std::swap(a, b);
        const double val = f(a, b);
        if (!std::isfinite(val)) {
            std::ostringstream msg;
            msg << "integrand is not finite at (x, y) = (" << a << ", " << b << ")";
            throw Error(ErrorCode::NonFiniteIntegrand, msg.str());
        }
        ++m.n;
        const double delta = val - m.mean;
        m.mean += delta / static_cast<double>(m.n);
        m.m2 += delta * (val - m.mean);
    }
    return m;
}

}  // namespace

QuadratureResult mc_integrate_triangle(const TriangleIntegrand& f, std::uint64_t samples,
                                       std::uint64_t seed, unsigned threads) {
    if (samples < 1)
        throw Error(ErrorCode::InvalidArgument, "mc_integrate_triangle: samples must be >= 1");

    const std::uint64_t key = splitmix64(seed);
    const std::uint64_t blocks = (samples + kMcBlock - 1) / kMcBlock;
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, blocks));

    std::vector<Moments> partial(blocks);
    std::vector<std::exception_ptr> failure(blocks);

    auto worker = [&](unsigned t) {
        for (std::uint64_t blk = t; blk < blocks; blk += threads) {
            try {
                const std::uint64_t begin = blk * kMcBlock;
                partial[blk] = run_block(f, key, begin, std::min(samples, begin + kMcBlock));
            } catch (...) {
                failure[blk] = std::current_exception();
                return;
            }
        }
    };

    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    }

    for (const auto& e : failure)
        if (e) std::rethrow_exception(e);

    Moments total;
    for (const auto& m : partial) total = combine(total, m);

    constexpr double kArea = 0.5;
    QuadratureResult result;
    result.value = kArea * total.mean;
    result.evaluations = total.n;
    if (total.n > 1) {
        const double variance = total.m2 / static_cast<double>(total.n - 1);
        result.error_estimate = kArea * std::sqrt(variance / static_cast<double>(total.n));
    } else {
        // A single sample carries no spread information.
        result.error_estimate = std::numeric_limits<double>::infinity();
    }
    return result;
}

}  // namespace acmdm
