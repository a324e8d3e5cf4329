// optimize.hpp
// Deterministic derivative-free minimization for smooth low-dimensional
// objectives: a coarse grid scan seeds a Nelder-Mead simplex refinement from
// the best cells.  Evaluations are combined in index order, so results do not
// depend on evaluation scheduling.

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace qtele::opt {

using Objective = std::function<double(const std::vector<double>&)>;

struct Result {
    std::vector<double> x;
    double value = 0.0;
    long evaluations = 0;
};

struct Options {
    int max_iterations = 500;      // per simplex start
    double diameter_tol = 1e-9;    // simplex size at convergence
    double step_tol = 1e-7;        // movement of the best vertex
    int starts = 4;                // grid cells promoted to simplex starts
};

namespace detail {

inline std::vector<double> clamp_point(std::vector<double> x, const std::vector<double>& lo,
                                       const std::vector<double>& hi) {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::clamp(x[i], lo[i], hi[i]);
    return x;
}

inline double distance(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
}

}  // namespace detail

// Standard Nelder-Mead with reflection 1, expansion 2, contraction 1/2,
// shrink 1/2; candidate points are projected back into the box.
inline Result nelder_mead(const Objective& f, const std::vector<double>& x0,
                          const std::vector<double>& lo, const std::vector<double>& hi,
                          const Options& opts = {}) {
    const std::size_t d = x0.size();
    long evals = 0;
    auto eval = [&](const std::vector<double>& x) {
        ++evals;
        return f(x);
    };

    std::vector<std::vector<double>> pts;
    std::vector<double> vals;
    pts.push_back(detail::clamp_point(x0, lo, hi));
    for (std::size_t i = 0; i < d; ++i) {
        std::vector<double> p = x0;
        double step = 0.02 * (hi[i] - lo[i]);
        if (p[i] + step > hi[i]) step = -step;
        p[i] += step;
        pts.push_back(detail::clamp_point(std::move(p), lo, hi));
    }
    for (const auto& p : pts) vals.push_back(eval(p));

    std::vector<std::size_t> order(pts.size());
    auto sort_simplex = [&] {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    };

    std::vector<double> prev_best = pts[0];
    for (int iter = 0; iter < opts.max_iterations; ++iter) {
        sort_simplex();
        const std::size_t best = order[0], worst = order[d], second_worst = order[d - 1];

        double diameter = 0.0;
        for (std::size_t i = 1; i <= d; ++i)
            diameter = std::max(diameter, detail::distance(pts[order[i]], pts[best]));
        const double moved = detail::distance(pts[best], prev_best);
        if (diameter < opts.diameter_tol || (iter > 0 && moved < opts.step_tol && diameter < opts.step_tol))
            break;
        prev_best = pts[best];

        std::vector<double> centroid(d, 0.0);
        for (std::size_t i = 0; i <= d; ++i) {
            if (order[i] == worst) continue;
            for (std::size_t k = 0; k < d; ++k) centroid[k] += pts[order[i]][k];
        }
        for (double& c : centroid) c /= static_cast<double>(d);

        auto blend = [&](double t) {
            std::vector<double> p(d);
            for (std::size_t k = 0; k < d; ++k)
                p[k] = centroid[k] + t * (centroid[k] - pts[worst][k]);
            return detail::clamp_point(std::move(p), lo, hi);
        };

        const std::vector<double> refl = blend(1.0);
        const double frefl = eval(refl);
        if (frefl < vals[best]) {
            const std::vector<double> expd = blend(2.0);
            const double fexpd = eval(expd);
            if (fexpd < frefl) {
                pts[worst] = expd;
                vals[worst] = fexpd;
            } else {
                pts[worst] = refl;
                vals[worst] = frefl;
            }
            continue;
        }
        if (frefl < vals[second_worst]) {
            pts[worst] = refl;
            vals[worst] = frefl;
            continue;
        }
        const bool outside = frefl < vals[worst];
        const std::vector<double> contr = blend(outside ? 0.5 : -0.5);
        const double fcontr = eval(contr);
        if (fcontr < std::min(frefl, vals[worst])) {
            pts[worst] = contr;
            vals[worst] = fcontr;
            continue;
        }
        // Shrink toward the best vertex.
        for (std::size_t i = 0; i <= d; ++i) {
            if (order[i] == order[0]) continue;
            const std::size_t idx = order[i];
            for (std::size_t k = 0; k < d; ++k)
                pts[idx][k] = pts[order[0]][k] + 0.5 * (pts[idx][k] - pts[order[0]][k]);
            vals[idx] = eval(pts[idx]);
        }
    }

    sort_simplex();
    Result r;
    r.x = pts[order[0]];
    r.value = vals[order[0]];
    r.evaluations = evals;
    return r;
}

// Evaluates the objective on a grid of cell centers, then refines from the
// best `opts.starts` cells (plus any caller-provided warm starts).
inline Result grid_then_simplex(const Objective& f, const std::vector<double>& lo,
                                const std::vector<double>& hi, const std::vector<int>& grid,
                                const std::vector<std::vector<double>>& warm_starts = {},
                                const Options& opts = {}) {
    const std::size_t d = lo.size();
    if (hi.size() != d || grid.size() != d)
        throw std::invalid_argument("grid_then_simplex: dimension mismatch");

    long total = 1;
    for (int g : grid) {
        if (g < 1) throw std::invalid_argument("grid_then_simplex: grid dimension < 1");
        total *= g;
    }

    std::vector<std::pair<double, long>> scored;
    scored.reserve(static_cast<std::size_t>(total));
    std::vector<double> x(d);
    long evals = 0;
    for (long cell = 0; cell < total; ++cell) {
        long rem = cell;
        for (std::size_t k = 0; k < d; ++k) {
            const int gk = grid[k];
            const int ik = static_cast<int>(rem % gk);
            rem /= gk;
            x[k] = lo[k] + (ik + 0.5) * (hi[k] - lo[k]) / gk;
        }
        ++evals;
        scored.emplace_back(f(x), cell);
    }
    std::stable_sort(scored.begin(), scored.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });

    std::vector<std::vector<double>> starts;
    const int n_starts = std::min<long>(opts.starts, total);
    for (int s = 0; s < n_starts; ++s) {
        long rem = scored[static_cast<std::size_t>(s)].second;
        std::vector<double> p(d);
        for (std::size_t k = 0; k < d; ++k) {
            const int gk = grid[k];
            const int ik = static_cast<int>(rem % gk);
            rem /= gk;
            p[k] = lo[k] + (ik + 0.5) * (hi[k] - lo[k]) / gk;
        }
        starts.push_back(std::move(p));
    }
    for (const auto& w : warm_starts) starts.push_back(detail::clamp_point(w, lo, hi));

    Result best;
    best.value = scored.front().first;
    bool first = true;
    for (const auto& s : starts) {
        Result r = nelder_mead(f, s, lo, hi, opts);
        evals += r.evaluations;
        if (first || r.value < best.value) {
            best = r;
            first = false;
        }
    }
    best.evaluations = evals;
    return best;
}

}  // namespace qtele::opt
