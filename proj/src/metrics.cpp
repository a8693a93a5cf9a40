#include "sanas/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sanas/errors.hpp"
#include "sanas/rng.hpp"

namespace sanas {

bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
    if (a.size() != b.size()) throw ArityMismatch(a.size(), b.size());
    bool strict = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] > b[i]) return false;
        if (a[i] < b[i]) strict = true;
    }
    return strict;
}

std::vector<std::size_t> pareto_front_indices(const std::vector<ObjectiveVector>& points) {
    std::vector<std::size_t> front;
    for (std::size_t i = 0; i < points.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < points.size() && !dominated; ++j)
            if (j != i && dominates(points[j], points[i])) dominated = true;
        if (!dominated) front.push_back(i);
    }
    return front;
}

namespace {

double norm_coord(double v, double lo, double hi) {
    const double range = hi - lo;
    return range > 0 ? (v - lo) / range : v - lo;
}

// Normalizes all points and the reference, drops points with any coordinate
// at or beyond the reference (they contribute no volume).
struct NormalizedInstance {
    std::vector<ObjectiveVector> points;
    ObjectiveVector ref;
};

NormalizedInstance normalize_instance(const std::vector<ObjectiveVector>& points, const HvConfig& cfg) {
    const std::size_t m = cfg.reference.size();
    if (cfg.lower.size() != m || cfg.upper.size() != m)
        throw ArityMismatch(cfg.lower.size(), m);
    NormalizedInstance inst;
    inst.ref.resize(m);
    for (std::size_t j = 0; j < m; ++j) inst.ref[j] = norm_coord(cfg.reference[j], cfg.lower[j], cfg.upper[j]);
    for (const auto& p : points) {
        if (p.size() != m) throw ArityMismatch(p.size(), m);
        ObjectiveVector q(m);
        bool inside = true;
        for (std::size_t j = 0; j < m; ++j) {
            q[j] = norm_coord(p[j], cfg.lower[j], cfg.upper[j]);
            if (q[j] >= inst.ref[j]) inside = false;
        }
        if (inside) inst.points.push_back(std::move(q));
    }
    return inst;
}

// Non-dominated subset sorted ascending by x, strictly descending by y.
std::vector<ObjectiveVector> staircase_2d(std::vector<ObjectiveVector> pts) {
    std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
        if (a[0] != b[0]) return a[0] < b[0];
        return a[1] < b[1];
    });
    std::vector<ObjectiveVector> keep;
    for (auto& p : pts) {
        if (keep.empty() || p[1] < keep.back()[1]) keep.push_back(std::move(p));
    }
    return keep;
}

double hv_2d(const std::vector<ObjectiveVector>& pts, const ObjectiveVector& ref) {
    const auto stairs = staircase_2d(pts);
    double hv = 0.0;
    double prev_y = ref[1];
    for (const auto& p : stairs) {
        hv += (ref[0] - p[0]) * (prev_y - p[1]);
        prev_y = p[1];
    }
    return hv;
}

// Sweep the third objective; each slab contributes its 2-D projection's area
// times the slab thickness.
double hv_3d(std::vector<ObjectiveVector> pts, const ObjectiveVector& ref) {
    std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a[2] < b[2]; });
    const ObjectiveVector ref2{ref[0], ref[1]};
    double hv = 0.0;
    std::vector<ObjectiveVector> proj;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        proj.push_back({pts[i][0], pts[i][1]});
        const double z_next = (i + 1 < pts.size()) ? pts[i + 1][2] : ref[2];
        const double thickness = z_next - pts[i][2];
        if (thickness > 0) hv += thickness * hv_2d(proj, ref2);
    }
    return hv;
}

HvResult hv_monte_carlo_normalized(const std::vector<ObjectiveVector>& pts, const ObjectiveVector& ref,
                                   std::uint64_t samples, std::uint64_t seed) {
    HvResult out;
    out.exact = false;
    if (pts.empty() || samples == 0) return out;
    const std::size_t m = ref.size();
    ObjectiveVector lo(m);
    for (std::size_t j = 0; j < m; ++j) {
        lo[j] = pts[0][j];
        for (const auto& p : pts) lo[j] = std::min(lo[j], p[j]);
    }
    double box = 1.0;
    for (std::size_t j = 0; j < m; ++j) box *= ref[j] - lo[j];
    RandomEngine rng(derive_seed(seed, "hv-monte-carlo"));
    std::uint64_t hits = 0;
    ObjectiveVector s(m);
    for (std::uint64_t it = 0; it < samples; ++it) {
        for (std::size_t j = 0; j < m; ++j) s[j] = lo[j] + rng.real01() * (ref[j] - lo[j]);
        for (const auto& p : pts) {
            bool dom = true;
            for (std::size_t j = 0; j < m; ++j)
                if (p[j] > s[j]) { dom = false; break; }
            if (dom) { ++hits; break; }
        }
    }
    const double p_hat = static_cast<double>(hits) / static_cast<double>(samples);
    out.value = box * p_hat;
    out.standard_error = box * std::sqrt(p_hat * (1.0 - p_hat) / static_cast<double>(samples));
    return out;
}

} // namespace

HvConfig HvConfig::from_bounds(std::vector<double> lower, std::vector<double> upper, double margin) {
    HvConfig cfg;
    cfg.reference.resize(lower.size());
    for (std::size_t j = 0; j < lower.size(); ++j)
        cfg.reference[j] = lower[j] + margin * (upper[j] - lower[j]);
    cfg.lower = std::move(lower);
    cfg.upper = std::move(upper);
    return cfg;
}

HvResult hypervolume_detail(const std::vector<ObjectiveVector>& points, const HvConfig& cfg,
                            std::uint64_t mc_seed) {
    auto inst = normalize_instance(points, cfg);
    HvResult out;
    if (inst.points.empty()) return out;
    const std::size_t m = inst.ref.size();
    if (m == 2) {
        out.value = hv_2d(inst.points, inst.ref);
    } else if (m == 3) {
        out.value = hv_3d(std::move(inst.points), inst.ref);
    } else if (m == 1) {
        double best = inst.points[0][0];
        for (const auto& p : inst.points) best = std::min(best, p[0]);
        out.value = inst.ref[0] - best;
    } else {
        out = hv_monte_carlo_normalized(inst.points, inst.ref, 1000000, mc_seed);
    }
    return out;
}

double hypervolume(const std::vector<ObjectiveVector>& points, const HvConfig& cfg, std::uint64_t mc_seed) {
    return hypervolume_detail(points, cfg, mc_seed).value;
}

HvResult hypervolume_monte_carlo(const std::vector<ObjectiveVector>& points, const HvConfig& cfg,
                                 std::uint64_t samples, std::uint64_t seed) {
    auto inst = normalize_instance(points, cfg);
    if (inst.points.empty()) return HvResult{0.0, 0.0, false};
    return hv_monte_carlo_normalized(inst.points, inst.ref, samples, seed);
}

namespace {

// Counts Σ g·(g−1)/2 over runs of equal values in the (already sorted) range.
std::uint64_t tie_pairs_sorted(const std::vector<double>& v) {
    std::uint64_t pairs = 0;
    std::size_t i = 0;
    while (i < v.size()) {
        std::size_t j = i + 1;
        while (j < v.size() && v[j] == v[i]) ++j;
        const std::uint64_t g = j - i;
        pairs += g * (g - 1) / 2;
        i = j;
    }
    return pairs;
}

// Merge sort counting the number of exchanged pairs (discordant count once
// the sequence is ordered by the other variable).
std::uint64_t count_swaps(std::vector<double>& v) {
    const std::size_t n = v.size();
    std::vector<double> buf(n);
    std::uint64_t swaps = 0;
    for (std::size_t width = 1; width < n; width *= 2) {
        for (std::size_t lo = 0; lo < n; lo += 2 * width) {
            const std::size_t mid = std::min(lo + width, n);
            const std::size_t hi = std::min(lo + 2 * width, n);
            std::size_t a = lo, b = mid, k = lo;
            while (a < mid && b < hi) {
                if (v[b] < v[a]) {
                    swaps += mid - a;
                    buf[k++] = v[b++];
                } else {
                    buf[k++] = v[a++];
                }
            }
            while (a < mid) buf[k++] = v[a++];
            while (b < hi) buf[k++] = v[b++];
            std::copy(buf.begin() + lo, buf.begin() + hi, v.begin() + lo);
        }
    }
    return swaps;
}

} // namespace

double kendall_tau(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw ArityMismatch(x.size(), y.size());
    const std::size_t n = x.size();
    if (n < 2) throw AllTied("fewer than two observations");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (x[a] != x[b]) return x[a] < x[b];
        return y[a] < y[b];
    });

    // Ties in x and joint (x, y) ties, from the (x, y)-sorted order.
    std::uint64_t xtie = 0, xytie = 0;
    {
        std::size_t i = 0;
        while (i < n) {
            std::size_t j = i + 1;
            while (j < n && x[order[j]] == x[order[i]]) ++j;
            const std::uint64_t g = j - i;
            xtie += g * (g - 1) / 2;
            std::size_t a = i;
            while (a < j) {
                std::size_t b = a + 1;
                while (b < j && y[order[b]] == y[order[a]]) ++b;
                const std::uint64_t h = b - a;
                xytie += h * (h - 1) / 2;
                a = b;
            }
            i = j;
        }
    }

    std::vector<double> y_by_x(n);
    for (std::size_t i = 0; i < n; ++i) y_by_x[i] = y[order[i]];
    const std::uint64_t swaps = count_swaps(y_by_x);  // y_by_x is sorted after this
    const std::uint64_t ytie = tie_pairs_sorted(y_by_x);

    const std::uint64_t tot = static_cast<std::uint64_t>(n) * (n - 1) / 2;
    if (xtie == tot) throw AllTied("first argument");
    if (ytie == tot) throw AllTied("second argument");

    const double con_minus_dis = static_cast<double>(tot) - static_cast<double>(xtie) -
                                 static_cast<double>(ytie) + static_cast<double>(xytie) -
                                 2.0 * static_cast<double>(swaps);
    return con_minus_dis /
           (std::sqrt(static_cast<double>(tot - xtie)) * std::sqrt(static_cast<double>(tot - ytie)));
}

std::vector<double> fractional_ranks(const std::vector<double>& v) {
    const std::size_t n = v.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i + 1;
        while (j < n && v[order[j]] == v[order[i]]) ++j;
        const double avg = 0.5 * static_cast<double>(i + 1 + j);  // mean of ranks i+1 .. j
        for (std::size_t k = i; k < j; ++k) ranks[order[k]] = avg;
        i = j;
    }
    return ranks;
}

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw ArityMismatch(x.size(), y.size());
    const std::size_t n = x.size();
    if (n < 2) throw AllTied("fewer than two observations");
    const auto rx = fractional_ranks(x);
    const auto ry = fractional_ranks(y);
    const double mean = 0.5 * static_cast<double>(n + 1);
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = rx[i] - mean;
        const double dy = ry[i] - mean;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0.0) throw AllTied("first argument");
    if (syy == 0.0) throw AllTied("second argument");
    return sxy / std::sqrt(sxx * syy);
}

double rmse(const std::vector<double>& pred, const std::vector<double>& truth) {
    if (pred.size() != truth.size() || pred.empty()) throw ArityMismatch(pred.size(), truth.size());
    double ss = 0.0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        const double d = pred[i] - truth[i];
        ss += d * d;
    }
    return std::sqrt(ss / static_cast<double>(pred.size()));
}

} // namespace sanas
