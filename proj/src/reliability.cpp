#include "rpolar/reliability.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace rpolar {

namespace {

std::vector<std::vector<NodeFig>> alloc_levels(int n) {
    std::vector<std::vector<NodeFig>> levels(n + 1);
    for (int t = 0; t <= n; ++t) levels[t].resize(std::size_t{1} << t);
    return levels;
}

inline void bec_children(const NodeFig& parent, NodeFig& minus, NodeFig& plus) {
    minus.z = 2.0 * parent.z - parent.z * parent.z;
    minus.zc = parent.zc * parent.zc;
    plus.z = parent.z * parent.z;
    plus.zc = 2.0 * parent.zc - parent.zc * parent.zc;
    minus.e_lo = minus.e_hi = 0.5 * minus.z;
    plus.e_lo = plus.e_hi = 0.5 * plus.z;
}

ReliabilityTree build_bec(double z0, double zc0, int n, bool parallel) {
    if (n < 0) throw std::invalid_argument("bec_z_tree: negative depth");
    auto levels = alloc_levels(n);
    levels[0][0] = NodeFig{z0, zc0, 0.5 * z0, 0.5 * z0};
    for (int t = 0; t < n; ++t) {
        const auto& cur = levels[t];
        auto& nxt = levels[t + 1];
        const std::int64_t count = static_cast<std::int64_t>(cur.size());
        if (parallel) {
#pragma omp parallel for schedule(static)
            for (std::int64_t j = 0; j < count; ++j)
                bec_children(cur[j], nxt[2 * j], nxt[2 * j + 1]);
        } else {
            for (std::int64_t j = 0; j < count; ++j)
                bec_children(cur[j], nxt[2 * j], nxt[2 * j + 1]);
        }
    }
    return ReliabilityTree(n, TreeKind::BecExact, std::move(levels));
}

}  // namespace

ReliabilityTree bec_z_tree(double p, int n) { return build_bec(p, 1.0 - p, n, true); }

ReliabilityTree bec_z_tree_serial(double p, int n) { return build_bec(p, 1.0 - p, n, false); }

ReliabilityTree bec_z_tree_pair(double z0, double zc0, int n) {
    return build_bec(z0, zc0, n, true);
}

double ga_phi(double x) {
    if (x <= 0.0) return 1.0;
    if (x < 10.0) return std::exp(-0.4527 * std::pow(x, 0.86) + 0.0218);
    return std::sqrt(M_PI / x) * std::exp(-x / 4.0) * (1.0 - 10.0 / (7.0 * x));
}

double ga_phi_inv(double y) {
    if (y >= 1.0) return 0.0;
    if (y <= 0.0) throw std::invalid_argument("ga_phi_inv: y must be positive");
    double lo = 0.0, hi = 1.0;
    while (ga_phi(hi) > y) {
        hi *= 2.0;
        if (hi > 1e9) break;
    }
    // phi is monotone decreasing; resolve x to 1e-9 absolute
    for (int it = 0; it < 200 && hi - lo > 1e-9; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (ga_phi(mid) > y)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

std::vector<std::vector<double>> ga_mean_llr_levels(double sigma, int n) {
    if (sigma <= 0.0) throw std::invalid_argument("ga_reliability_tree: sigma must be > 0");
    std::vector<std::vector<double>> m(n + 1);
    m[0] = {2.0 / (sigma * sigma)};
    for (int t = 0; t < n; ++t) {
        const auto& cur = m[t];
        auto& nxt = m[t + 1];
        nxt.resize(2 * cur.size());
        const std::int64_t count = static_cast<std::int64_t>(cur.size());
#pragma omp parallel for schedule(dynamic, 64)
        for (std::int64_t j = 0; j < count; ++j) {
            const double mv = cur[j];
            if (mv <= 0.0) {
                nxt[2 * j] = 0.0;  // phi(0) = 1: both children stay at 0
                nxt[2 * j + 1] = 0.0;
                continue;
            }
            const double f = ga_phi(mv);
            const double target = f * (2.0 - f);  // = 1 - (1 - f)^2
            double minus = ga_phi_inv(target);
            if (std::isnan(minus))
                throw std::runtime_error("ga inversion failed at level " + std::to_string(t + 1) +
                                         " index " + std::to_string(2 * j + 1));
            nxt[2 * j] = minus;
            nxt[2 * j + 1] = 2.0 * mv;
        }
    }
    return m;
}

ReliabilityTree ga_reliability_tree(double sigma, int n) {
    auto m = ga_mean_llr_levels(sigma, n);
    std::vector<std::vector<NodeFig>> levels(n + 1);
    for (int t = 0; t <= n; ++t) {
        levels[t].resize(m[t].size());
        for (std::size_t j = 0; j < m[t].size(); ++j) {
            const double e = m[t][j] > 0.0 ? qfunc(std::sqrt(m[t][j] / 2.0)) : 0.5;
            NodeFig& nd = levels[t][j];
            nd.e_lo = nd.e_hi = e;
            nd.z = std::min(1.0, 2.0 * e);  // proxy via 2E <= Z
            nd.zc = 1.0 - nd.z;
        }
    }
    return ReliabilityTree(n, TreeKind::GaAwgn, std::move(levels));
}

Thresholds thresholds_from_target(double fer, double rate, std::uint64_t block_length,
                                  EntropyModel model) {
    if (fer <= 0.0 || fer >= 1.0) throw std::invalid_argument("thresholds: FER out of (0,1)");
    if (rate <= 0.0 || rate > 1.0) throw std::invalid_argument("thresholds: rate out of (0,1]");
    Thresholds th;
    th.eg = fer / (rate * static_cast<double>(block_length));
    if (th.eg >= 0.5) throw std::invalid_argument("thresholds: eg >= 1/2, target unreachable");
    if (model == EntropyModel::Bec) {
        th.eb = 0.5 - th.eg;  // H(E) = 2E on the erasure channel
        th.half_gap = th.eg;
    } else {
        th.eb = inv_binary_entropy(1.0 - binary_entropy(th.eg));
        th.half_gap = 0.5 - th.eb;
    }
    return th;
}

}  // namespace rpolar
