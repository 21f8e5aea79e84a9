#include "rpolar/channel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace rpolar {

bool DiscreteBms::valid(double tol) const {
    double c0 = 0.0, c1 = 0.0;
    for (const auto& row : probs_) {
        if (row[0] < -tol || row[0] > 1.0 + tol) return false;
        if (row[1] < -tol || row[1] > 1.0 + tol) return false;
        c0 += row[0];
        c1 += row[1];
    }
    return std::abs(c0 - 1.0) <= tol && std::abs(c1 - 1.0) <= tol;
}

bool DiscreteBms::check_symmetric(double tol) const {
    const std::size_t m = probs_.size();
    std::vector<char> used(m, 0);
    for (std::size_t y = 0; y < m; ++y) {
        bool found = false;
        for (std::size_t j = 0; j < m && !found; ++j) {
            if (used[j]) continue;
            if (std::abs(probs_[y][0] - probs_[j][1]) <= tol &&
                std::abs(probs_[y][1] - probs_[j][0]) <= tol) {
                used[j] = 1;
                found = true;
            }
        }
        if (!found) return false;
    }
    return true;
}

std::string DiscreteBms::to_json() const {
    nlohmann::ordered_json j;
    j["M"] = probs_.size();
    auto arr = nlohmann::ordered_json::array();
    for (const auto& row : probs_) arr.push_back({row[0], row[1]});
    j["probs"] = std::move(arr);
    return j.dump();
}

DiscreteBms DiscreteBms::from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    std::vector<std::array<double, 2>> probs;
    for (const auto& row : j.at("probs"))
        probs.push_back({row.at(0).get<double>(), row.at(1).get<double>()});
    if (probs.size() != j.at("M").get<std::size_t>())
        throw std::invalid_argument("DiscreteBms: M does not match probs length");
    return DiscreteBms(std::move(probs));
}

double bhattacharyya(const DiscreteBms& ch) {
    double z = 0.0;
    for (const auto& row : ch.probs()) z += std::sqrt(row[0] * row[1]);
    return z;
}

double error_probability(const DiscreteBms& ch) {
    double e = 0.0;
    for (const auto& row : ch.probs()) e += std::min(row[0], row[1]);
    return 0.5 * e;
}

double capacity(const DiscreteBms& ch) {
    double i = 0.0;
    for (const auto& row : ch.probs()) {
        const double avg = 0.5 * (row[0] + row[1]);
        for (int x = 0; x < 2; ++x) {
            if (row[x] > 0.0) i += 0.5 * row[x] * std::log2(row[x] / avg);
        }
    }
    return i;
}

double AwgnChannel::snr_db() const { return 10.0 * std::log10(1.0 / (sigma * sigma)); }

AwgnChannel AwgnChannel::from_snr_db(double snr_db) {
    return AwgnChannel{std::pow(10.0, -snr_db / 20.0)};
}

DiscreteBms bec_as_dmc(double p) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("bec_as_dmc: p out of [0,1]");
    return DiscreteBms({{1.0 - p, 0.0}, {p, p}, {0.0, 1.0 - p}});
}

DiscreteBms bsc_as_dmc(double q) {
    if (q < 0.0 || q > 1.0) throw std::invalid_argument("bsc_as_dmc: q out of [0,1]");
    return DiscreteBms({{1.0 - q, q}, {q, 1.0 - q}});
}

double awgn_llr(double y, double sigma) { return 2.0 * y / (sigma * sigma); }

double binary_entropy(double x) {
    if (x <= 0.0 || x >= 1.0) return 0.0;
    return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

double inv_binary_entropy(double h) {
    if (h <= 0.0) return 0.0;
    if (h >= 1.0) return 0.5;
    double lo = 0.0, hi = 0.5;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (binary_entropy(mid) < h)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double qfunc(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

double biawgn_capacity(double sigma) {
    // I(W) = 1 - E_{y ~ N(1, sigma^2)}[ log2(1 + exp(-2y/sigma^2)) ], Simpson rule
    const double s2 = sigma * sigma;
    const double lo = 1.0 - 12.0 * sigma, hi = 1.0 + 12.0 * sigma;
    const int steps = 4000;  // even
    const double h = (hi - lo) / steps;
    auto f = [&](double y) {
        const double arg = std::max(-700.0, -2.0 * y / s2);
        const double dens = std::exp(-(y - 1.0) * (y - 1.0) / (2.0 * s2)) /
                            std::sqrt(2.0 * M_PI * s2);
        return dens * std::log2(1.0 + std::exp(arg));
    };
    double acc = f(lo) + f(hi);
    for (int k = 1; k < steps; ++k) acc += f(lo + k * h) * (k % 2 ? 4.0 : 2.0);
    return 1.0 - acc * h / 3.0;
}

double biawgn_sigma_for_capacity(double c) {
    if (c <= 0.0 || c >= 1.0) throw std::invalid_argument("capacity target out of (0,1)");
    double lo = 1e-2, hi = 50.0;  // capacity decreasing in sigma
    for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (biawgn_capacity(mid) > c)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace rpolar
