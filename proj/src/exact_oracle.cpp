#include "rpolar/exact_oracle.hpp"

#include <algorithm>
#include <cmath>

namespace rpolar {

namespace {

// Lossless compression: outputs with the same posterior P(x=0|y) carry the same
// information, so their probability mass can be pooled. Dead outputs vanish.
DiscreteBms merge_equivalent(std::vector<std::array<double, 2>> probs) {
    std::vector<std::pair<double, std::size_t>> keyed;
    keyed.reserve(probs.size());
    for (std::size_t y = 0; y < probs.size(); ++y) {
        const double mass = probs[y][0] + probs[y][1];
        if (mass == 0.0) continue;
        keyed.emplace_back(probs[y][0] / mass, y);
    }
    std::sort(keyed.begin(), keyed.end());
    std::vector<std::array<double, 2>> merged;
    for (std::size_t k = 0; k < keyed.size();) {
        std::array<double, 2> acc = {0.0, 0.0};
        std::size_t j = k;
        while (j < keyed.size() && keyed[j].first == keyed[k].first) {
            acc[0] += probs[keyed[j].second][0];
            acc[1] += probs[keyed[j].second][1];
            ++j;
        }
        merged.push_back(acc);
        k = j;
    }
    return DiscreteBms(std::move(merged));
}

}  // namespace

DiscreteBms polarize_minus(const DiscreteBms& w, std::size_t cap) {
    const std::size_t m = w.alphabet_size();
    if (m > cap / m) throw AlphabetCapError("polarize_minus: alphabet cap exceeded");
    std::vector<std::array<double, 2>> probs(m * m);
    for (std::size_t y1 = 0; y1 < m; ++y1) {
        for (std::size_t y2 = 0; y2 < m; ++y2) {
            std::array<double, 2> row;
            for (int u1 = 0; u1 < 2; ++u1) {
                double s = 0.0;
                for (int u2 = 0; u2 < 2; ++u2) s += w.w(y1, u1 ^ u2) * w.w(y2, u2);
                row[u1] = 0.5 * s;
            }
            probs[y1 * m + y2] = row;
        }
    }
    return merge_equivalent(std::move(probs));
}

DiscreteBms polarize_plus(const DiscreteBms& w, std::size_t cap) {
    const std::size_t m = w.alphabet_size();
    if (m > cap / (2 * m)) throw AlphabetCapError("polarize_plus: alphabet cap exceeded");
    std::vector<std::array<double, 2>> probs(2 * m * m);
    for (std::size_t y1 = 0; y1 < m; ++y1) {
        for (std::size_t y2 = 0; y2 < m; ++y2) {
            for (int u1 = 0; u1 < 2; ++u1) {
                std::array<double, 2> row;
                for (int u2 = 0; u2 < 2; ++u2)
                    row[u2] = 0.5 * w.w(y1, u1 ^ u2) * w.w(y2, u2);
                probs[(y1 * m + y2) * 2 + u1] = row;
            }
        }
    }
    return merge_equivalent(std::move(probs));
}

BitChannelExact exact_bit_channel(const DiscreteBms& base, int n, std::uint64_t i,
                                  std::size_t cap) {
    if (n < 0 || i < 1 || i > (std::uint64_t{1} << n))
        throw std::invalid_argument("exact_bit_channel: index out of range");
    BitChannelExact bc{base, ""};
    const std::uint64_t path = i - 1;
    for (int t = n - 1; t >= 0; --t) {
        if ((path >> t) & 1) {
            bc.channel = polarize_plus(bc.channel, cap);
            bc.lineage.push_back('+');
        } else {
            bc.channel = polarize_minus(bc.channel, cap);
            bc.lineage.push_back('-');
        }
    }
    return bc;
}

AppendixReport verify_appendix_lemma(const DiscreteBms& w) {
    AppendixReport r;
    const double e = error_probability(w);
    r.e_minus_exact = error_probability(polarize_minus(w));
    r.e_minus_formula = 2.0 * e - 2.0 * e * e;
    r.e_plus_exact = error_probability(polarize_plus(w));
    r.e_plus_lb = 2.0 * e * e;
    r.pass = std::abs(r.e_minus_exact - r.e_minus_formula) <= 1e-10 &&
             r.e_plus_exact >= r.e_plus_lb - 1e-12;
    return r;
}

}  // namespace rpolar
