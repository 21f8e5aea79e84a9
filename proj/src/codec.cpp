#include "rpolar/codec.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace rpolar {

namespace {

inline std::size_t bitrev(std::size_t v, int bits) {
    std::size_t r = 0;
    for (int k = 0; k < bits; ++k) r |= ((v >> k) & 1) << (bits - 1 - k);
    return r;
}

inline double gfun(double a, double b, std::uint8_t u) {
    const double s = u ? b - a : b + a;
    return std::isnan(s) ? 0.0 : s;  // opposing infinities cancel to an erasure
}

inline double ffun(double a, double b, bool min_sum) {
    if (std::isinf(a)) return a > 0 ? b : -b;
    if (std::isinf(b)) return b > 0 ? a : -a;
    if (a == 0.0 || b == 0.0) return 0.0;
    const double sgn = ((a < 0) != (b < 0)) ? -1.0 : 1.0;
    const double m = sgn * std::min(std::abs(a), std::abs(b));
    if (min_sum) return m;
    return m + std::log1p(std::exp(-std::abs(a + b))) - std::log1p(std::exp(-std::abs(a - b)));
}

}  // namespace

double boxplus(double a, double b) { return ffun(a, b, false); }

BitVec encode(const BitVec& u, const RelaxationMap& map) {
    const int n = map.depth();
    const std::size_t N = std::size_t{1} << n;
    if (u.size() != N) throw std::invalid_argument("encode: length mismatch");
    BitVec buf = u;
    for (int t = 0; t < n; ++t) {
        const std::size_t len = N >> t, half = len >> 1;
        for (std::size_t j = 0; j < (std::size_t{1} << t); ++j) {
            if (map.relaxed(t, j)) continue;
            const std::size_t base = j * len;
            for (std::size_t k = 0; k < half; ++k) buf[base + k] ^= buf[base + k + half];
        }
    }
    BitVec x(N);
    for (std::size_t i = 0; i < N; ++i) x[i] = buf[bitrev(i, n)];
    return x;
}

BitVec encode_inverse(const BitVec& x, const RelaxationMap& map) {
    const int n = map.depth();
    const std::size_t N = std::size_t{1} << n;
    if (x.size() != N) throw std::invalid_argument("encode_inverse: length mismatch");
    BitVec buf(N);
    for (std::size_t k = 0; k < N; ++k) buf[k] = x[bitrev(k, n)];
    for (int t = n - 1; t >= 0; --t) {
        const std::size_t len = N >> t, half = len >> 1;
        for (std::size_t j = 0; j < (std::size_t{1} << t); ++j) {
            if (map.relaxed(t, j)) continue;
            const std::size_t base = j * len;
            for (std::size_t k = 0; k < half; ++k) buf[base + k] ^= buf[base + k + half];
        }
    }
    return buf;
}

std::vector<BitVec> generator_matrix(const RelaxationMap& map) {
    const std::size_t N = map.block_length();
    std::vector<BitVec> rows;
    rows.reserve(N);
    BitVec e(N, 0);
    for (std::size_t i = 0; i < N; ++i) {
        e[i] = 1;
        rows.push_back(encode(e, map));
        e[i] = 0;
    }
    return rows;
}

BitVec assemble_u(const BitVec& info, const CodeSpec& spec) {
    if (info.size() != spec.good_set.size())
        throw std::invalid_argument("assemble_u: info length mismatch");
    BitVec u(spec.block_length(), 0);
    for (std::size_t k = 0; k < info.size(); ++k) u[spec.good_set[k]] = info[k];
    return u;
}

namespace {

// Shared successive-cancellation recursion. One alpha/beta buffer per level;
// relaxed nodes pass LLR halves through verbatim and re-assemble hard
// decisions by concatenation, mirroring the encoder's skipped transforms.
class ScEngine {
  public:
    enum class Mode { Production, Genie };

    ScEngine(const RelaxationMap& map, const DecodeOptions& opt)
        : map_(map), opt_(opt), n_(map.depth()) {
        alpha_.resize(n_ + 1);
        beta_.resize(n_ + 1);
        for (int t = 0; t <= n_; ++t) {
            alpha_[t].resize(std::size_t{1} << (n_ - t));
            beta_[t].resize(std::size_t{1} << (n_ - t));
        }
    }

    // frozen: length-N mask (1 = frozen to zero), ignored in genie mode.
    BitVec run(const std::vector<double>& llr, const std::vector<std::uint8_t>* frozen,
               Mode mode, const BitVec* u_true, std::vector<std::uint64_t>* err,
               const std::vector<std::uint8_t>* rate1 = nullptr,
               const std::vector<std::vector<std::uint8_t>>* all_frozen = nullptr) {
        const std::size_t N = std::size_t{1} << n_;
        if (llr.size() != N) throw std::invalid_argument("decode: LLR length mismatch");
        u_hat_.assign(N, 0);
        frozen_ = frozen;
        mode_ = mode;
        u_true_ = u_true;
        err_ = err;
        rate1_ = rate1;
        all_frozen_ = all_frozen;
        for (std::size_t k = 0; k < N; ++k) alpha_[0][k] = llr[bitrev(k, n_)];
        recurse(0, 0);
        return u_hat_;
    }

  private:
    void leaf(std::size_t j) {
        const double a = alpha_[n_][0];
        std::uint8_t d;
        if (mode_ == Mode::Production && frozen_ && (*frozen_)[j]) {
            d = 0;
        } else if (a < 0.0) {
            d = 1;
        } else if (a > 0.0) {
            d = 0;
        } else {
            d = opt_.tie_rng ? static_cast<std::uint8_t>(opt_.tie_rng->coin()) : 0;
        }
        if (mode_ == Mode::Genie) {
            if (d != (*u_true_)[j]) ++(*err_)[j];
            d = (*u_true_)[j];  // genie corrects before decoding continues
        }
        u_hat_[j] = d;
        beta_[n_][0] = d;
    }

    // Batch hard decision at a rate-1 root; exact only when no LLR ties.
    bool try_rate1(int t, std::size_t j) {
        const std::size_t len = std::size_t{1} << (n_ - t);
        auto& a = alpha_[t];
        for (std::size_t k = 0; k < len; ++k)
            if (a[k] == 0.0) return false;
        auto& b = beta_[t];
        for (std::size_t k = 0; k < len; ++k) b[k] = a[k] < 0.0 ? 1 : 0;
        // recover the u-range with the subtree's inverse transform
        BitVec tmp(b.begin(), b.begin() + len);
        for (int tt = n_ - 1; tt >= t; --tt) {
            const std::size_t sublen = std::size_t{1} << (n_ - tt), half = sublen >> 1;
            const std::size_t first = j << (tt - t);
            for (std::size_t jj = 0; jj < (std::size_t{1} << (tt - t)); ++jj) {
                if (map_.relaxed(tt, first + jj)) continue;
                const std::size_t base = jj * sublen;
                for (std::size_t k = 0; k < half; ++k) tmp[base + k] ^= tmp[base + k + half];
            }
        }
        const std::size_t ubase = j * len;
        for (std::size_t k = 0; k < len; ++k) u_hat_[ubase + k] = tmp[k];
        return true;
    }

    void recurse(int t, std::size_t j) {
        if (t == n_) {
            leaf(j);
            return;
        }
        if (all_frozen_ && (*all_frozen_)[t][j]) {
            std::fill(beta_[t].begin(), beta_[t].begin() + (std::size_t{1} << (n_ - t)), 0);
            return;  // leaves already zero in u_hat_
        }
        if (rate1_ && rate1_tagged(t, j) && try_rate1(t, j)) return;
        const std::size_t half = std::size_t{1} << (n_ - t - 1);
        auto& a = alpha_[t];
        auto& an = alpha_[t + 1];
        auto& b = beta_[t];
        auto& bn = beta_[t + 1];
        if (map_.relaxed(t, j)) {
            std::copy(a.begin(), a.begin() + half, an.begin());
            recurse(t + 1, 2 * j);
            std::copy(bn.begin(), bn.begin() + half, b.begin());
            std::copy(a.begin() + half, a.begin() + 2 * half, an.begin());
            recurse(t + 1, 2 * j + 1);
            std::copy(bn.begin(), bn.begin() + half, b.begin() + half);
            return;
        }
        for (std::size_t k = 0; k < half; ++k) an[k] = ffun(a[k], a[k + half], opt_.min_sum);
        if (opt_.op_count) *opt_.op_count += half;
        recurse(t + 1, 2 * j);
        std::copy(bn.begin(), bn.begin() + half, b.begin());
        for (std::size_t k = 0; k < half; ++k) an[k] = gfun(a[k], a[k + half], b[k]);
        if (opt_.op_count) *opt_.op_count += half;
        recurse(t + 1, 2 * j + 1);
        for (std::size_t k = 0; k < half; ++k) {
            b[k] ^= bn[k];
            b[k + half] = bn[k];
        }
    }

    bool rate1_tagged(int t, std::size_t j) const {
        return (*rate1_)[node_index(t, j)] != 0;
    }

    std::size_t node_index(int t, std::size_t j) const {
        return (std::size_t{1} << t) - 1 + j;  // heap order
    }

    const RelaxationMap& map_;
    const DecodeOptions& opt_;
    int n_;
    std::vector<std::vector<double>> alpha_;
    std::vector<std::vector<std::uint8_t>> beta_;
    BitVec u_hat_;
    const std::vector<std::uint8_t>* frozen_ = nullptr;
    Mode mode_ = Mode::Production;
    const BitVec* u_true_ = nullptr;
    std::vector<std::uint64_t>* err_ = nullptr;
    const std::vector<std::uint8_t>* rate1_ = nullptr;
    const std::vector<std::vector<std::uint8_t>>* all_frozen_ = nullptr;
};

DecodeResult finish_result(BitVec u_hat, const CodeSpec& spec) {
    DecodeResult r;
    r.u_hat = std::move(u_hat);
    r.info_bits.reserve(spec.good_set.size());
    for (auto i : spec.good_set) r.info_bits.push_back(r.u_hat[i]);
    if (spec.crc) r.crc_ok = crc_check(r.info_bits, *spec.crc);
    return r;
}

std::vector<std::uint8_t> frozen_mask(const CodeSpec& spec) {
    std::vector<std::uint8_t> frozen(spec.block_length(), 1);
    for (auto i : spec.good_set) frozen[i] = 0;
    return frozen;
}

}  // namespace

DecodeResult rscd_decode(const std::vector<double>& llr, const CodeSpec& spec,
                         const DecodeOptions& opt) {
    const auto frozen = frozen_mask(spec);
    ScEngine engine(spec.map, opt);
    return finish_result(
        engine.run(llr, &frozen, ScEngine::Mode::Production, nullptr, nullptr), spec);
}

DecodeResult sscd_decode(const std::vector<double>& llr, const CodeSpec& spec,
                         const DecodeOptions& opt) {
    const int n = spec.n;
    const auto frozen = frozen_mask(spec);
    // rate-1 / rate-0 labels from the good set
    std::vector<std::vector<std::uint8_t>> all_info(n + 1), all_frozen(n + 1);
    all_info[n].resize(spec.block_length());
    all_frozen[n].resize(spec.block_length());
    for (std::size_t j = 0; j < spec.block_length(); ++j) {
        all_info[n][j] = !frozen[j];
        all_frozen[n][j] = frozen[j];
    }
    for (int t = n - 1; t >= 0; --t) {
        all_info[t].resize(std::size_t{1} << t);
        all_frozen[t].resize(std::size_t{1} << t);
        for (std::size_t j = 0; j < all_info[t].size(); ++j) {
            all_info[t][j] = all_info[t + 1][2 * j] && all_info[t + 1][2 * j + 1];
            all_frozen[t][j] = all_frozen[t + 1][2 * j] && all_frozen[t + 1][2 * j + 1];
        }
    }
    std::vector<std::uint8_t> rate1(spec.block_length() * 2, 0);
    for (int t = 0; t <= n; ++t)
        for (std::size_t j = 0; j < all_info[t].size(); ++j)
            rate1[(std::size_t{1} << t) - 1 + j] = all_info[t][j];
    ScEngine engine(spec.map, opt);
    return finish_result(engine.run(llr, &frozen, ScEngine::Mode::Production, nullptr, nullptr,
                                    &rate1, &all_frozen),
                         spec);
}

void genie_decode(const std::vector<double>& llr, const RelaxationMap& map,
                  const BitVec& u_true, std::vector<std::uint64_t>& err, SplitMix64& tie_rng) {
    DecodeOptions opt;
    opt.tie_rng = &tie_rng;
    ScEngine engine(map, opt);
    engine.run(llr, nullptr, ScEngine::Mode::Genie, &u_true, &err);
}

namespace {

struct ListPath {
    std::vector<std::vector<double>> alpha;
    std::vector<std::vector<std::uint8_t>> beta;
    BitVec u;
    double metric = 0.0;
};

class ListEngine {
  public:
    ListEngine(const CodeSpec& spec, int list_size, const DecodeOptions& opt)
        : spec_(spec), map_(spec.map), opt_(opt), n_(spec.n), lmax_(list_size) {
        if (list_size < 1) throw std::invalid_argument("rscl: list size must be >= 1");
        frozen_ = frozen_mask(spec);
    }

    DecodeResult run(const std::vector<double>& llr) {
        const std::size_t N = std::size_t{1} << n_;
        if (llr.size() != N) throw std::invalid_argument("decode: LLR length mismatch");
        paths_.clear();
        paths_.emplace_back();
        auto& p0 = paths_.back();
        p0.alpha.resize(n_ + 1);
        p0.beta.resize(n_ + 1);
        for (int t = 0; t <= n_; ++t) {
            p0.alpha[t].resize(std::size_t{1} << (n_ - t));
            p0.beta[t].resize(std::size_t{1} << (n_ - t));
        }
        p0.u.assign(N, 0);
        for (std::size_t k = 0; k < N; ++k) p0.alpha[0][k] = llr[bitrev(k, n_)];
        recurse(0, 0);

        std::vector<std::size_t> rank(paths_.size());
        std::iota(rank.begin(), rank.end(), 0);
        std::stable_sort(rank.begin(), rank.end(), [&](std::size_t a, std::size_t b) {
            return paths_[a].metric < paths_[b].metric;
        });
        std::size_t winner = rank[0];
        int winner_rank = 1;
        std::optional<bool> crc_ok;
        if (spec_.crc) {
            crc_ok = false;
            for (std::size_t r = 0; r < rank.size(); ++r) {
                BitVec info;
                info.reserve(spec_.good_set.size());
                for (auto i : spec_.good_set) info.push_back(paths_[rank[r]].u[i]);
                if (crc_check(info, *spec_.crc)) {
                    winner = rank[r];
                    winner_rank = static_cast<int>(r) + 1;
                    crc_ok = true;
                    break;
                }
            }
        }
        DecodeResult res = finish_result(std::move(paths_[winner].u), spec_);
        res.crc_ok = crc_ok;
        res.list_rank = winner_rank;
        return res;
    }

  private:
    void leaf(std::size_t j) {
        if (frozen_[j]) {
            for (auto& p : paths_) {
                const double a = p.alpha[n_][0];
                if (a < 0.0) p.metric -= a;
                p.beta[n_][0] = 0;
            }
            return;
        }
        struct Cand {
            std::size_t parent;
            std::uint8_t bit;
            double metric;
        };
        std::vector<Cand> cands;
        cands.reserve(paths_.size() * 2);
        for (std::size_t pi = 0; pi < paths_.size(); ++pi) {
            const double a = paths_[pi].alpha[n_][0];
            cands.push_back({pi, 0, paths_[pi].metric + (a < 0.0 ? -a : 0.0)});
            cands.push_back({pi, 1, paths_[pi].metric + (a > 0.0 ? a : 0.0)});
        }
        std::stable_sort(cands.begin(), cands.end(),
                         [](const Cand& x, const Cand& y) { return x.metric < y.metric; });
        const std::size_t keep = std::min<std::size_t>(lmax_, cands.size());
        std::vector<char> parent_used(paths_.size(), 0);
        std::vector<ListPath> next;
        next.reserve(keep);
        for (std::size_t k = 0; k < keep; ++k) {
            const auto& c = cands[k];
            if (parent_used[c.parent]) {
                next.push_back(paths_[c.parent]);  // fork: deep copy
            } else {
                next.push_back(std::move(paths_[c.parent]));
                parent_used[c.parent] = 1;
            }
            auto& p = next.back();
            p.metric = c.metric;
            p.beta[n_][0] = c.bit;
            p.u[j] = c.bit;
        }
        paths_ = std::move(next);
    }

    void recurse(int t, std::size_t j) {
        if (t == n_) {
            leaf(j);
            return;
        }
        const std::size_t half = std::size_t{1} << (n_ - t - 1);
        if (map_.relaxed(t, j)) {
            for (auto& p : paths_)
                std::copy(p.alpha[t].begin(), p.alpha[t].begin() + half, p.alpha[t + 1].begin());
            recurse(t + 1, 2 * j);
            for (auto& p : paths_)
                std::copy(p.beta[t + 1].begin(), p.beta[t + 1].begin() + half,
                          p.beta[t].begin());
            for (auto& p : paths_)
                std::copy(p.alpha[t].begin() + half, p.alpha[t].begin() + 2 * half,
                          p.alpha[t + 1].begin());
            recurse(t + 1, 2 * j + 1);
            for (auto& p : paths_)
                std::copy(p.beta[t + 1].begin(), p.beta[t + 1].begin() + half,
                          p.beta[t].begin() + half);
            return;
        }
        for (auto& p : paths_)
            for (std::size_t k = 0; k < half; ++k)
                p.alpha[t + 1][k] = ffun(p.alpha[t][k], p.alpha[t][k + half], opt_.min_sum);
        recurse(t + 1, 2 * j);
        for (auto& p : paths_) {
            std::copy(p.beta[t + 1].begin(), p.beta[t + 1].begin() + half, p.beta[t].begin());
            for (std::size_t k = 0; k < half; ++k)
                p.alpha[t + 1][k] = gfun(p.alpha[t][k], p.alpha[t][k + half], p.beta[t][k]);
        }
        recurse(t + 1, 2 * j + 1);
        for (auto& p : paths_) {
            for (std::size_t k = 0; k < half; ++k) {
                p.beta[t][k] ^= p.beta[t + 1][k];
                p.beta[t][k + half] = p.beta[t + 1][k];
            }
        }
    }

    const CodeSpec& spec_;
    const RelaxationMap& map_;
    const DecodeOptions& opt_;
    int n_;
    std::size_t lmax_;
    std::vector<std::uint8_t> frozen_;
    std::vector<ListPath> paths_;
};

}  // namespace

DecodeResult rscl_decode(const std::vector<double>& llr, const CodeSpec& spec, int list_size,
                         const DecodeOptions& opt) {
    ListEngine engine(spec, list_size, opt);
    return engine.run(llr);
}

namespace {

std::uint64_t crc_run(const BitVec& bits, std::size_t count, const CrcConfig& cfg) {
    const std::uint64_t mask =
        cfg.width >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << cfg.width) - 1;
    std::uint64_t reg = cfg.init & mask;
    for (std::size_t k = 0; k < count; ++k) {
        const std::uint64_t top = (reg >> (cfg.width - 1)) & 1;
        reg = (reg << 1) & mask;
        if (top ^ bits[k]) reg ^= cfg.poly & mask;
    }
    return reg;
}

}  // namespace

BitVec crc_attach(const BitVec& info, const CrcConfig& cfg) {
    const std::uint64_t reg = crc_run(info, info.size(), cfg);
    BitVec out = info;
    for (int k = cfg.width - 1; k >= 0; --k) out.push_back((reg >> k) & 1);
    return out;
}

bool crc_check(const BitVec& bits_with_crc, const CrcConfig& cfg) {
    if (bits_with_crc.size() < static_cast<std::size_t>(cfg.width)) return false;
    const std::size_t payload = bits_with_crc.size() - cfg.width;
    const std::uint64_t reg = crc_run(bits_with_crc, payload, cfg);
    for (int k = 0; k < cfg.width; ++k) {
        if (bits_with_crc[payload + k] != ((reg >> (cfg.width - 1 - k)) & 1)) return false;
    }
    return true;
}

}  // namespace rpolar
