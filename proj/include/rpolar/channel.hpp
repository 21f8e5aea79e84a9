#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

namespace rpolar {

/// Explicit finite-alphabet binary-input channel, probs()[y][x] = W(y|x).
/// Values are immutable after construction and safe to share across threads.
class DiscreteBms {
  public:
    DiscreteBms() = default;
    explicit DiscreteBms(std::vector<std::array<double, 2>> probs) : probs_(std::move(probs)) {}

    std::size_t alphabet_size() const { return probs_.size(); }
    double w(std::size_t y, int x) const { return probs_[y][x]; }
    const std::vector<std::array<double, 2>>& probs() const { return probs_; }

    /// Both columns sum to 1 within tol and all entries lie in [0,1].
    bool valid(double tol = 1e-12) const;

    /// True if some output permutation pi satisfies W(y|0) = W(pi(y)|1).
    bool check_symmetric(double tol = 1e-9) const;

    std::string to_json() const;
    static DiscreteBms from_json(const std::string& text);

  private:
    std::vector<std::array<double, 2>> probs_;
};

/// Z(W) = sum_y sqrt(W(y|0) W(y|1)), in [0,1].
double bhattacharyya(const DiscreteBms& ch);

/// E(W) = 1/2 sum_y min(W(y|0), W(y|1)), in [0,1/2]. Satisfies 2E <= Z.
double error_probability(const DiscreteBms& ch);

/// Symmetric capacity I(W) with uniform input; zero-probability terms contribute 0.
double capacity(const DiscreteBms& ch);

struct BecChannel {
    double p = 0.0;
};

/// BPSK over AWGN, bit 0 -> +1, bit 1 -> -1. SNR(dB) = 10 log10(1/sigma^2).
struct AwgnChannel {
    double sigma = 1.0;
    double snr_db() const;
    static AwgnChannel from_snr_db(double snr_db);
};

/// 3-output representation {0, erasure, 1} of BEC(p).
DiscreteBms bec_as_dmc(double p);

/// 2-output binary symmetric channel with crossover q.
DiscreteBms bsc_as_dmc(double q);

/// Channel LLR log(W(y|0)/W(y|1)) = 2y/sigma^2 for the BPSK convention above.
double awgn_llr(double y, double sigma);

double binary_entropy(double x);

/// Inverse of binary_entropy on the [0, 1/2] branch.
double inv_binary_entropy(double h);

/// Gaussian tail Q(x).
double qfunc(double x);

/// Capacity of the binary-input AWGN channel at noise stddev sigma.
double biawgn_capacity(double sigma);

/// Noise stddev at which the binary-input AWGN capacity equals c.
double biawgn_sigma_for_capacity(double c);

}  // namespace rpolar
