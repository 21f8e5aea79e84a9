#pragma once

#include <cstdint>
#include <vector>

#include "rpolar/channel.hpp"

namespace rpolar {

enum class TreeKind { BecExact, GaAwgn, McGenie };

/// Per-node reliability figures. For BEC trees z is exact and zc tracks the
/// complement 1-z through the dual recursion, so mirror identities hold
/// bit-for-bit. e_lo/e_hi bracket the bit-channel error probability; the two
/// coincide for every kind built here (a degraded/upgraded pair would split them).
struct NodeFig {
    double z = 0.0;
    double zc = 1.0;
    double e_lo = 0.0;
    double e_hi = 0.0;
};

/// Full polarization tree of depth n: level t holds the 2^t bit-channels
/// W_{2^t}^{(i)}. Node (t,j) has children (t+1, 2j) = minus, (t+1, 2j+1) = plus
/// (0-based). Immutable once built.
class ReliabilityTree {
  public:
    ReliabilityTree(int n, TreeKind kind, std::vector<std::vector<NodeFig>> levels)
        : n_(n), kind_(kind), levels_(std::move(levels)) {}

    int depth() const { return n_; }
    TreeKind kind() const { return kind_; }
    const NodeFig& node(int t, std::size_t j) const { return levels_[t][j]; }
    const std::vector<NodeFig>& level(int t) const { return levels_[t]; }
    const std::vector<NodeFig>& leaves() const { return levels_[n_]; }

  private:
    int n_;
    TreeKind kind_;
    std::vector<std::vector<NodeFig>> levels_;
};

/// Exact BEC tree: children of z are (2z - z^2, z^2); e = z/2 on both sides.
/// Parallel over nodes within a level.
ReliabilityTree bec_z_tree(double p, int n);

/// Reference implementation, bit-identical to bec_z_tree.
ReliabilityTree bec_z_tree_serial(double p, int n);

/// BEC tree with an explicitly supplied root complement, used where bitwise
/// mirror agreement between the p and 1-p trees matters.
ReliabilityTree bec_z_tree_pair(double z0, double zc0, int n);

/// Gaussian-approximation density evolution for BPSK on AWGN: root mean LLR
/// 2/sigma^2, plus child 2m, minus child phi^-1(1 - (1 - phi(m))^2),
/// e = Q(sqrt(m/2)).
ReliabilityTree ga_reliability_tree(double sigma, int n);

/// Mean-LLR levels underlying ga_reliability_tree.
std::vector<std::vector<double>> ga_mean_llr_levels(double sigma, int n);

double ga_phi(double x);
double ga_phi_inv(double y);

struct Thresholds {
    double eg = 0.0;        // relax good when e_hi < eg
    double eb = 0.5;        // relax bad when e_lo > eb
    double half_gap = 0.5;  // 0.5 - eb
};

enum class EntropyModel { Bec, Binary };

/// eg = E/(R N); eb solves H(eb) = 1 - H(eg) with H(E) = 2E for the BEC model
/// (eb = 1/2 - eg) and the binary entropy approximation otherwise, taking the
/// branch that approaches 1/2 from below. Throws if eg >= 1/2.
Thresholds thresholds_from_target(double fer, double rate, std::uint64_t block_length,
                                  EntropyModel model);

}  // namespace rpolar
