#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rpolar/reliability.hpp"

namespace rpolar {

/// Relaxed(t,j) labels over the full tree, 0-based node indices. A set bit
/// means the node is not polarized further; heredity (children of a relaxed
/// node are relaxed) is an invariant of every constructor here.
class RelaxationMap {
  public:
    RelaxationMap() = default;
    static RelaxationMap all_zeros(int n);

    int depth() const { return n_; }
    std::uint64_t block_length() const { return std::uint64_t{1} << n_; }
    bool relaxed(int t, std::size_t j) const { return levels_[t][j] != 0; }
    void set_relaxed(int t, std::size_t j, bool v) { levels_[t][j] = v ? 1 : 0; }
    const std::vector<std::uint8_t>& level(int t) const { return levels_[t]; }

    bool heredity_ok() const;

    /// Visits every maximal relaxed subtree root as f(t, j).
    template <typename F>
    void for_each_maximal_root(F&& f) const {
        for (int t = 0; t <= n_; ++t) {
            for (std::size_t j = 0; j < levels_[t].size(); ++j) {
                if (levels_[t][j] && (t == 0 || !levels_[t - 1][j / 2])) f(t, j);
            }
        }
    }

    std::string to_json() const;
    static RelaxationMap from_json(const std::string& text);

    bool operator==(const RelaxationMap& other) const = default;

  private:
    int n_ = 0;
    std::vector<std::vector<std::uint8_t>> levels_;
};

struct CrcConfig {
    int width = 16;
    std::uint64_t poly = 0x1021;
    std::uint64_t init = 0xFFFF;
    bool operator==(const CrcConfig&) const = default;
};

/// Everything encoder/decoder need besides the channel: good set (0-based,
/// ascending), frozen value 0 implied, optional CRC, relaxation map.
struct CodeSpec {
    int n = 0;
    std::vector<std::uint32_t> good_set;
    std::optional<CrcConfig> crc;
    RelaxationMap map;

    std::uint64_t block_length() const { return std::uint64_t{1} << n; }
    double rate() const {
        return static_cast<double>(good_set.size()) / static_cast<double>(block_length());
    }
    std::vector<std::uint8_t> info_mask() const;  // length N, 1 on good set

    /// good_set is serialized 1-based per the file format.
    std::string to_json(const std::string& map_ref) const;
    static CodeSpec from_json(const std::string& text, const std::string& map_json);
};

/// Writes <base>.code.json and <base>.map.json; returns the code file path.
std::string save_code_files(const CodeSpec& spec, const std::string& base);
CodeSpec load_code_files(const std::string& code_path);

enum class Scenario { Fp, Gc, Bc, Ac, GcMrp, AcMrp };

struct Target {
    enum class Kind { Rate, Fer } kind = Kind::Rate;
    double value = 0.5;
    static Target rate(double r) { return {Kind::Rate, r}; }
    static Target fer(double e) { return {Kind::Fer, e}; }
};

struct Construction {
    CodeSpec spec;
    std::vector<double> leaf_ep;     // relaxed-adjusted e_hi per leaf
    double selected_ep_sum = 0.0;    // sum of leaf_ep over the good set
    bool fer_unreachable = false;    // FER target admits no channel at all
};

/// Fully polarized code: all-zeros map, good set from sorted leaf EPs.
/// Rate target picks round(R*N) channels; FER target the maximal sorted
/// prefix with EP sum <= E. Ties prefer the larger bit index.
Construction construct_fp(const ReliabilityTree& tree, Target target);

/// Algorithm-style relaxed construction (scenario Gc, Bc or Ac): top-down
/// sweep marks nodes relaxed by threshold (bad-side relaxation also requires
/// the no-rate-loss guard), children inherit label and EP, then the good set
/// is selected from the adjusted leaf EPs.
Construction construct_relaxed(const ReliabilityTree& tree, Scenario scenario,
                               const Thresholds& th, Target target);

/// Modified relaxed polarization: relaxes every maximal rate-1 subtree of the
/// given FP code (and rate-0 subtrees for AcMrp) while keeping its good set.
Construction construct_mrp(const Construction& fp, const ReliabilityTree& tree,
                           Scenario scenario);

}  // namespace rpolar
