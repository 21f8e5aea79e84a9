#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "rpolar/channel.hpp"

namespace rpolar {

/// Thrown when a polarized output alphabet would exceed the configured cap.
class AlphabetCapError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultAlphabetCap = 1'000'000;

/// W-(y1,y2|u1) = 1/2 sum_{u2} W(y1|u1^u2) W(y2|u2).
/// Outputs with equal posterior are merged losslessly; dead outputs are dropped.
DiscreteBms polarize_minus(const DiscreteBms& w, std::size_t cap = kDefaultAlphabetCap);

/// W+(y1,y2,u1|u2) = 1/2 W(y1|u1^u2) W(y2|u2), merged like polarize_minus.
DiscreteBms polarize_plus(const DiscreteBms& w, std::size_t cap = kDefaultAlphabetCap);

struct BitChannelExact {
    DiscreteBms channel;
    std::string lineage;  // over {-,+}, root-first
};

/// Exact bit-channel W_{2^n}^{(i)}, i in [1..2^n]: the binary expansion of i-1,
/// MSB first, selects minus (0) or plus (1) at each level.
BitChannelExact exact_bit_channel(const DiscreteBms& base, int n, std::uint64_t i,
                                  std::size_t cap = kDefaultAlphabetCap);

struct AppendixReport {
    double e_minus_exact = 0.0;
    double e_minus_formula = 0.0;
    double e_plus_exact = 0.0;
    double e_plus_lb = 0.0;
    bool pass = false;
};

/// Checks E(W-) = 2E - 2E^2 (within 1e-10) and E(W+) >= 2E^2 (slack 1e-12).
AppendixReport verify_appendix_lemma(const DiscreteBms& w);

}  // namespace rpolar
