#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rpolar/relaxation.hpp"
#include "rpolar/rng.hpp"

namespace rpolar {

using BitVec = std::vector<std::uint8_t>;

/// x = u B_N F^{xn} with transforms skipped inside relaxed subtrees: a
/// relaxed node passes both halves of its block through unchanged, so a
/// fully relaxed tree degenerates to the bit-reversal wiring alone.
BitVec encode(const BitVec& u, const RelaxationMap& map);

/// Inverse of encode for the same map.
BitVec encode_inverse(const BitVec& x, const RelaxationMap& map);

/// Explicit N x N generator implied by a map, row i = encode(e_i).
std::vector<BitVec> generator_matrix(const RelaxationMap& map);

/// Places info bits on the good set (ascending), zeros elsewhere.
BitVec assemble_u(const BitVec& info, const CodeSpec& spec);

struct DecodeResult {
    BitVec u_hat;                  // length N, frozen positions zero
    BitVec info_bits;              // good-set order
    std::optional<bool> crc_ok;
    std::optional<int> list_rank;  // metric rank of the returned path
};

struct DecodeOptions {
    bool min_sum = false;            // use the min-sum f approximation
    SplitMix64* tie_rng = nullptr;   // fair tie-break for zero LLRs (genie or
                                     // measurement runs); default resolves to 0
    std::uint64_t* op_count = nullptr;  // accumulates LLR-combining ops (f and g)
};

/// Relaxed successive cancellation: log-domain f/g at polarized nodes,
/// verbatim half pass-through at relaxed nodes. Erasures are LLR 0.
DecodeResult rscd_decode(const std::vector<double>& llr, const CodeSpec& spec,
                         const DecodeOptions& opt = {});

/// Relaxed SC list decoding with penalty path metrics. With a CRC configured
/// the best-metric path that passes it wins, otherwise the best-metric path.
/// L = 1 reproduces rscd_decode bit for bit.
DecodeResult rscl_decode(const std::vector<double>& llr, const CodeSpec& spec, int list_size,
                         const DecodeOptions& opt = {});

/// Simplified SC on top of the relaxed recursion: rate-0 subtrees are skipped,
/// rate-1 subtrees hard-decided at the root and re-encoded. Output matches
/// rscd_decode bit for bit (rate-1 shortcuts defer to the recursion whenever a
/// zero LLR makes batch hard decisions diverge from sequential ones).
DecodeResult sscd_decode(const std::vector<double>& llr, const CodeSpec& spec,
                         const DecodeOptions& opt = {});

/// Genie-aided pass: every decision is compared against u_true and then
/// corrected before decoding continues. err[i] counts within this call.
void genie_decode(const std::vector<double>& llr, const RelaxationMap& map,
                  const BitVec& u_true, std::vector<std::uint64_t>& err, SplitMix64& tie_rng);

BitVec crc_attach(const BitVec& info, const CrcConfig& cfg);
bool crc_check(const BitVec& bits_with_crc, const CrcConfig& cfg);

/// Exact boxplus ln((1+e^{a+b})/(e^a+e^b)) with infinity handling.
double boxplus(double a, double b);

}  // namespace rpolar
