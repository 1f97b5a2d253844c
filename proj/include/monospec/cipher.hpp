#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "monospec/ca.hpp"
#include "monospec/hyperchaos.hpp"
#include "monospec/image.hpp"

namespace monospec::cipher {

enum class CombineScheme : std::uint8_t { interleave, concatenate };

CombineScheme combine_scheme_from_string(const std::string& name);
std::string to_string(CombineScheme scheme);

// Full key material: hyperchaos drives the permutation stage, the two CA
// registers drive the diffusion keystream.
struct CipherKey {
    chaos::HyperchaosKey chaos;
    ca::CaRuleVector fx_rules;
    ca::CaState fx_seed;
    ca::CaRuleVector fy_rules;
    ca::CaState fy_seed;
    CombineScheme combine_scheme = CombineScheme::interleave;
    std::size_t selection_offset = 0;

    void validate() const;
    // Shape-only checks (8-cell registers, finite chaos parameters). Decrypt
    // uses this so key-sensitivity runs can feed deliberately wrong keys.
    void validate_structure() const;

    static CipherKey paper_default();
    static CipherKey parse(const std::string& text);
    std::string to_string() const;
};

// Source-index sequence of the shuffle: output j takes input indices[j].
struct PermutationKey {
    std::vector<std::uint32_t> indices;

    std::size_t size() const { return indices.size(); }
    bool is_bijection() const;
};

struct CipherText {
    std::vector<std::uint8_t> bytes;
    std::uint32_t rows = 0;  // M
    std::uint32_t cols = 0;  // N

    std::size_t size() const { return bytes.size(); }
};

// Operation counters for the single-pass scaling analysis.
struct CipherStats {
    std::uint64_t chaos_samples = 0;
    std::uint64_t sort_comparisons = 0;
    std::uint64_t keystream_bytes = 0;
    std::uint64_t bytes_permuted = 0;
    std::uint64_t bytes_xored = 0;

    std::uint64_t total_touches() const {
        return chaos_samples + sort_comparisons + keystream_bytes + bytes_permuted + bytes_xored;
    }
};

// Ascending argsort with ties broken by original index, so chaotic values
// colliding in finite precision sort reproducibly.
std::vector<std::uint32_t> argsort_ascending(const std::vector<double>& values,
                                             std::uint64_t* comparisons = nullptr);

// Trim, combine per scheme, argsort ascending with index-order tie breaking.
PermutationKey permutation_key(const chaos::HyperchaosKey& key, std::size_t length,
                               CombineScheme scheme, CipherStats* stats = nullptr);

std::vector<std::uint8_t> permute(const std::vector<std::uint8_t>& data,
                                  const PermutationKey& key);
std::vector<std::uint8_t> inverse_permute(const std::vector<std::uint8_t>& data,
                                          const PermutationKey& key);

// Diffusion keystream Z': per 255-byte block i, a fresh m-sequence seeded by
// the i-th selected byte of f_y, XOR-ed with the f_x period, truncated to L.
std::vector<std::uint8_t> keystream(const CipherKey& key, std::size_t length,
                                    CipherStats* stats = nullptr);

CipherText encrypt(const GrayPlane& plain, const CipherKey& key, CipherStats* stats = nullptr);
GrayPlane decrypt(const CipherText& cipher, const CipherKey& key, CipherStats* stats = nullptr);

// Container format: 8-byte magic, M and N as 32-bit big-endian, raw bytes.
void write_ciphertext(const CipherText& ct, const std::string& path);
CipherText read_ciphertext(const std::string& path);

}  // namespace monospec::cipher
