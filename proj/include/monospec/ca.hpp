#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "monospec/errors.hpp"

namespace monospec::ca {

// The eight linear Wolfram rules. Only these may appear in a rule vector.
inline constexpr int kLinearRules[8] = {0, 60, 90, 102, 150, 170, 204, 240};

bool is_linear_rule(int rule);

// Per-cell rule assignment of an n-cell nonuniform CA.
struct CaRuleVector {
    std::vector<int> rules;

    CaRuleVector() = default;
    explicit CaRuleVector(std::vector<int> r);

    std::size_t size() const { return rules.size(); }

    // True iff every cell runs rule 90 or rule 150; only such vectors admit
    // the tridiagonal transition-matrix form.
    bool is_hybrid_90_150() const;

    // "150,90,150,90,90,90,150,90"
    static CaRuleVector parse(const std::string& text);
    std::string to_string() const;

    bool operator==(const CaRuleVector&) const = default;
};

// Cell states, cell 1 first. Cells outside [1,n] read as zero (null boundary).
struct CaState {
    std::vector<std::uint8_t> bits;

    CaState() = default;
    explicit CaState(std::vector<std::uint8_t> b) : bits(std::move(b)) {}

    std::size_t size() const { return bits.size(); }
    bool all_zero() const;

    // 8-cell states convert to bytes with cell 1 as the most significant bit.
    static CaState from_byte(std::uint8_t value);
    std::uint8_t to_byte() const;

    // "00000001" (cell 1 first)
    static CaState parse(const std::string& text);
    std::string to_string() const;

    bool operator==(const CaState&) const = default;
};

// One synchronous update of every cell by its own rule.
CaState step(const CaState& state, const CaRuleVector& rules);

// n x n matrix over GF(2), row-major {0,1} entries.
struct BitMatrix {
    int n = 0;
    std::vector<std::uint8_t> entries;

    explicit BitMatrix(int size) : n(size), entries(static_cast<std::size_t>(size) * size, 0) {}
    std::uint8_t& at(int r, int c) { return entries[static_cast<std::size_t>(r) * n + c]; }
    std::uint8_t at(int r, int c) const { return entries[static_cast<std::size_t>(r) * n + c]; }
};

// Tridiagonal transition matrix of a hybrid 90/150 vector: unit off-diagonals,
// diagonal 1 where rule 150 and 0 where rule 90. step(s) == T*s over GF(2).
BitMatrix transition_matrix(const CaRuleVector& rules);

// T*s over GF(2).
CaState apply(const BitMatrix& m, const CaState& s);

// Polynomial over GF(2), bit i = coefficient of x^i.
struct Gf2Poly {
    std::vector<std::uint64_t> words;

    Gf2Poly() = default;

    bool coeff(std::size_t i) const;
    void set_coeff(std::size_t i);
    int degree() const;  // -1 for the zero polynomial

    static Gf2Poly one();
    static Gf2Poly x();

    // "x^8+x^7+x^5+x^3+1"
    std::string to_string() const;

    bool operator==(const Gf2Poly&) const = default;
};

Gf2Poly gf2_add(const Gf2Poly& a, const Gf2Poly& b);
Gf2Poly gf2_shift(const Gf2Poly& a);  // multiply by x

// det(T + xI) by the tridiagonal recurrence
// p0 = 1, p1 = d1 + x, pi = (di + x) p_{i-1} + p_{i-2}.
Gf2Poly characteristic_polynomial(const CaRuleVector& rules);

// Order-of-x primitivity test; degree must be in [1, 24].
bool is_primitive(const Gf2Poly& f);

// True iff the state cycle through any nonzero seed has period 2^n - 1.
// Implemented as primitivity of the characteristic polynomial; n <= 24.
bool is_maximal(const CaRuleVector& rules);

// Nonzero-byte stream of an 8-cell maximal register: byte t is the state
// after t steps, so byte 0 is the seed itself. Period is exactly 255.
std::vector<std::uint8_t> m_sequence(const CaRuleVector& rules, const CaState& seed,
                                     std::size_t length);

// Same walk without the maximality/seed guarantees. Decryption with a wrong
// key has to run the register it was handed, whatever cycle that lands on;
// only 8-cell shape is enforced. Identical to m_sequence on valid input.
std::vector<std::uint8_t> raw_sequence(const CaRuleVector& rules, const CaState& seed,
                                       std::size_t length);

}  // namespace monospec::ca
