#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <random>
#include <set>

#include "monospec/ca.hpp"
#include "oracles.hpp"

using namespace monospec;
using ca::CaRuleVector;
using ca::CaState;

namespace {

CaState state_of(const std::string& bits) { return CaState::parse(bits); }

CaRuleVector uniform_rules(int rule, std::size_t n) {
    return CaRuleVector(std::vector<int>(n, rule));
}

// Every length-n vector over {90,150}, encoded by the bits of `mask`.
CaRuleVector hybrid_from_mask(unsigned mask, std::size_t n) {
    std::vector<int> rules(n);
    for (std::size_t i = 0; i < n; ++i) rules[i] = (mask >> i) & 1u ? 150 : 90;
    return CaRuleVector(std::move(rules));
}

const CaRuleVector kPaperFy = CaRuleVector::parse("150,90,150,90,90,90,150,90");
const CaRuleVector kPaperFx = CaRuleVector::parse("150,150,90,150,90,150,90,150");

}  // namespace

TEST_CASE("step applies each cell's own rule with null boundary") {
    CHECK(ca::step(state_of("010"), uniform_rules(90, 3)) == state_of("101"));
    CHECK(ca::step(state_of("1111"), uniform_rules(0, 4)) == state_of("0000"));
    CHECK(ca::step(state_of("1011"), uniform_rules(204, 4)) == state_of("1011"));
    // 170 copies the right neighbor, 240 the left.
    CHECK(ca::step(state_of("100"), uniform_rules(170, 3)) == state_of("000"));
    CHECK(ca::step(state_of("001"), uniform_rules(170, 3)) == state_of("010"));
    CHECK(ca::step(state_of("100"), uniform_rules(240, 3)) == state_of("010"));
    CHECK(ca::step(state_of("110"), uniform_rules(60, 3)) == state_of("101"));
    CHECK(ca::step(state_of("110"), uniform_rules(102, 3)) == state_of("010"));
}

TEST_CASE("step rejects mismatched lengths") {
    CHECK_THROWS_AS(ca::step(state_of("01"), uniform_rules(90, 3)), DimensionError);
}

TEST_CASE("the zero state is fixed under every linear rule vector") {
    std::mt19937_64 engine(7);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<int> rules(8);
        for (int& r : rules) r = ca::kLinearRules[engine() % 8];
        const CaState zero(std::vector<std::uint8_t>(8, 0));
        CHECK(ca::step(zero, CaRuleVector(rules)).all_zero());
    }
}

TEST_CASE("step is linear over GF(2)") {
    std::mt19937_64 engine(11);
    const std::size_t n = 6;
    for (int trial = 0; trial < 8; ++trial) {
        std::vector<int> rules(n);
        for (int& r : rules) r = ca::kLinearRules[engine() % 8];
        const CaRuleVector rv(rules);
        for (unsigned a = 0; a < (1u << n); ++a)
            for (unsigned b = 0; b < (1u << n); ++b) {
                std::vector<std::uint8_t> sa(n), sb(n), sx(n);
                for (std::size_t i = 0; i < n; ++i) {
                    sa[i] = (a >> i) & 1u;
                    sb[i] = (b >> i) & 1u;
                    sx[i] = sa[i] ^ sb[i];
                }
                const CaState out_x = ca::step(CaState(sx), rv);
                const CaState out_a = ca::step(CaState(sa), rv);
                const CaState out_b = ca::step(CaState(sb), rv);
                bool equal = true;
                for (std::size_t i = 0; i < n; ++i)
                    equal &= out_x.bits[i] == (out_a.bits[i] ^ out_b.bits[i]);
                REQUIRE(equal);
            }
    }
}

TEST_CASE("transition matrix of (90,90)") {
    const ca::BitMatrix m = ca::transition_matrix(CaRuleVector::parse("90,90"));
    CHECK(m.at(0, 0) == 0);
    CHECK(m.at(0, 1) == 1);
    CHECK(m.at(1, 0) == 1);
    CHECK(m.at(1, 1) == 0);
}

TEST_CASE("transition matrix diagonal encodes the rule vector") {
    const ca::BitMatrix m = ca::transition_matrix(kPaperFy);
    const int expected_diag[8] = {1, 0, 1, 0, 0, 0, 1, 0};
    for (int i = 0; i < 8; ++i) CHECK(m.at(i, i) == expected_diag[i]);
    for (int i = 0; i + 1 < 8; ++i) {
        CHECK(m.at(i, i + 1) == 1);
        CHECK(m.at(i + 1, i) == 1);
    }
}

TEST_CASE("transition matrix rejects non-hybrid vectors") {
    CHECK_THROWS_AS(ca::transition_matrix(CaRuleVector::parse("90,60,150")),
                    UnsupportedRuleError);
    CHECK_THROWS_AS(ca::characteristic_polynomial(uniform_rules(204, 4)),
                    UnsupportedRuleError);
}

TEST_CASE("step equals matrix multiplication for every hybrid vector, exhaustive states") {
    for (std::size_t n = 1; n <= 12; ++n) {
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
            const CaRuleVector rv = hybrid_from_mask(mask, n);
            const ca::BitMatrix m = ca::transition_matrix(rv);
            for (unsigned s = 0; s < (1u << n); ++s) {
                std::vector<std::uint8_t> bits(n);
                for (std::size_t i = 0; i < n; ++i) bits[i] = (s >> i) & 1u;
                const CaState state(bits);
                if (!(ca::step(state, rv) == ca::apply(m, state))) {
                    REQUIRE(ca::step(state, rv) == ca::apply(m, state));
                }
            }
        }
    }
}

TEST_CASE("characteristic polynomial matches the published example") {
    const ca::Gf2Poly f = ca::characteristic_polynomial(kPaperFy);
    CHECK(f.to_string() == "x^8+x^7+x^5+x^3+1");
    ca::Gf2Poly expected;
    for (int bit : {8, 7, 5, 3, 0}) expected.set_coeff(static_cast<std::size_t>(bit));
    CHECK(f == expected);
}

TEST_CASE("characteristic polynomial of a single rule-90 cell is x") {
    CHECK(ca::characteristic_polynomial(uniform_rules(90, 1)).to_string() == "x");
}

TEST_CASE("characteristic polynomial of the second paper rule set is primitive") {
    const ca::Gf2Poly f = ca::characteristic_polynomial(kPaperFx);
    CHECK(f.degree() == 8);
    CHECK(ca::is_primitive(f));
    CHECK(oracle::ca_maximal_by_walk(kPaperFx));
}

TEST_CASE("is_maximal on the paper rule sets and a known non-maximal one") {
    CHECK(ca::is_maximal(kPaperFy));
    CHECK(ca::is_maximal(kPaperFx));
    CHECK_FALSE(ca::is_maximal(uniform_rules(90, 8)));
    CHECK_FALSE(oracle::ca_maximal_by_walk(uniform_rules(90, 8)));
}

TEST_CASE("is_maximal guards its preconditions") {
    CHECK_THROWS_AS(ca::is_maximal(uniform_rules(204, 8)), UnsupportedRuleError);
    CHECK_THROWS_AS(ca::is_maximal(uniform_rules(90, 25)), CapabilityError);
}

TEST_CASE("primitivity test agrees with the exhaustive cycle walk, all 256 vectors at n=8") {
    int maximal_count = 0;
    for (unsigned mask = 0; mask < 256; ++mask) {
        const CaRuleVector rv = hybrid_from_mask(mask, 8);
        const bool fast = ca::is_maximal(rv);
        const bool slow = oracle::ca_maximal_by_walk(rv);
        REQUIRE(fast == slow);
        maximal_count += fast;
    }
    CHECK(maximal_count > 0);
}

TEST_CASE("primitivity/walk agreement also holds at other register lengths") {
    for (std::size_t n : {std::size_t{4}, std::size_t{6}, std::size_t{11}}) {
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
            const CaRuleVector rv = hybrid_from_mask(mask, n);
            REQUIRE(ca::is_maximal(rv) == oracle::ca_maximal_by_walk(rv));
        }
    }
}

TEST_CASE("m-sequence period covers every nonzero byte exactly once") {
    const auto seq = ca::m_sequence(kPaperFy, CaState::parse("00000001"), 255);
    std::set<std::uint8_t> seen(seq.begin(), seq.end());
    CHECK(seen.size() == 255);
    CHECK(seen.count(0) == 0);

    const auto seq2 = ca::m_sequence(kPaperFy, CaState::parse("10110001"), 510);
    for (std::size_t t = 0; t < 255; ++t) REQUIRE(seq2[t + 255] == seq2[t]);
}

TEST_CASE("m-sequence golden prefix from seed 00000001") {
    // First bytes stepped by hand for rules (150,90,150,90,90,90,150,90).
    const auto seq = ca::m_sequence(kPaperFy, CaState::parse("00000001"), 6);
    const std::uint8_t expected[6] = {0x01, 0x02, 0x07, 0x0F, 0x1B, 0x39};
    for (int i = 0; i < 6; ++i) CHECK(seq[i] == expected[i]);
}

TEST_CASE("m-sequence golden file") {
    std::ifstream in(std::string(MONOSPEC_TEST_DATA_DIR) + "/msequence_fy_seed01.hex");
    REQUIRE(in.good());
    std::vector<std::uint8_t> expected;
    unsigned value = 0;
    while (in >> std::hex >> value) expected.push_back(static_cast<std::uint8_t>(value));
    REQUIRE(expected.size() == 255);
    const auto seq = ca::m_sequence(kPaperFy, CaState::parse("00000001"), 255);
    for (std::size_t i = 0; i < 255; ++i) REQUIRE(seq[i] == expected[i]);
}

TEST_CASE("m-sequence rejects degenerate input") {
    CHECK_THROWS_AS(ca::m_sequence(kPaperFy, CaState::parse("00000000"), 10),
                    DegenerateSeedError);
    CHECK_THROWS_AS(ca::m_sequence(uniform_rules(90, 8), CaState::parse("00000001"), 10),
                    NonMaximalError);
    CHECK_THROWS_AS(ca::m_sequence(kPaperFy, CaState::parse("0001"), 10), DimensionError);
}

TEST_CASE("rule vector and state serialization round-trips") {
    CHECK(CaRuleVector::parse("150,90,150,90,90,90,150,90").to_string() ==
          "150,90,150,90,90,90,150,90");
    CHECK(CaState::parse("00101101").to_string() == "00101101");
    CHECK(CaState::from_byte(0x2D).to_string() == "00101101");
    CHECK(CaState::parse("00101101").to_byte() == 0x2D);
    CHECK_THROWS_AS(CaRuleVector::parse("150,91"), UnsupportedRuleError);
    CHECK_THROWS_AS(CaState::parse("0012"), ConfigError);
}
