#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <random>

#include "monospec/cipher.hpp"
#include "oracles.hpp"

using namespace monospec;
using cipher::CipherKey;
using cipher::CombineScheme;

namespace {

CipherKey test_key(std::uint64_t variant = 0) {
    CipherKey key = CipherKey::paper_default();
    key.chaos.x0 = 1.0 + 1e-3 * static_cast<double>(variant % 97);
    key.chaos.y0 = -2.0 + 1e-3 * static_cast<double>(variant % 89);
    key.chaos.z0 = 3.0;
    key.chaos.w0 = 0.5;
    return key;
}

GrayPlane random_plane(int w, int h, std::uint64_t seed) {
    GrayPlane img(w, h);
    std::mt19937_64 engine(seed);
    for (auto& p : img.pixels) p = static_cast<std::uint8_t>(engine() & 0xff);
    return img;
}

std::array<std::size_t, 256> count_bytes(const std::vector<std::uint8_t>& bytes) {
    std::array<std::size_t, 256> counts{};
    for (std::uint8_t b : bytes) counts[b]++;
    return counts;
}

}  // namespace

TEST_CASE("argsort of sorted input is the identity; descending input reverses") {
    const std::vector<double> ascending{-3.0, -1.0, 0.5, 2.0};
    const auto id = cipher::argsort_ascending(ascending);
    for (std::uint32_t j = 0; j < id.size(); ++j) CHECK(id[j] == j);

    const std::vector<double> descending{9.0, 4.0, 1.0, 0.0};
    const auto rev = cipher::argsort_ascending(descending);
    CHECK(rev == std::vector<std::uint32_t>{3, 2, 1, 0});

    // Ties keep original order.
    const std::vector<double> ties{1.0, 0.0, 1.0, 0.0};
    CHECK(cipher::argsort_ascending(ties) == std::vector<std::uint32_t>{1, 3, 0, 2});
}

TEST_CASE("permutation_key matches the selection-sort argsort oracle") {
    const CipherKey key = test_key(5);
    const std::size_t length = 16;
    const auto perm = cipher::permutation_key(key.chaos, length, CombineScheme::interleave);

    const auto seq = chaos::key_sequences(key.chaos, length);
    std::vector<double> combined(length);
    for (std::size_t t = 0; t < length / 4; ++t) {
        combined[4 * t + 0] = seq.x[t];
        combined[4 * t + 1] = seq.y[t];
        combined[4 * t + 2] = seq.z[t];
        combined[4 * t + 3] = seq.w[t];
    }
    const auto expected = oracle::selection_argsort(combined);
    REQUIRE(perm.indices == expected);

    const auto cat = cipher::permutation_key(key.chaos, length, CombineScheme::concatenate);
    std::vector<double> concatenated;
    for (const auto* part : {&seq.x, &seq.y, &seq.z, &seq.w})
        concatenated.insert(concatenated.end(), part->begin(), part->end());
    concatenated.resize(length);
    REQUIRE(cat.indices == oracle::selection_argsort(concatenated));
}

TEST_CASE("permutation keys are bijections for random keys and odd lengths") {
    std::mt19937_64 engine(42);
    for (int trial = 0; trial < 200; ++trial) {
        const CipherKey key = test_key(engine());
        const std::size_t length = 1 + engine() % 500;
        const auto perm = cipher::permutation_key(key.chaos, length,
                                                  trial % 2 ? CombineScheme::interleave
                                                            : CombineScheme::concatenate);
        REQUIRE(perm.size() == length);
        REQUIRE(perm.is_bijection());
    }
}

TEST_CASE("permute applies the index sequence and inverse_permute undoes it") {
    cipher::PermutationKey identity;
    identity.indices = {0, 1, 2, 3};
    const std::vector<std::uint8_t> data{10, 20, 30, 40};
    CHECK(cipher::permute(data, identity) == data);

    cipher::PermutationKey reversal;
    reversal.indices = {3, 2, 1, 0};
    CHECK(cipher::permute(data, reversal) == std::vector<std::uint8_t>{40, 30, 20, 10});

    std::mt19937_64 engine(9);
    const std::size_t big = 10000;
    std::vector<double> values(big);
    for (double& v : values) v = static_cast<double>(engine()) / 1e9;
    cipher::PermutationKey random_perm;
    random_perm.indices = cipher::argsort_ascending(values);
    std::vector<std::uint8_t> payload(big);
    for (auto& b : payload) b = static_cast<std::uint8_t>(engine() & 0xff);
    CHECK(cipher::inverse_permute(cipher::permute(payload, random_perm), random_perm) ==
          payload);

    CHECK_THROWS_AS(cipher::permute(data, random_perm), DimensionError);
}

TEST_CASE("permutation preserves the byte histogram exactly") {
    const GrayPlane img = random_plane(64, 48, 77);
    const CipherKey key = test_key(3);
    const auto perm = cipher::permutation_key(key.chaos, img.size(), key.combine_scheme);
    const auto shuffled = cipher::permute(img.pixels, perm);
    CHECK(count_bytes(shuffled) == count_bytes(img.pixels));
}

TEST_CASE("keystream block count and aligned self-cancellation") {
    CipherKey key = test_key(1);
    CHECK(cipher::keystream(key, 255).size() == 255);
    CHECK(cipher::keystream(key, 600).size() == 600);

    // fx == fy with selection offset 0: the first selected seed is f_y's
    // own first byte, so block 1 XORs the sequence with itself.
    CipherKey aligned = key;
    aligned.fy_rules = aligned.fx_rules;
    aligned.fy_seed = aligned.fx_seed;
    aligned.selection_offset = 0;
    const auto z = cipher::keystream(aligned, 255);
    for (std::uint8_t b : z) REQUIRE(b == 0);
}

TEST_CASE("keystream matches a straight-line block oracle") {
    CipherKey key = test_key(8);
    key.selection_offset = 42;
    const std::size_t length = 600;  // k = 3 blocks
    const auto z = cipher::keystream(key, length);
    REQUIRE(z.size() == length);

    const auto fx = ca::m_sequence(key.fx_rules, key.fx_seed, 255);
    const auto fy = ca::m_sequence(key.fy_rules, key.fy_seed, 255);
    std::vector<std::uint8_t> expected;
    for (std::size_t i = 0; i < 3; ++i) {
        const auto fyi = ca::m_sequence(key.fy_rules,
                                        ca::CaState::from_byte(fy[(42 + i) % 255]), 255);
        for (std::size_t j = 0; j < 255; ++j)
            expected.push_back(static_cast<std::uint8_t>(fx[j] ^ fyi[j]));
    }
    expected.resize(length);
    REQUIRE(z == expected);
}

TEST_CASE("encrypt/decrypt round-trips bit-exact across sizes and keys") {
    std::mt19937_64 engine(2024);
    const std::pair<int, int> sizes[] = {{1, 1}, {13, 7}, {64, 64}, {101, 37}};
    for (int trial = 0; trial < 12; ++trial) {
        const auto [w, h] = sizes[trial % 4];
        const CipherKey key = test_key(engine());
        const GrayPlane plain = random_plane(w, h, engine());
        const cipher::CipherText ct = cipher::encrypt(plain, key);
        REQUIRE(ct.size() == plain.size());
        REQUIRE(ct.rows == static_cast<std::uint32_t>(h));
        REQUIRE(ct.cols == static_cast<std::uint32_t>(w));
        const GrayPlane back = cipher::decrypt(ct, key);
        REQUIRE(back == plain);
    }
}

TEST_CASE("encryption is deterministic for a fixed key") {
    const CipherKey key = test_key(12);
    const GrayPlane plain = random_plane(32, 32, 5);
    CHECK(cipher::encrypt(plain, key).bytes == cipher::encrypt(plain, key).bytes);
}

TEST_CASE("decrypting with a perturbed key decorrelates the output") {
    // Large enough that the 1e-10 chaos nudge has time to overturn the sort
    // order (the amplification horizon is ~75 time units).
    const CipherKey key = test_key(21);
    const GrayPlane plain = random_plane(512, 512, 99);
    const cipher::CipherText ct = cipher::encrypt(plain, key);

    auto correlation = [&](const GrayPlane& a, const GrayPlane& b) {
        double ma = 0, mb = 0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            ma += a.pixels[i];
            mb += b.pixels[i];
        }
        ma /= static_cast<double>(a.size());
        mb /= static_cast<double>(a.size());
        double saa = 0, sbb = 0, sab = 0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            const double da = a.pixels[i] - ma, db = b.pixels[i] - mb;
            saa += da * da;
            sbb += db * db;
            sab += da * db;
        }
        return sab / std::sqrt(saa * sbb);
    };

    // One rule changed (no longer maximal; decrypt still runs it).
    CipherKey rule_flip = key;
    rule_flip.fy_rules.rules[3] = rule_flip.fy_rules.rules[3] == 90 ? 150 : 90;
    const GrayPlane wrong_rules = cipher::decrypt(ct, rule_flip);
    std::size_t diff = 0;
    for (std::size_t i = 0; i < plain.size(); ++i)
        diff += wrong_rules.pixels[i] != plain.pixels[i];
    CHECK(static_cast<double>(diff) / static_cast<double>(plain.size()) > 0.99);
    CHECK(std::abs(correlation(wrong_rules, plain)) < 0.1);

    CipherKey chaos_nudge = key;
    chaos_nudge.chaos.x0 += 1e-10;
    const GrayPlane wrong_chaos = cipher::decrypt(ct, chaos_nudge);
    diff = 0;
    for (std::size_t i = 0; i < plain.size(); ++i)
        diff += wrong_chaos.pixels[i] != plain.pixels[i];
    CHECK(static_cast<double>(diff) / static_cast<double>(plain.size()) > 0.99);
    CHECK(std::abs(correlation(wrong_chaos, plain)) < 0.1);
}

TEST_CASE("key validation rejects degenerate material") {
    CipherKey key = test_key(0);
    key.fx_seed = ca::CaState::parse("00000000");
    CHECK_THROWS_AS(key.validate(), DegenerateSeedError);

    CipherKey nonmax = test_key(0);
    nonmax.fy_rules = ca::CaRuleVector::parse("90,90,90,90,90,90,90,90");
    CHECK_THROWS_AS(nonmax.validate(), NonMaximalError);
    CHECK_THROWS_AS(cipher::encrypt(random_plane(4, 4, 1), nonmax), NonMaximalError);
}

TEST_CASE("cipher key document round-trips") {
    CipherKey key = test_key(31);
    key.selection_offset = 17;
    key.combine_scheme = CombineScheme::concatenate;
    const CipherKey back = CipherKey::parse(key.to_string());
    CHECK(back.to_string() == key.to_string());
    CHECK(back.selection_offset == 17);
    CHECK(back.combine_scheme == CombineScheme::concatenate);
}

TEST_CASE("ciphertext container round-trips and rejects bad magic") {
    const auto dir = std::filesystem::temp_directory_path() / "monospec_cipher_test";
    std::filesystem::create_directories(dir);
    const std::string path = (dir / "ct.bin").string();

    const CipherKey key = test_key(2);
    const GrayPlane plain = random_plane(24, 16, 8);
    const cipher::CipherText ct = cipher::encrypt(plain, key);
    cipher::write_ciphertext(ct, path);
    const cipher::CipherText back = cipher::read_ciphertext(path);
    CHECK(back.rows == ct.rows);
    CHECK(back.cols == ct.cols);
    CHECK(back.bytes == ct.bytes);

    std::FILE* f = std::fopen(path.c_str(), "r+b");
    REQUIRE(f);
    std::fputc('X', f);
    std::fclose(f);
    CHECK_THROWS_AS(cipher::read_ciphertext(path), IoError);
    std::filesystem::remove_all(dir);
}
