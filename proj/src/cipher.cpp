#include "monospec/cipher.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

namespace monospec::cipher {

CombineScheme combine_scheme_from_string(const std::string& name) {
    if (name == "interleave") return CombineScheme::interleave;
    if (name == "concatenate") return CombineScheme::concatenate;
    throw ConfigError("unknown combine scheme: '" + name + "'");
}

std::string to_string(CombineScheme scheme) {
    return scheme == CombineScheme::interleave ? "interleave" : "concatenate";
}

void CipherKey::validate_structure() const {
    chaos.validate();
    if (fx_rules.size() != 8 || fy_rules.size() != 8)
        throw UnsupportedRuleError("cipher rule vectors must have 8 cells");
    if (fx_seed.size() != 8 || fy_seed.size() != 8)
        throw DegenerateSeedError("cipher seeds must have 8 cells");
}

void CipherKey::validate() const {
    validate_structure();
    if (!ca::is_maximal(fx_rules))
        throw NonMaximalError("fx rules are not maximal: " + fx_rules.to_string());
    if (!ca::is_maximal(fy_rules))
        throw NonMaximalError("fy rules are not maximal: " + fy_rules.to_string());
    if (fx_seed.all_zero() || fy_seed.all_zero())
        throw DegenerateSeedError("cipher seeds must be nonzero");
}

CipherKey CipherKey::paper_default() {
    CipherKey key;
    key.fx_rules = ca::CaRuleVector::parse("150,150,90,150,90,150,90,150");
    key.fy_rules = ca::CaRuleVector::parse("150,90,150,90,90,90,150,90");
    key.fx_seed = ca::CaState::parse("00000001");
    key.fy_seed = ca::CaState::parse("00000001");
    return key;
}

CipherKey CipherKey::parse(const std::string& text) {
    // One structured document: the chaos fields plus the CA and scheme fields.
    std::map<std::string, std::string> fields;
    std::istringstream in(text);
    std::string line, chaos_part;
    auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        const auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    static const char* kCipherFields[] = {"fx_rules", "fx_seed", "fy_rules",
                                          "fy_seed", "combine_scheme", "selection_offset"};
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("malformed key line: '" + line + "'");
        const std::string name = trim(line.substr(0, eq));
        const bool ours = std::find(std::begin(kCipherFields), std::end(kCipherFields), name) !=
                          std::end(kCipherFields);
        if (ours)
            fields[name] = trim(line.substr(eq + 1));
        else
            chaos_part += line + "\n";
    }
    auto need = [&](const char* name) {
        auto it = fields.find(name);
        if (it == fields.end()) throw ConfigError(std::string("missing key field: ") + name);
        return it->second;
    };
    CipherKey key;
    key.chaos = chaos::HyperchaosKey::parse(chaos_part);
    key.fx_rules = ca::CaRuleVector::parse(need("fx_rules"));
    key.fx_seed = ca::CaState::parse(need("fx_seed"));
    key.fy_rules = ca::CaRuleVector::parse(need("fy_rules"));
    key.fy_seed = ca::CaState::parse(need("fy_seed"));
    key.combine_scheme = combine_scheme_from_string(need("combine_scheme"));
    key.selection_offset = std::stoull(need("selection_offset"));
    key.validate();
    return key;
}

std::string CipherKey::to_string() const {
    std::string out = chaos.to_string();
    out += "fx_rules = " + fx_rules.to_string() + "\n";
    out += "fx_seed = " + fx_seed.to_string() + "\n";
    out += "fy_rules = " + fy_rules.to_string() + "\n";
    out += "fy_seed = " + fy_seed.to_string() + "\n";
    out += "combine_scheme = " + cipher::to_string(combine_scheme) + "\n";
    out += "selection_offset = " + std::to_string(selection_offset) + "\n";
    return out;
}

bool PermutationKey::is_bijection() const {
    std::vector<bool> seen(indices.size(), false);
    for (std::uint32_t idx : indices) {
        if (idx >= indices.size() || seen[idx]) return false;
        seen[idx] = true;
    }
    return true;
}

PermutationKey permutation_key(const chaos::HyperchaosKey& key, std::size_t length,
                               CombineScheme scheme, CipherStats* stats) {
    if (length < 1) throw ConfigError("permutation length must be >= 1");
    if (length > std::numeric_limits<std::uint32_t>::max())
        throw ConfigError("permutation length exceeds 32-bit index range");

    const std::size_t per_component = (length + 3) / 4;
    const auto seq = chaos::key_sequences(key, per_component * 4);
    if (stats) stats->chaos_samples += 4 * per_component + key.burn_in;

    std::vector<double> combined(length);
    if (scheme == CombineScheme::interleave) {
        // x1,y1,z1,w1,x2,... truncated to length.
        for (std::size_t t = 0; t < per_component; ++t) {
            const std::size_t base = 4 * t;
            if (base < length) combined[base] = seq.x[t];
            if (base + 1 < length) combined[base + 1] = seq.y[t];
            if (base + 2 < length) combined[base + 2] = seq.z[t];
            if (base + 3 < length) combined[base + 3] = seq.w[t];
        }
    } else {
        const std::vector<double>* parts[4] = {&seq.x, &seq.y, &seq.z, &seq.w};
        std::size_t pos = 0;
        for (const auto* part : parts)
            for (double v : *part) {
                if (pos >= length) break;
                combined[pos++] = v;
            }
    }

    PermutationKey perm;
    perm.indices = argsort_ascending(combined, stats ? &stats->sort_comparisons : nullptr);
    return perm;
}

std::vector<std::uint32_t> argsort_ascending(const std::vector<double>& values,
                                             std::uint64_t* comparisons) {
    std::vector<std::uint32_t> order(values.size());
    std::iota(order.begin(), order.end(), 0u);
    std::uint64_t count = 0;
    std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        ++count;
        return values[a] < values[b];
    });
    if (comparisons) *comparisons += count;
    return order;
}

std::vector<std::uint8_t> permute(const std::vector<std::uint8_t>& data,
                                  const PermutationKey& key) {
    if (data.size() != key.size())
        throw DimensionError("permutation length does not match data length");
    std::vector<std::uint8_t> out(data.size());
    for (std::size_t j = 0; j < data.size(); ++j) out[j] = data[key.indices[j]];
    return out;
}

std::vector<std::uint8_t> inverse_permute(const std::vector<std::uint8_t>& data,
                                          const PermutationKey& key) {
    if (data.size() != key.size())
        throw DimensionError("permutation length does not match data length");
    std::vector<std::uint8_t> out(data.size());
    for (std::size_t j = 0; j < data.size(); ++j) out[key.indices[j]] = data[j];
    return out;
}

namespace {

// Shared block composer; the raw walk makes wrong-key decryption runnable.
std::vector<std::uint8_t> compose_keystream(const CipherKey& key, std::size_t length,
                                            CipherStats* stats) {
    const std::size_t blocks = (length + 254) / 255;  // k = ceil(L/255)
    const auto fx = ca::raw_sequence(key.fx_rules, key.fx_seed, 255);
    const auto fy = ca::raw_sequence(key.fy_rules, key.fy_seed, 255);

    std::vector<std::uint8_t> out;
    out.reserve(length);
    for (std::size_t i = 0; i < blocks && out.size() < length; ++i) {
        const std::uint8_t seed_byte = fy[(key.selection_offset + i) % 255];
        const auto fyi = ca::raw_sequence(key.fy_rules, ca::CaState::from_byte(seed_byte), 255);
        for (std::size_t j = 0; j < 255 && out.size() < length; ++j)
            out.push_back(static_cast<std::uint8_t>(fx[j] ^ fyi[j]));
    }
    if (stats) stats->keystream_bytes += out.size() + 2 * 255;
    return out;
}

}  // namespace

std::vector<std::uint8_t> keystream(const CipherKey& key, std::size_t length,
                                    CipherStats* stats) {
    key.validate();
    return compose_keystream(key, length, stats);
}

CipherText encrypt(const GrayPlane& plain, const CipherKey& key, CipherStats* stats) {
    key.validate();
    const std::size_t length = plain.size();
    const auto perm = permutation_key(key.chaos, length, key.combine_scheme, stats);
    auto shuffled = permute(plain.pixels, perm);
    if (stats) stats->bytes_permuted += length;
    const auto z = compose_keystream(key, length, stats);
    CipherText ct;
    ct.rows = static_cast<std::uint32_t>(plain.height);
    ct.cols = static_cast<std::uint32_t>(plain.width);
    ct.bytes.resize(length);
    for (std::size_t i = 0; i < length; ++i)
        ct.bytes[i] = static_cast<std::uint8_t>(shuffled[i] ^ z[i]);
    if (stats) stats->bytes_xored += length;
    return ct;
}

GrayPlane decrypt(const CipherText& cipher, const CipherKey& key, CipherStats* stats) {
    key.validate_structure();
    const std::size_t length = cipher.size();
    if (length != static_cast<std::size_t>(cipher.rows) * cipher.cols)
        throw DimensionError("ciphertext length does not match its stated dimensions");
    const auto z = compose_keystream(key, length, stats);
    std::vector<std::uint8_t> shuffled(length);
    for (std::size_t i = 0; i < length; ++i)
        shuffled[i] = static_cast<std::uint8_t>(cipher.bytes[i] ^ z[i]);
    if (stats) stats->bytes_xored += length;
    const auto perm = permutation_key(key.chaos, length, key.combine_scheme, stats);
    GrayPlane plain(static_cast<int>(cipher.cols), static_cast<int>(cipher.rows));
    plain.pixels = inverse_permute(shuffled, perm);
    if (stats) stats->bytes_permuted += length;
    return plain;
}

namespace {

constexpr char kMagic[8] = {'M', 'S', 'E', 'C', 'I', 'P', 'H', '1'};

void put_u32_be(std::ostream& out, std::uint32_t v) {
    const char bytes[4] = {static_cast<char>(v >> 24), static_cast<char>(v >> 16),
                           static_cast<char>(v >> 8), static_cast<char>(v)};
    out.write(bytes, 4);
}

std::uint32_t get_u32_be(std::istream& in, const std::string& path) {
    unsigned char bytes[4];
    in.read(reinterpret_cast<char*>(bytes), 4);
    if (in.gcount() != 4) throw IoError(path + ": truncated ciphertext header");
    return (std::uint32_t{bytes[0]} << 24) | (std::uint32_t{bytes[1]} << 16) |
           (std::uint32_t{bytes[2]} << 8) | std::uint32_t{bytes[3]};
}

}  // namespace

void write_ciphertext(const CipherText& ct, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out.write(kMagic, sizeof(kMagic));
    put_u32_be(out, ct.rows);
    put_u32_be(out, ct.cols);
    out.write(reinterpret_cast<const char*>(ct.bytes.data()),
              static_cast<std::streamsize>(ct.bytes.size()));
    if (!out) throw IoError("write failed: " + path);
}

CipherText read_ciphertext(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    char magic[8];
    in.read(magic, sizeof(magic));
    if (in.gcount() != sizeof(magic) || !std::equal(std::begin(magic), std::end(magic), kMagic))
        throw IoError(path + ": bad ciphertext magic");
    CipherText ct;
    ct.rows = get_u32_be(in, path);
    ct.cols = get_u32_be(in, path);
    const std::size_t length = static_cast<std::size_t>(ct.rows) * ct.cols;
    ct.bytes.resize(length);
    in.read(reinterpret_cast<char*>(ct.bytes.data()), static_cast<std::streamsize>(length));
    if (in.gcount() != static_cast<std::streamsize>(length))
        throw IoError(path + ": truncated ciphertext body");
    return ct;
}

}  // namespace monospec::cipher
