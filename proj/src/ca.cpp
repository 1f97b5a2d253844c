#include "monospec/ca.hpp"

#include <algorithm>
#include <sstream>

namespace monospec::ca {

bool is_linear_rule(int rule) {
    return std::find(std::begin(kLinearRules), std::end(kLinearRules), rule) !=
           std::end(kLinearRules);
}

CaRuleVector::CaRuleVector(std::vector<int> r) : rules(std::move(r)) {
    if (rules.empty()) throw ConfigError("rule vector must have length >= 1");
    for (int rule : rules)
        if (!is_linear_rule(rule))
            throw UnsupportedRuleError("rule " + std::to_string(rule) + " is not linear");
}

bool CaRuleVector::is_hybrid_90_150() const {
    return std::all_of(rules.begin(), rules.end(), [](int r) { return r == 90 || r == 150; });
}

CaRuleVector CaRuleVector::parse(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t pos = 0;
        int value = std::stoi(item, &pos);
        while (pos < item.size() && std::isspace(static_cast<unsigned char>(item[pos]))) ++pos;
        if (pos != item.size()) throw ConfigError("malformed rule list: '" + text + "'");
        out.push_back(value);
    }
    return CaRuleVector(std::move(out));
}

std::string CaRuleVector::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < rules.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(rules[i]);
    }
    return out;
}

bool CaState::all_zero() const {
    return std::all_of(bits.begin(), bits.end(), [](std::uint8_t b) { return b == 0; });
}

CaState CaState::from_byte(std::uint8_t value) {
    std::vector<std::uint8_t> bits(8);
    for (int i = 0; i < 8; ++i) bits[i] = (value >> (7 - i)) & 1u;
    return CaState(std::move(bits));
}

std::uint8_t CaState::to_byte() const {
    if (bits.size() != 8) throw DimensionError("byte conversion requires an 8-cell state");
    std::uint8_t value = 0;
    for (int i = 0; i < 8; ++i) value = static_cast<std::uint8_t>((value << 1) | (bits[i] & 1u));
    return value;
}

CaState CaState::parse(const std::string& text) {
    std::vector<std::uint8_t> bits;
    bits.reserve(text.size());
    for (char c : text) {
        if (c == '0')
            bits.push_back(0);
        else if (c == '1')
            bits.push_back(1);
        else
            throw ConfigError("seed must be a binary string, got '" + text + "'");
    }
    if (bits.empty()) throw ConfigError("empty seed string");
    return CaState(std::move(bits));
}

std::string CaState::to_string() const {
    std::string out;
    out.reserve(bits.size());
    for (std::uint8_t b : bits) out += b ? '1' : '0';
    return out;
}

CaState step(const CaState& state, const CaRuleVector& rules) {
    const std::size_t n = state.size();
    if (n != rules.size()) throw DimensionError("state length does not match rule vector length");
    std::vector<std::uint8_t> next(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint8_t left = i > 0 ? state.bits[i - 1] : 0;
        const std::uint8_t self = state.bits[i];
        const std::uint8_t right = i + 1 < n ? state.bits[i + 1] : 0;
        switch (rules.rules[i]) {
            case 0: next[i] = 0; break;
            case 60: next[i] = left ^ self; break;
            case 90: next[i] = left ^ right; break;
            case 102: next[i] = self ^ right; break;
            case 150: next[i] = left ^ self ^ right; break;
            case 170: next[i] = right; break;
            case 204: next[i] = self; break;
            case 240: next[i] = left; break;
            default: throw UnsupportedRuleError("rule " + std::to_string(rules.rules[i]));
        }
    }
    return CaState(std::move(next));
}

BitMatrix transition_matrix(const CaRuleVector& rules) {
    if (!rules.is_hybrid_90_150())
        throw UnsupportedRuleError("transition matrix requires a hybrid 90/150 rule vector");
    const int n = static_cast<int>(rules.size());
    BitMatrix m(n);
    for (int i = 0; i < n; ++i) {
        m.at(i, i) = rules.rules[i] == 150 ? 1 : 0;
        if (i > 0) m.at(i, i - 1) = 1;
        if (i + 1 < n) m.at(i, i + 1) = 1;
    }
    return m;
}

CaState apply(const BitMatrix& m, const CaState& s) {
    if (static_cast<std::size_t>(m.n) != s.size())
        throw DimensionError("matrix size does not match state length");
    std::vector<std::uint8_t> out(s.size(), 0);
    for (int r = 0; r < m.n; ++r) {
        std::uint8_t acc = 0;
        for (int c = 0; c < m.n; ++c) acc ^= m.at(r, c) & s.bits[c];
        out[r] = acc;
    }
    return CaState(std::move(out));
}

bool Gf2Poly::coeff(std::size_t i) const {
    const std::size_t w = i / 64;
    if (w >= words.size()) return false;
    return (words[w] >> (i % 64)) & 1u;
}

void Gf2Poly::set_coeff(std::size_t i) {
    const std::size_t w = i / 64;
    if (w >= words.size()) words.resize(w + 1, 0);
    words[w] |= std::uint64_t{1} << (i % 64);
}

int Gf2Poly::degree() const {
    for (std::size_t w = words.size(); w-- > 0;) {
        if (words[w] == 0) continue;
        int bit = 63;
        while (((words[w] >> bit) & 1u) == 0) --bit;
        return static_cast<int>(w * 64) + bit;
    }
    return -1;
}

Gf2Poly Gf2Poly::one() {
    Gf2Poly p;
    p.set_coeff(0);
    return p;
}

Gf2Poly Gf2Poly::x() {
    Gf2Poly p;
    p.set_coeff(1);
    return p;
}

std::string Gf2Poly::to_string() const {
    const int deg = degree();
    if (deg < 0) return "0";
    std::string out;
    for (int i = deg; i >= 0; --i) {
        if (!coeff(static_cast<std::size_t>(i))) continue;
        if (!out.empty()) out += '+';
        if (i == 0)
            out += '1';
        else if (i == 1)
            out += 'x';
        else
            out += "x^" + std::to_string(i);
    }
    return out;
}

Gf2Poly gf2_add(const Gf2Poly& a, const Gf2Poly& b) {
    Gf2Poly out;
    out.words.resize(std::max(a.words.size(), b.words.size()), 0);
    for (std::size_t i = 0; i < out.words.size(); ++i) {
        std::uint64_t w = 0;
        if (i < a.words.size()) w ^= a.words[i];
        if (i < b.words.size()) w ^= b.words[i];
        out.words[i] = w;
    }
    while (!out.words.empty() && out.words.back() == 0) out.words.pop_back();
    return out;
}

Gf2Poly gf2_shift(const Gf2Poly& a) {
    Gf2Poly out;
    out.words.resize(a.words.size() + 1, 0);
    for (std::size_t i = 0; i < a.words.size(); ++i) {
        out.words[i] |= a.words[i] << 1;
        out.words[i + 1] |= a.words[i] >> 63;
    }
    while (!out.words.empty() && out.words.back() == 0) out.words.pop_back();
    return out;
}

Gf2Poly characteristic_polynomial(const CaRuleVector& rules) {
    if (!rules.is_hybrid_90_150())
        throw UnsupportedRuleError("characteristic polynomial requires a hybrid 90/150 rule vector");
    Gf2Poly prev2 = Gf2Poly::one();  // p0
    Gf2Poly prev1;                   // p1 = d1 + x
    prev1.set_coeff(1);
    if (rules.rules[0] == 150) prev1.set_coeff(0);
    if (rules.size() == 1) return prev1;
    for (std::size_t i = 1; i < rules.size(); ++i) {
        Gf2Poly term = gf2_shift(prev1);                            // x * p_{i-1}
        if (rules.rules[i] == 150) term = gf2_add(term, prev1);     // + d_i * p_{i-1}
        Gf2Poly next = gf2_add(term, prev2);
        prev2 = std::move(prev1);
        prev1 = std::move(next);
    }
    return prev1;
}

namespace {

// Carry-less multiply modulo f, both operands of degree < deg(f) <= 24.
std::uint64_t gf2_mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t f, int n) {
    std::uint64_t acc = 0;
    while (b) {
        if (b & 1u) acc ^= a;
        b >>= 1;
        a <<= 1;
        if ((a >> n) & 1u) a ^= f;
    }
    return acc;
}

std::uint64_t gf2_powmod_x(std::uint64_t e, std::uint64_t f, int n) {
    std::uint64_t result = 1;
    std::uint64_t base = 2;  // the polynomial x
    if (n == 1) base = f ^ 2;  // x reduced mod a degree-1 polynomial
    while (e) {
        if (e & 1u) result = gf2_mulmod(result, base, f, n);
        base = gf2_mulmod(base, base, f, n);
        e >>= 1;
    }
    return result;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t m) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            out.push_back(p);
            while (m % p == 0) m /= p;
        }
    }
    if (m > 1) out.push_back(m);
    return out;
}

}  // namespace

bool is_primitive(const Gf2Poly& f) {
    const int n = f.degree();
    if (n < 1) return false;
    if (n > 24) throw CapabilityError("primitivity test limited to degree <= 24");
    if (!f.coeff(0)) return false;  // x divides f
    const std::uint64_t fm = f.words[0];
    const std::uint64_t order = (std::uint64_t{1} << n) - 1;
    if (gf2_powmod_x(order, fm, n) != 1) return false;
    for (std::uint64_t p : prime_factors(order))
        if (gf2_powmod_x(order / p, fm, n) == 1) return false;
    return true;
}

bool is_maximal(const CaRuleVector& rules) {
    if (!rules.is_hybrid_90_150())
        throw UnsupportedRuleError("maximality is defined for hybrid 90/150 rule vectors");
    if (rules.size() > 24)
        throw CapabilityError("maximality verification limited to n <= 24");
    return is_primitive(characteristic_polynomial(rules));
}

std::vector<std::uint8_t> m_sequence(const CaRuleVector& rules, const CaState& seed,
                                     std::size_t length) {
    if (rules.size() != 8) throw DimensionError("m-sequence emission requires an 8-cell register");
    if (seed.size() != 8) throw DimensionError("seed length must be 8");
    if (seed.all_zero()) throw DegenerateSeedError("the all-zero seed is a fixed point");
    if (!is_maximal(rules)) throw NonMaximalError("rule vector is not maximal: " + rules.to_string());
    return raw_sequence(rules, seed, length);
}

std::vector<std::uint8_t> raw_sequence(const CaRuleVector& rules, const CaState& seed,
                                       std::size_t length) {
    if (rules.size() != 8) throw DimensionError("byte emission requires an 8-cell register");
    if (seed.size() != 8) throw DimensionError("seed length must be 8");
    std::vector<std::uint8_t> out;
    out.reserve(length);
    CaState state = seed;
    for (std::size_t t = 0; t < length; ++t) {
        out.push_back(state.to_byte());
        state = step(state, rules);
    }
    return out;
}

}  // namespace monospec::ca
