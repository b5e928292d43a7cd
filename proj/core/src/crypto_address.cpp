#include "scambait/crypto_address.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace scambait {
namespace {

constexpr std::string_view kBase58Alphabet = "123456789ABCDEFGHJKLMNPQRSTUVWXYZabcdefghijkmnopqrstuvwxyz";
constexpr std::string_view kBech32Charset = "qpzry9x8gf2tvdw0s3jn54khce6mua7l";
constexpr std::uint32_t kBech32Const = 1;
constexpr std::uint32_t kBech32mConst = 0x2bc830a3;

bool is_alnum(char c) { return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_hex(char c) { return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F'); }
bool all_alnum(std::string_view s) { return std::all_of(s.begin(), s.end(), is_alnum); }

// Base58 decode by repeated multiply-add over a big-endian byte buffer.
bool base58_decode(std::string_view s, std::vector<std::uint8_t>& out) {
  std::vector<std::uint8_t> num;  // big-endian magnitude
  for (char c : s) {
    const auto digit = kBase58Alphabet.find(c);
    if (digit == std::string_view::npos) return false;
    unsigned carry = static_cast<unsigned>(digit);
    for (auto it = num.rbegin(); it != num.rend(); ++it) {
      carry += 58u * *it;
      *it = static_cast<std::uint8_t>(carry & 0xff);
      carry >>= 8;
    }
    while (carry > 0) {
      num.insert(num.begin(), static_cast<std::uint8_t>(carry & 0xff));
      carry >>= 8;
    }
  }
  const auto leading = static_cast<std::size_t>(std::find_if(s.begin(), s.end(), [](char c) { return c != '1'; }) - s.begin());
  out.assign(leading, 0);
  out.insert(out.end(), num.begin(), num.end());
  return true;
}

std::string base58_encode(std::span<const std::uint8_t> data) {
  std::vector<std::uint8_t> digits;  // little-endian base-58 digits
  for (std::uint8_t byte : data) {
    unsigned carry = byte;
    for (auto& d : digits) {
      carry += 256u * d;
      d = static_cast<std::uint8_t>(carry % 58);
      carry /= 58;
    }
    while (carry > 0) {
      digits.push_back(static_cast<std::uint8_t>(carry % 58));
      carry /= 58;
    }
  }
  std::string out;
  for (std::uint8_t byte : data) {
    if (byte != 0) break;
    out.push_back('1');
  }
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) out.push_back(kBase58Alphabet[*it]);
  return out;
}

std::uint32_t polymod(std::span<const std::uint8_t> values) {
  constexpr std::uint32_t kGen[5] = {0x3b6a57b2, 0x26508e6d, 0x1ea119fa, 0x3d4233dd, 0x2a1462b3};
  std::uint32_t chk = 1;
  for (std::uint8_t v : values) {
    const std::uint32_t b = chk >> 25;
    chk = ((chk & 0x1ffffff) << 5) ^ v;
    for (int i = 0; i < 5; ++i) chk ^= ((b >> i) & 1) ? kGen[i] : 0;
  }
  return chk;
}

std::vector<std::uint8_t> bech32_prefix_values() {
  // hrp "bc" expanded: high bits, separator, low bits.
  return {'b' >> 5, 'c' >> 5, 0, 'b' & 31, 'c' & 31};
}

// Regroups bit strings. Returns false on leftover non-zero padding when pad is
// false, as BIP-173 requires.
bool regroup(std::span<const std::uint8_t> in, int from, int to, bool pad, std::vector<std::uint8_t>& out) {
  unsigned acc = 0;
  int bits = 0;
  const unsigned mask = (1u << to) - 1;
  for (std::uint8_t v : in) {
    acc = (acc << from) | v;
    bits += from;
    while (bits >= to) {
      bits -= to;
      out.push_back(static_cast<std::uint8_t>((acc >> bits) & mask));
    }
  }
  if (pad) {
    if (bits > 0) out.push_back(static_cast<std::uint8_t>((acc << (to - bits)) & mask));
    return true;
  }
  return bits < from && ((acc << (to - bits)) & mask) == 0;
}

Validity check_eth(std::string_view s) {
  const std::string_view hex = s.substr(2);
  if (!std::all_of(hex.begin(), hex.end(), is_hex)) return Validity::invalid;
  const bool has_upper = std::any_of(hex.begin(), hex.end(), [](char c) { return c >= 'A' && c <= 'F'; });
  const bool has_lower = std::any_of(hex.begin(), hex.end(), [](char c) { return c >= 'a' && c <= 'f'; });
  if (!has_upper || !has_lower) return Validity::valid;  // no checksum encoded
  return eip55_checksum(hex) == s ? Validity::valid : Validity::invalid;
}

Validity check_base58(std::string_view s) {
  std::vector<std::uint8_t> raw;
  if (!base58_decode(s, raw) || raw.size() != 25) return Validity::invalid;
  if (raw[0] != 0x00 && raw[0] != 0x05) return Validity::invalid;
  const auto once = sha256(std::span(raw.data(), 21));
  const auto twice = sha256(once);
  return std::equal(twice.begin(), twice.begin() + 4, raw.begin() + 21) ? Validity::valid : Validity::invalid;
}

Validity check_bech32(std::string_view s) {
  const bool has_lower = std::any_of(s.begin(), s.end(), [](char c) { return c >= 'a' && c <= 'z'; });
  const bool has_upper = std::any_of(s.begin(), s.end(), [](char c) { return c >= 'A' && c <= 'Z'; });
  if (has_lower && has_upper) return Validity::invalid;
  const auto sep = s.find_last_of("1");
  if (sep != 2 || s.size() < sep + 1 + 7) return Validity::invalid;

  std::vector<std::uint8_t> values = bech32_prefix_values();
  std::vector<std::uint8_t> data;
  for (char c : s.substr(sep + 1)) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    const auto v = kBech32Charset.find(c);
    if (v == std::string_view::npos) return Validity::invalid;
    data.push_back(static_cast<std::uint8_t>(v));
  }
  values.insert(values.end(), data.begin(), data.end());
  const int version = data[0];
  if (version > 16) return Validity::invalid;
  if (polymod(values) != (version == 0 ? kBech32Const : kBech32mConst)) return Validity::invalid;

  std::vector<std::uint8_t> program;
  if (!regroup(std::span(data).subspan(1, data.size() - 7), 5, 8, false, program)) return Validity::invalid;
  if (program.size() < 2 || program.size() > 40) return Validity::invalid;
  if (version == 0 && program.size() != 20 && program.size() != 32) return Validity::invalid;
  return Validity::valid;
}

enum class Shape { eth, base58, bech32, other };

Shape shape_of(std::string_view s) {
  if (s.size() == 42 && s.substr(0, 2) == "0x" && all_alnum(s.substr(2))) return Shape::eth;
  if (!s.empty() && (s[0] == '1' || s[0] == '3') && s.size() >= 26 && s.size() <= 35 && all_alnum(s)) {
    return Shape::base58;
  }
  if (s.size() >= 14 && s.size() <= 90 && (s.substr(0, 3) == "bc1" || s.substr(0, 3) == "BC1") && all_alnum(s)) {
    return Shape::bech32;
  }
  return Shape::other;
}

constexpr std::string_view kPaymentKindNames[] = {"crypto_btc", "crypto_eth", "crypto_other", "paypal",
                                                  "cashapp",    "venmo",      "gift_card",    "external_link"};
constexpr std::string_view kValidityNames[] = {"valid", "invalid", "unknown"};

}  // namespace

std::string_view to_string(PaymentKind k) { return kPaymentKindNames[static_cast<int>(k)]; }
std::string_view to_string(Validity v) { return kValidityNames[static_cast<int>(v)]; }

PaymentKind parse_payment_kind(std::string_view s) {
  for (std::size_t i = 0; i < std::size(kPaymentKindNames); ++i) {
    if (kPaymentKindNames[i] == s) return static_cast<PaymentKind>(i);
  }
  throw std::invalid_argument("unknown payment kind: " + std::string(s));
}

Validity parse_validity(std::string_view s) {
  for (std::size_t i = 0; i < std::size(kValidityNames); ++i) {
    if (kValidityNames[i] == s) return static_cast<Validity>(i);
  }
  throw std::invalid_argument("unknown validity: " + std::string(s));
}

std::array<std::uint8_t, 32> sha256(std::span<const std::uint8_t> data) {
  std::array<std::uint8_t, 32> out{};
  unsigned len = 0;
  if (EVP_Digest(data.data(), data.size(), out.data(), &len, EVP_sha256(), nullptr) != 1 || len != out.size()) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  return out;
}

AddressVerdict validate_crypto_address(std::string_view addr) {
  switch (shape_of(addr)) {
    case Shape::eth:
      return {PaymentKind::crypto_eth, check_eth(addr)};
    case Shape::base58:
      return {PaymentKind::crypto_btc, check_base58(addr)};
    case Shape::bech32:
      return {PaymentKind::crypto_btc, check_bech32(addr)};
    case Shape::other:
      break;
  }
  return {PaymentKind::crypto_other, Validity::unknown};
}

bool looks_like_crypto_address(std::string_view s) { return shape_of(s) != Shape::other; }

std::string base58check_encode(std::uint8_t version, std::span<const std::uint8_t> payload) {
  std::vector<std::uint8_t> raw{version};
  raw.insert(raw.end(), payload.begin(), payload.end());
  const auto check = sha256(sha256(raw));
  raw.insert(raw.end(), check.begin(), check.begin() + 4);
  return base58_encode(raw);
}

std::string segwit_encode(int witness_version, std::span<const std::uint8_t> program) {
  if (witness_version < 0 || witness_version > 16) throw std::invalid_argument("witness version out of range");
  std::vector<std::uint8_t> data{static_cast<std::uint8_t>(witness_version)};
  regroup(program, 8, 5, true, data);
  std::vector<std::uint8_t> values = bech32_prefix_values();
  values.insert(values.end(), data.begin(), data.end());
  values.insert(values.end(), 6, 0);
  const std::uint32_t mod = polymod(values) ^ (witness_version == 0 ? kBech32Const : kBech32mConst);
  std::string out = "bc1";
  for (std::uint8_t v : data) out.push_back(kBech32Charset[v]);
  for (int i = 0; i < 6; ++i) out.push_back(kBech32Charset[(mod >> (5 * (5 - i))) & 31]);
  return out;
}

std::string eip55_checksum(std::string_view hex40) {
  if (hex40.size() != 40 || !std::all_of(hex40.begin(), hex40.end(), is_hex)) {
    throw std::invalid_argument("eip55_checksum expects 40 hex digits");
  }
  std::string lower(hex40);
  for (char& c : lower) {
    if (c >= 'A' && c <= 'F') c = static_cast<char>(c - 'A' + 'a');
  }
  const auto hash = keccak256(std::span(reinterpret_cast<const std::uint8_t*>(lower.data()), lower.size()));
  std::string out = "0x";
  for (std::size_t i = 0; i < lower.size(); ++i) {
    const unsigned nibble = (i % 2 == 0) ? (hash[i / 2] >> 4) : (hash[i / 2] & 0x0f);
    const char c = lower[i];
    out.push_back((c >= 'a' && nibble >= 8) ? static_cast<char>(c - 'a' + 'A') : c);
  }
  return out;
}

}  // namespace scambait
