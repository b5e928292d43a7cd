#include "crypto_oracle.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cctype>

namespace oracle {
namespace {

using boost::multiprecision::cpp_int;

constexpr std::string_view kBase58 = "123456789ABCDEFGHJKLMNPQRSTUVWXYZabcdefghijkmnopqrstuvwxyz";
constexpr std::string_view kBech32 = "qpzry9x8gf2tvdw0s3jn54khce6mua7l";

std::uint32_t rotr(std::uint32_t x, int n) { return (x >> n) | (x << (32 - n)); }

std::uint64_t rotl64(std::uint64_t x, int n) {
  n %= 64;
  return n == 0 ? x : (x << n) | (x >> (64 - n));
}

// One bit of the Keccak round-constant LFSR (x^8 + x^6 + x^5 + x^4 + 1).
bool lfsr_bit(int t) {
  if (t % 255 == 0) return true;
  unsigned r = 1;
  for (int i = 1; i <= t % 255; ++i) {
    r <<= 1;
    if (r & 0x100) r ^= 0x171;
  }
  return (r & 1) != 0;
}

void keccak_f(std::uint64_t a[5][5]) {
  int rho[5][5] = {};
  {
    int x = 1, y = 0;
    for (int t = 0; t < 24; ++t) {
      rho[x][y] = ((t + 1) * (t + 2) / 2) % 64;
      const int nx = y;
      const int ny = (2 * x + 3 * y) % 5;
      x = nx;
      y = ny;
    }
  }
  for (int round = 0; round < 24; ++round) {
    std::uint64_t c[5];
    for (int x = 0; x < 5; ++x) c[x] = a[x][0] ^ a[x][1] ^ a[x][2] ^ a[x][3] ^ a[x][4];
    for (int x = 0; x < 5; ++x) {
      const std::uint64_t d = c[(x + 4) % 5] ^ rotl64(c[(x + 1) % 5], 1);
      for (int y = 0; y < 5; ++y) a[x][y] ^= d;
    }
    std::uint64_t b[5][5];
    for (int x = 0; x < 5; ++x)
      for (int y = 0; y < 5; ++y) b[y][(2 * x + 3 * y) % 5] = rotl64(a[x][y], rho[x][y]);
    for (int x = 0; x < 5; ++x)
      for (int y = 0; y < 5; ++y) a[x][y] = b[x][y] ^ (~b[(x + 1) % 5][y] & b[(x + 2) % 5][y]);
    std::uint64_t rc = 0;
    for (int j = 0; j < 7; ++j) {
      if (lfsr_bit(j + 7 * round)) rc |= std::uint64_t{1} << ((1 << j) - 1);
    }
    a[0][0] ^= rc;
  }
}

std::uint32_t bech32_polymod(const std::vector<int>& values) {
  static constexpr std::uint32_t gen[5] = {0x3b6a57b2, 0x26508e6d, 0x1ea119fa, 0x3d4233dd, 0x2a1462b3};
  std::uint32_t chk = 1;
  for (int v : values) {
    const std::uint32_t top = chk >> 25;
    chk = ((chk & 0x1ffffff) << 5) ^ static_cast<std::uint32_t>(v);
    for (int i = 0; i < 5; ++i) {
      if ((top >> i) & 1) chk ^= gen[i];
    }
  }
  return chk;
}

std::vector<int> hrp_expand(std::string_view hrp) {
  std::vector<int> out;
  for (char c : hrp) out.push_back(static_cast<unsigned char>(c) >> 5);
  out.push_back(0);
  for (char c : hrp) out.push_back(static_cast<unsigned char>(c) & 31);
  return out;
}

bool convert_bits(const std::vector<int>& in, int from, int to, bool pad, std::vector<int>& out) {
  int acc = 0, bits = 0;
  const int maxv = (1 << to) - 1;
  for (int v : in) {
    if (v < 0 || (v >> from) != 0) return false;
    acc = (acc << from) | v;
    bits += from;
    while (bits >= to) {
      bits -= to;
      out.push_back((acc >> bits) & maxv);
    }
  }
  if (pad) {
    if (bits > 0) out.push_back((acc << (to - bits)) & maxv);
  } else if (bits >= from || ((acc << (to - bits)) & maxv) != 0) {
    return false;
  }
  return true;
}

bool all_alnum(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; });
}

Verdict classify_eth(std::string_view s) {
  const std::string_view body = s.substr(2);
  if (!std::all_of(body.begin(), body.end(), [](char c) { return std::isxdigit(static_cast<unsigned char>(c)) != 0; })) {
    return {"crypto_eth", "invalid"};
  }
  const bool has_lower = std::any_of(body.begin(), body.end(), [](char c) { return c >= 'a' && c <= 'f'; });
  const bool has_upper = std::any_of(body.begin(), body.end(), [](char c) { return c >= 'A' && c <= 'F'; });
  if (!(has_lower && has_upper)) return {"crypto_eth", "valid"};
  return {"crypto_eth", eip55(body) == std::string(s) ? "valid" : "invalid"};
}

Verdict classify_base58(std::string_view s) {
  Bytes raw;
  if (!base58_decode(s, raw) || raw.size() != 25) return {"crypto_btc", "invalid"};
  if (raw[0] != 0x00 && raw[0] != 0x05) return {"crypto_btc", "invalid"};
  const Bytes body(raw.begin(), raw.begin() + 21);
  const auto first = sha256(body);
  const auto h = sha256(Bytes(first.begin(), first.end()));
  const bool ok = std::equal(h.begin(), h.begin() + 4, raw.begin() + 21);
  return {"crypto_btc", ok ? "valid" : "invalid"};
}

Verdict classify_bech32(std::string_view s) {
  const bool lower = std::any_of(s.begin(), s.end(), [](char c) { return c >= 'a' && c <= 'z'; });
  const bool upper = std::any_of(s.begin(), s.end(), [](char c) { return c >= 'A' && c <= 'Z'; });
  if (lower && upper) return {"crypto_btc", "invalid"};
  std::string t(s);
  for (char& c : t) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  const std::size_t sep = t.rfind('1');
  if (sep != 2 || t.substr(0, 2) != "bc" || t.size() - sep - 1 < 7) return {"crypto_btc", "invalid"};
  std::vector<int> data;
  for (std::size_t i = sep + 1; i < t.size(); ++i) {
    const std::size_t v = kBech32.find(t[i]);
    if (v == std::string_view::npos) return {"crypto_btc", "invalid"};
    data.push_back(static_cast<int>(v));
  }
  std::vector<int> values = hrp_expand("bc");
  values.insert(values.end(), data.begin(), data.end());
  const std::uint32_t pm = bech32_polymod(values);
  const int version = data[0];
  if (version > 16) return {"crypto_btc", "invalid"};
  const std::uint32_t expected = version == 0 ? 1u : 0x2bc830a3u;
  if (pm != expected) return {"crypto_btc", "invalid"};
  std::vector<int> program;
  const std::vector<int> payload(data.begin() + 1, data.end() - 6);
  if (!convert_bits(payload, 5, 8, false, program)) return {"crypto_btc", "invalid"};
  if (program.size() < 2 || program.size() > 40) return {"crypto_btc", "invalid"};
  if (version == 0 && program.size() != 20 && program.size() != 32) return {"crypto_btc", "invalid"};
  return {"crypto_btc", "valid"};
}

}  // namespace

std::array<std::uint8_t, 32> sha256(const Bytes& data) {
  static constexpr std::uint32_t k[64] = {
      0x428a2f98, 0x71374491, 0xb5c0fbcf, 0xe9b5dba5, 0x3956c25b, 0x59f111f1, 0x923f82a4, 0xab1c5ed5,
      0xd807aa98, 0x12835b01, 0x243185be, 0x550c7dc3, 0x72be5d74, 0x80deb1fe, 0x9bdc06a7, 0xc19bf174,
      0xe49b69c1, 0xefbe4786, 0x0fc19dc6, 0x240ca1cc, 0x2de92c6f, 0x4a7484aa, 0x5cb0a9dc, 0x76f988da,
      0x983e5152, 0xa831c66d, 0xb00327c8, 0xbf597fc7, 0xc6e00bf3, 0xd5a79147, 0x06ca6351, 0x14292967,
      0x27b70a85, 0x2e1b2138, 0x4d2c6dfc, 0x53380d13, 0x650a7354, 0x766a0abb, 0x81c2c92e, 0x92722c85,
      0xa2bfe8a1, 0xa81a664b, 0xc24b8b70, 0xc76c51a3, 0xd192e819, 0xd6990624, 0xf40e3585, 0x106aa070,
      0x19a4c116, 0x1e376c08, 0x2748774c, 0x34b0bcb5, 0x391c0cb3, 0x4ed8aa4a, 0x5b9cca4f, 0x682e6ff3,
      0x748f82ee, 0x78a5636f, 0x84c87814, 0x8cc70208, 0x90befffa, 0xa4506ceb, 0xbef9a3f7, 0xc67178f2};
  std::uint32_t h[8] = {0x6a09e667, 0xbb67ae85, 0x3c6ef372, 0xa54ff53a,
                        0x510e527f, 0x9b05688c, 0x1f83d9ab, 0x5be0cd19};
  Bytes msg = data;
  const std::uint64_t bit_len = static_cast<std::uint64_t>(data.size()) * 8;
  msg.push_back(0x80);
  while (msg.size() % 64 != 56) msg.push_back(0);
  for (int i = 7; i >= 0; --i) msg.push_back(static_cast<std::uint8_t>(bit_len >> (8 * i)));
  for (std::size_t off = 0; off < msg.size(); off += 64) {
    std::uint32_t w[64];
    for (int i = 0; i < 16; ++i) {
      w[i] = (std::uint32_t{msg[off + 4 * i]} << 24) | (std::uint32_t{msg[off + 4 * i + 1]} << 16) |
             (std::uint32_t{msg[off + 4 * i + 2]} << 8) | std::uint32_t{msg[off + 4 * i + 3]};
    }
    for (int i = 16; i < 64; ++i) {
      const std::uint32_t s0 = rotr(w[i - 15], 7) ^ rotr(w[i - 15], 18) ^ (w[i - 15] >> 3);
      const std::uint32_t s1 = rotr(w[i - 2], 17) ^ rotr(w[i - 2], 19) ^ (w[i - 2] >> 10);
      w[i] = w[i - 16] + s0 + w[i - 7] + s1;
    }
    std::uint32_t a = h[0], b = h[1], c = h[2], d = h[3], e = h[4], f = h[5], g = h[6], hh = h[7];
    for (int i = 0; i < 64; ++i) {
      const std::uint32_t t1 = hh + (rotr(e, 6) ^ rotr(e, 11) ^ rotr(e, 25)) + ((e & f) ^ (~e & g)) + k[i] + w[i];
      const std::uint32_t t2 = (rotr(a, 2) ^ rotr(a, 13) ^ rotr(a, 22)) + ((a & b) ^ (a & c) ^ (b & c));
      hh = g;
      g = f;
      f = e;
      e = d + t1;
      d = c;
      c = b;
      b = a;
      a = t1 + t2;
    }
    h[0] += a; h[1] += b; h[2] += c; h[3] += d; h[4] += e; h[5] += f; h[6] += g; h[7] += hh;
  }
  std::array<std::uint8_t, 32> out{};
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 4; ++j) out[static_cast<std::size_t>(4 * i + j)] = static_cast<std::uint8_t>(h[i] >> (24 - 8 * j));
  }
  return out;
}

std::array<std::uint8_t, 32> keccak256(std::string_view data) {
  constexpr std::size_t rate = 136;
  std::uint64_t a[5][5] = {};
  std::vector<std::uint8_t> msg(data.begin(), data.end());
  msg.push_back(0x01);
  while (msg.size() % rate != 0) msg.push_back(0);
  msg.back() |= 0x80;
  for (std::size_t off = 0; off < msg.size(); off += rate) {
    for (std::size_t i = 0; i < rate / 8; ++i) {
      std::uint64_t lane = 0;
      for (int j = 7; j >= 0; --j) lane = (lane << 8) | msg[off + 8 * i + static_cast<std::size_t>(j)];
      a[i % 5][i / 5] ^= lane;
    }
    keccak_f(a);
  }
  std::array<std::uint8_t, 32> out{};
  for (std::size_t i = 0; i < 32; ++i) {
    const std::size_t lane = i / 8;
    out[i] = static_cast<std::uint8_t>(a[lane % 5][lane / 5] >> (8 * (i % 8)));
  }
  return out;
}

std::string base58_encode(const Bytes& data) {
  cpp_int n = 0;
  for (std::uint8_t b : data) n = n * 256 + b;
  std::string out;
  while (n > 0) {
    const int r = static_cast<int>(n % 58);
    out.push_back(kBase58[static_cast<std::size_t>(r)]);
    n /= 58;
  }
  for (std::uint8_t b : data) {
    if (b != 0) break;
    out.push_back('1');
  }
  std::reverse(out.begin(), out.end());
  return out;
}

bool base58_decode(std::string_view text, Bytes& out) {
  cpp_int n = 0;
  for (char c : text) {
    const std::size_t v = kBase58.find(c);
    if (v == std::string_view::npos) return false;
    n = n * 58 + static_cast<int>(v);
  }
  Bytes body;
  while (n > 0) {
    body.push_back(static_cast<std::uint8_t>(static_cast<int>(n % 256)));
    n /= 256;
  }
  std::size_t zeros = 0;
  while (zeros < text.size() && text[zeros] == '1') ++zeros;
  out.assign(zeros, 0);
  out.insert(out.end(), body.rbegin(), body.rend());
  return true;
}

std::string base58check_encode(std::uint8_t version, const Bytes& payload) {
  Bytes raw{version};
  raw.insert(raw.end(), payload.begin(), payload.end());
  const auto first = sha256(raw);
  const auto second = sha256(Bytes(first.begin(), first.end()));
  raw.insert(raw.end(), second.begin(), second.begin() + 4);
  return base58_encode(raw);
}

std::string segwit_encode(int witness_version, const Bytes& program) {
  std::vector<int> data{witness_version};
  std::vector<int> in(program.begin(), program.end());
  convert_bits(in, 8, 5, true, data);
  std::vector<int> values = hrp_expand("bc");
  values.insert(values.end(), data.begin(), data.end());
  values.insert(values.end(), 6, 0);
  const std::uint32_t target = witness_version == 0 ? 1u : 0x2bc830a3u;
  const std::uint32_t pm = bech32_polymod(values) ^ target;
  std::string out = "bc1";
  for (int v : data) out.push_back(kBech32[static_cast<std::size_t>(v)]);
  for (int i = 0; i < 6; ++i) out.push_back(kBech32[(pm >> (5 * (5 - i))) & 31]);
  return out;
}

std::string eip55(std::string_view hex40) {
  std::string lower(hex40);
  for (char& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  const auto h = keccak256(lower);
  std::string out = "0x";
  for (std::size_t i = 0; i < lower.size(); ++i) {
    const int nibble = (i % 2 == 0) ? (h[i / 2] >> 4) : (h[i / 2] & 0x0f);
    char c = lower[i];
    if (c >= 'a' && c <= 'f' && nibble >= 8) c = static_cast<char>(c - 'a' + 'A');
    out.push_back(c);
  }
  return out;
}

Verdict classify(std::string_view s) {
  if (s.size() == 42 && s[0] == '0' && s[1] == 'x' && all_alnum(s.substr(2))) return classify_eth(s);
  if (!s.empty() && (s[0] == '1' || s[0] == '3') && s.size() >= 26 && s.size() <= 35 && all_alnum(s)) {
    return classify_base58(s);
  }
  if (s.size() >= 14 && s.size() <= 90 && (s.substr(0, 3) == "bc1" || s.substr(0, 3) == "BC1") && all_alnum(s)) {
    return classify_bech32(s);
  }
  return {"crypto_other", "unknown"};
}

}  // namespace oracle
