#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace scambait {

enum class PaymentKind { crypto_btc, crypto_eth, crypto_other, paypal, cashapp, venmo, gift_card, external_link };
enum class Validity { valid, invalid, unknown };

std::string_view to_string(PaymentKind k);
std::string_view to_string(Validity v);
PaymentKind parse_payment_kind(std::string_view s);
Validity parse_validity(std::string_view s);

struct AddressVerdict {
  PaymentKind kind = PaymentKind::crypto_other;
  Validity validity = Validity::unknown;
  bool operator==(const AddressVerdict&) const = default;
};

// Shape decides the family, the checksum decides validity:
//   "0x" + 40 alphanumerics        -> crypto_eth; non-hex is invalid, single-case
//                                     hex is valid, mixed case must match EIP-55
//   '1'/'3' + 25..34 alphanumerics -> crypto_btc via base58check (version 0x00/0x05)
//   "bc1"/"BC1", 14..90 chars      -> crypto_btc via bech32 (v0) / bech32m (v1+)
//   anything else                  -> crypto_other / unknown
AddressVerdict validate_crypto_address(std::string_view addr);

// True for strings that validate_crypto_address would route to btc/eth.
bool looks_like_crypto_address(std::string_view s);

std::array<std::uint8_t, 32> sha256(std::span<const std::uint8_t> data);
std::array<std::uint8_t, 32> keccak256(std::span<const std::uint8_t> data);

// Encoders used by the simulated scammer to mint well-formed addresses.
std::string base58check_encode(std::uint8_t version, std::span<const std::uint8_t> payload);
std::string segwit_encode(int witness_version, std::span<const std::uint8_t> program);
// 40 hex digits in (any case, no prefix) -> "0x" + EIP-55 mixed-case form.
std::string eip55_checksum(std::string_view hex40);

}  // namespace scambait
