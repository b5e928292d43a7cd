#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scambait/crypto_address.hpp"

namespace scambait {

// Exact decimal: value = mantissa / 10^scale. Normalized so the mantissa has
// no trailing zero digits after the point (100.50 -> 1005 / 10^1).
class Decimal {
 public:
  Decimal() = default;
  Decimal(std::int64_t mantissa, int scale);
  static Decimal from_int(std::int64_t v) { return Decimal(v, 0); }
  // "1,234.50", "0.005", "300". Throws std::invalid_argument.
  static Decimal parse(std::string_view s);

  std::int64_t mantissa() const { return mantissa_; }
  int scale() const { return scale_; }
  double to_double() const;
  std::string to_string() const;
  bool positive() const { return mantissa_ > 0; }

  bool operator==(const Decimal&) const = default;

 private:
  std::int64_t mantissa_ = 0;
  int scale_ = 0;
};

struct Money {
  Decimal amount;
  std::string currency;  // ISO code ("USD", "EUR"), ticker ("BTC") or "UNK"

  std::string to_string() const { return amount.to_string() + " " + currency; }
  bool operator==(const Money&) const = default;
};

struct PaymentProfile {
  PaymentKind kind = PaymentKind::crypto_other;
  std::string identifier;
  std::optional<Money> amount;
  bool ff_flag = false;
  Validity validity = Validity::unknown;
  int source_turn = -1;

  bool operator==(const PaymentProfile&) const = default;
  // Two profiles name the same rail when kind and identifier agree.
  bool same_rail(const PaymentProfile& o) const { return kind == o.kind && identifier == o.identifier; }
};

// What earlier scammer turns established: the last quoted price and the last
// payment rail named. Lets "*****@mail.com" sent on its own be read as the
// PayPal address the scammer agreed to two turns before.
struct PaymentContext {
  std::optional<Money> last_price;
  std::optional<PaymentKind> last_rail;
};

std::vector<Money> extract_price(std::string_view text);

// When ctx is given it is consulted and then updated with this turn.
std::vector<PaymentProfile> extract_payment_profiles(std::string_view text, int turn_index,
                                                     PaymentContext* ctx = nullptr);

bool mentions_friends_and_family(std::string_view text);

}  // namespace scambait
