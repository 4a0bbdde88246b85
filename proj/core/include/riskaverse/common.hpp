#pragma once

#include <string>

namespace riskaverse {

/// Which side of the quote a valuation produces. The ask is the seller's
/// price rho(Y); the bid is the buyer's price -rho(-Y). The two coincide
/// exactly for the plain expectation.
enum class Side { bid, ask };

enum class PayoffKind { call, put };

inline const char* to_string(Side s) { return s == Side::bid ? "bid" : "ask"; }
inline const char* to_string(PayoffKind k) { return k == PayoffKind::call ? "call" : "put"; }

} // namespace riskaverse
