#include "cybeforge/rational.hpp"

#include "cybeforge/errors.hpp"

#include <cctype>

namespace cybeforge {

namespace {

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    s.remove_prefix(1);
  }
  if (s.empty()) {
    return false;
  }
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      return false;
    }
  }
  return true;
}

} // namespace

Rat parse_rat(std::string_view text) {
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den) || den.front() == '-' || den.front() == '+') {
    throw ParseError("malformed rational: '" + std::string(text) + "'");
  }
  if (num.front() == '+') {
    num.remove_prefix(1);
  }
  Int p(std::string(num), 10);
  Int q(std::string(den), 10);
  if (q == 0) {
    throw ParseError("zero denominator: '" + std::string(text) + "'");
  }
  Rat r(p, q);
  r.canonicalize();
  return r;
}

std::string format_rat(const Rat &r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Int factorial(unsigned n) {
  Int out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

Int binomial(unsigned n, unsigned k) {
  if (k > n) {
    return 0;
  }
  Int out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

Rat inv_factorial(unsigned n) { return Rat(Int(1), factorial(n)); }

} // namespace cybeforge
