#include "mimo3way/rational.hpp"

#include <charconv>
#include <cstdio>
#include <numeric>

#include "mimo3way/error.hpp"

namespace mimo3way {

std::string_view code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidInput: return "invalid-input";
    case ErrorCode::kRegimeMismatch: return "regime-mismatch";
    case ErrorCode::kPrecondition: return "precondition";
    case ErrorCode::kValidation: return "validation";
    case ErrorCode::kInternal: return "internal";
  }
  return "internal";
}

std::string to_string(const Rational& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

namespace {

std::int64_t parse_int(std::string_view text, std::string_view whole) {
  std::int64_t value = 0;
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end) {
    fail(ErrorCode::kInvalidInput, "malformed rational '" + std::string(whole) + "'");
  }
  return value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view whole = text;
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    const auto num = parse_int(text.substr(0, slash), whole);
    const auto den = parse_int(text.substr(slash + 1), whole);
    if (den == 0) fail(ErrorCode::kInvalidInput, "zero denominator in '" + std::string(whole) + "'");
    return Rational(num, den);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    const auto frac = text.substr(dot + 1);
    if (frac.size() > 12) fail(ErrorCode::kInvalidInput, "too many decimals in '" + std::string(whole) + "'");
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    const auto head = text.substr(0, dot);
    const bool negative = !head.empty() && head.front() == '-';
    const auto ip = head.empty() || head == "-" ? 0 : parse_int(head, whole);
    const auto fp = frac.empty() ? 0 : parse_int(frac, whole);
    if (fp < 0) fail(ErrorCode::kInvalidInput, "malformed rational '" + std::string(whole) + "'");
    const auto magnitude = (ip < 0 ? -ip : ip) * scale + fp;
    return Rational(negative ? -magnitude : magnitude, scale);
  }
  return Rational(parse_int(text, whole));
}

std::string to_decimal(const Rational& r, int places) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", places, to_double(r));
  return buf;
}

std::int64_t common_denominator(const Rational* first, const Rational* last) {
  std::int64_t l = 1;
  for (; first != last; ++first) l = std::lcm(l, first->denominator());
  return l;
}

}  // namespace mimo3way
