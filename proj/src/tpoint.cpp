#include "stonework/tpoint.hpp"

#include <stdexcept>

namespace stonework {

namespace {

void check_binary(const std::string& s) {
  for (char c : s) {
    if (c != '0' && c != '1') throw std::invalid_argument("TPoint: non-binary digit");
  }
}

// Smallest d dividing |p| such that p is a repetition of its first d chars.
size_t primitive_root(const std::string& p) {
  for (size_t d = 1; d <= p.size(); ++d) {
    if (p.size() % d != 0) continue;
    bool ok = true;
    for (size_t i = d; i < p.size() && ok; ++i) ok = (p[i] == p[i % d]);
    if (ok) return d;
  }
  return p.size();
}

}  // namespace

TPoint::TPoint(std::string preperiod, std::string period)
    : pre_(std::move(preperiod)), per_(std::move(period)) {
  if (per_.empty()) throw std::invalid_argument("TPoint: empty period");
  check_binary(pre_);
  check_binary(per_);
  canonicalize();
}

void TPoint::canonicalize() {
  per_.resize(primitive_root(per_));
  // Absorb trailing preperiod chars that merely rotate the period.
  while (!pre_.empty() && pre_.back() == per_.back()) {
    pre_.pop_back();
    per_ = per_.back() + per_.substr(0, per_.size() - 1);
  }
}

TPoint TPoint::parse(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("TPoint: missing ':'");
  return TPoint(text.substr(0, colon), text.substr(colon + 1));
}

int TPoint::bit(int n) const {
  if (n <= 0) throw std::out_of_range("TPoint::bit: 1-based index");
  size_t i = static_cast<size_t>(n - 1);
  if (i < pre_.size()) return pre_[i] - '0';
  return per_[(i - pre_.size()) % per_.size()] - '0';
}

}  // namespace stonework
