#pragma once

#include <string>

namespace stonework {

/// Eventually periodic point of {0,1}^N, stored as preperiod + period over
/// the alphabet {'0','1'} and kept in canonical form: the period is
/// primitive and the preperiod is as short as possible.  Two TPoints are
/// equal as sequences iff their canonical forms coincide, which makes
/// membership questions about them decidable.
class TPoint {
 public:
  /// period must be nonempty; both strings over {'0','1'}.
  TPoint(std::string preperiod, std::string period);

  /// Parse "pre:period", e.g. ":01" for the alternating point, "0:1" for
  /// a single zero followed by ones.
  static TPoint parse(const std::string& text);

  static TPoint zeros() { return TPoint("", "0"); }
  static TPoint ones() { return TPoint("", "1"); }
  static TPoint alternating() { return TPoint("", "01"); }

  /// 1-based coordinate.
  int bit(int n) const;

  const std::string& preperiod() const { return pre_; }
  const std::string& period() const { return per_; }

  bool operator==(const TPoint& o) const {
    return pre_ == o.pre_ && per_ == o.per_;
  }
  bool operator!=(const TPoint& o) const { return !(*this == o); }
  bool operator<(const TPoint& o) const {
    return pre_ != o.pre_ ? pre_ < o.pre_ : per_ < o.per_;
  }

  std::string str() const { return pre_ + ":" + per_; }

 private:
  void canonicalize();
  std::string pre_, per_;
};

}  // namespace stonework
