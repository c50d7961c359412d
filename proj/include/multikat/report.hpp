#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

namespace multikat {

/// One violated law instance, printed as a term equation.
struct Violation {
  std::string law;
  std::string instance;
};

/// Result of an exhaustive law check. Passes iff no violation was recorded.
class LawReport {
 public:
  LawReport() = default;
  explicit LawReport(std::string structure) : structure_(std::move(structure)) {}

  const std::string& structure() const noexcept { return structure_; }
  const std::vector<Violation>& violations() const noexcept { return violations_; }
  bool passed() const noexcept { return violations_.empty(); }

  /// Number of law instances evaluated (passing or not).
  std::size_t checked() const noexcept { return checked_; }
  void count(std::size_t n = 1) noexcept { checked_ += n; }

  void fail(std::string law, std::string instance);

  /// Records `law` as violated unless `ok`. Returns `ok`.
  bool expect(bool ok, const char* law, auto&& describe) {
    ++checked_;
    if (!ok) fail(law, describe());
    return ok;
  }

  /// Appends all violations of `other`, prefixing its structure name when it
  /// differs from ours.
  void merge(const LawReport& other);

  /// Caps the number of stored violations; later failures only bump the
  /// overflow counter. Default is unlimited.
  void set_violation_limit(std::size_t limit) noexcept { limit_ = limit; }
  std::size_t dropped() const noexcept { return dropped_; }

 private:
  std::string structure_;
  std::vector<Violation> violations_;
  std::size_t checked_ = 0;
  std::size_t limit_ = static_cast<std::size_t>(-1);
  std::size_t dropped_ = 0;
};

std::ostream& operator<<(std::ostream& os, const LawReport& report);

}  // namespace multikat
