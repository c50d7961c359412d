#include "multikat/report.hpp"

namespace multikat {

void LawReport::fail(std::string law, std::string instance) {
  if (violations_.size() >= limit_) {
    ++dropped_;
    return;
  }
  violations_.push_back({std::move(law), std::move(instance)});
}

void LawReport::merge(const LawReport& other) {
  checked_ += other.checked_;
  dropped_ += other.dropped_;
  for (const auto& v : other.violations_) {
    std::string law = v.law;
    if (!other.structure_.empty() && other.structure_ != structure_) {
      law = other.structure_ + "/" + law;
    }
    fail(std::move(law), v.instance);
  }
}

std::ostream& operator<<(std::ostream& os, const LawReport& report) {
  os << report.structure() << ": " << (report.passed() ? "PASS" : "FAIL") << " ("
     << report.checked() << " instances checked, " << report.violations().size() + report.dropped()
     << " violations)\n";
  for (const auto& v : report.violations()) {
    os << "  [" << v.law << "] " << v.instance << '\n';
  }
  if (report.dropped() > 0) os << "  ... " << report.dropped() << " more\n";
  return os;
}

}  // namespace multikat
