#pragma once

#include <string>
#include <vector>

namespace contact {

// Outcome of one sampled numerical check. A report with zero samples passes
// vacuously and is flagged as such when serialized.
struct VerificationReport {
  std::string name;
  int samples = 0;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

inline VerificationReport finalize_report(std::string name, int samples,
                                          double max_residual, double tolerance) {
  VerificationReport r;
  r.name = std::move(name);
  r.samples = samples;
  r.max_residual = max_residual;
  r.tolerance = tolerance;
  r.pass = samples == 0 || max_residual <= tolerance;
  return r;
}

inline bool all_pass(const std::vector<VerificationReport>& reports) {
  for (const auto& r : reports)
    if (!r.pass) return false;
  return true;
}

}  // namespace contact
