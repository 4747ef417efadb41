#pragma once

#include <string>
#include <vector>

#include "fc/fcsolve.hpp"

namespace fc {

struct VerificationCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerificationReport {
  bool passed = true;
  std::vector<VerificationCheck> checks;
  std::string failure;  // detail of the first failing check

  void record(std::string name, bool ok, std::string detail = {});
};

/// Weights valid, every cut holds at them, and an independent separation
/// solve finds no violated family over the certificate's domain.
VerificationReport verify_fc(const Certificate& cert);
/// Cuts are genuine and the Farkas multipliers prove the cut system infeasible.
VerificationReport verify_nonfc(const Certificate& cert);
/// Dispatch on the certificate's verdict.
VerificationReport verify_certificate(const Certificate& cert);

}  // namespace fc
