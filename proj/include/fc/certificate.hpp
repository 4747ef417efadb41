#pragma once

#include <stdexcept>
#include <string>

#include "fc/fcsolve.hpp"

namespace fc {

class CertificateFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string certificate_to_json(const Certificate& cert);
/// Structural parse only; no mathematical checks. Throws CertificateFormatError.
Certificate certificate_from_json(const std::string& text);

}  // namespace fc
