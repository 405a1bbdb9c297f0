#pragma once

#include <optional>
#include <string>

#include "voltspec/kernel.hpp"

namespace voltspec {

/// Parsed kernel configuration: either a finite term list or a power-law
/// family, as ingested from {"type":"finite","terms":[[c,g],...]} or
/// {"type":"power_law","A":..,"B":..,"alpha":..,"beta":..,"N":..}.
struct KernelConfig {
    ExponentialKernel kernel;
    std::optional<PowerLawFamily> family;
};

/// Parses a kernel config from JSON text. Throws ValidationError on
/// malformed documents.
KernelConfig parse_kernel_json(const std::string& text);

/// Parses from either inline JSON (text starting with '{') or a file path.
KernelConfig load_kernel(const std::string& path_or_inline);

/// 17-significant-digit decimal rendering; round-trips binary64 exactly.
std::string format_double(double x);

}  // namespace voltspec
