#pragma once

#include <string_view>

namespace fbs {

inline constexpr std::string_view kArtifactVersion = "fbslab 0.1.0";

/// Counter-based generator behind every random draw; written into run
/// manifests and field exports so outputs are attributable to one algorithm.
inline constexpr std::string_view kRngId = "philox4x32-10/fbs-v1";

/// Schema tag prefixed to every result-record file.
inline constexpr std::string_view kRecordSchemaVersion = "1";

}  // namespace fbs
