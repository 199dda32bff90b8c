#pragma once

namespace unillc {

/// Semantic version of the toolkit library and CLI.
inline constexpr const char* kToolkitVersion = "1.0.0";

/// Version tag of the built-in structure catalog (mirrored by data/catalog.v1.json).
inline constexpr const char* kCatalogVersion = "1";

}  // namespace unillc
