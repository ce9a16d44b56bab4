#pragma once

#include <string>

#include "ace/terrain.hpp"

namespace ace {

/// ESRI ASCII grid reader. File values are up-positive elevations and are
/// negated into the internal z-down convention; NODATA cells become unknown.
Dem read_esri_ascii(const std::string& path);

/// Inverse of read_esri_ascii. Finite values round-trip bit-exactly.
void write_esri_ascii(const Dem& dem, const std::string& path,
                      double nodata_value = -9999.0);

}  // namespace ace
