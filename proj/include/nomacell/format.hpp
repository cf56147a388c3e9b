#pragma once

#include <string>

namespace nomacell {

/// Shortest decimal string that parses back to exactly the same double
/// (std::to_chars); non-finite values render as "inf", "-inf", "nan".
/// This is the CSV representation: lossless and byte-stable.
std::string csv_double(double v);

/// Six-significant-digit rendering for human-readable tables.
std::string table_double(double v);

}  // namespace nomacell
