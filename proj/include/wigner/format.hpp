#pragma once

#include <string>
#include <vector>

namespace wigner {

/// Fixed float formatting used by every CSV surface: 17 significant digits,
/// scientific notation, '.' separator; infinities as "inf"/"-inf", NaN as
/// "nan". Output is byte-stable across runs.
std::string float17(double v);

/// Joins fields with commas and terminates with LF.
std::string csv_row(const std::vector<std::string>& fields);

/// Writes content to path as-is (LF endings preserved). Throws on I/O failure.
void write_file(const std::string& path, const std::string& content);

}  // namespace wigner
