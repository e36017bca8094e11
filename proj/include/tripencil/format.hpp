#pragma once

#include <string>
#include <vector>

namespace tripencil {

/// 17 significant digits: the shortest fixed precision that round-trips
/// every binary64 value.
std::string fmt17(double x);

std::string csv_row(const std::vector<std::string>& cells);

/// Writes content as-is (LF line endings are the caller's responsibility;
/// all writers here emit LF only).
void write_text_file(const std::string& path, const std::string& content);

}  // namespace tripencil
