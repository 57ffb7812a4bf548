#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "median/duality.hpp"
#include "median/report.hpp"
#include "median/space.hpp"

namespace median {

inline constexpr int kFormatVersion = 1;

/// Edges oriented u < v and sorted; table rows sorted.
RawSpace canonical(RawSpace raw);

/// Canonical SpaceFile text. Parsers throw ParseError with a line and column.
std::string write_space(const RawSpace& raw);
inline std::string write_space(const MedianSpace& s) { return write_space(s.raw()); }
RawSpace parse_space(std::string_view text);

std::string write_pocset(const MeasuredPocSet& p);
MeasuredPocSet parse_pocset(std::string_view text);

Report parse_report(std::string_view text);

/// Whole file as text. Throws BadParams when unreadable.
std::string read_text(const std::filesystem::path& path);

}  // namespace median
