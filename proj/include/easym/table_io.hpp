#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "easym/functions.hpp"

namespace easym {

/// Function-table documents (see docs/formats.md):
///
///     {"q": 2, "n": 2, "m": 2, "table": [0, 3, 1, 2]}
///
/// The writer always emits the keys in the order q, n, m, table. The reader
/// accepts any JSON whitespace and any key order but nothing else: no extra
/// keys, no signs, fractions or exponents. Errors are ParseError with the byte
/// offset of the offending token.
std::string format_table(const FuncTable& F);
FuncTable parse_table(std::string_view text);

FuncTable read_table(const std::filesystem::path& path);
void write_table(const FuncTable& F, const std::filesystem::path& path);

}  // namespace easym
