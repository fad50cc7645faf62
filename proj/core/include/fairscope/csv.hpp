#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace fairscope::csv {

using Row = std::vector<std::string>;

/// Parses RFC 4180 text: comma separated, optional double-quoted fields with
/// "" as the escaped quote, CRLF or LF record terminators. A trailing newline
/// does not produce an empty record. Throws Error(MalformedCsv).
std::vector<Row> parse(std::string_view text);

/// Reads a whole stream and parses it.
std::vector<Row> read(std::istream& in);

/// Quotes a field only when it contains a comma, quote, CR or LF.
std::string escape_field(std::string_view field);

/// Writes one record terminated by '\n'.
void write_row(std::ostream& out, const Row& row);

}  // namespace fairscope::csv
