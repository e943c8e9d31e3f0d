#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fairtopk::csv {

/// RFC 4180 parse: comma separated, optional CRLF, double-quote escaping.
/// Throws std::invalid_argument on unbalanced quotes, naming the row.
std::vector<std::vector<std::string>> parse(std::istream& in);

/// Quotes a field when it contains a comma, quote, or newline.
std::string escape(const std::string& field);

void write_row(std::ostream& out, const std::vector<std::string>& fields);

}  // namespace fairtopk::csv
