#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "bell/binary_stream.hpp"

namespace bell {

struct StreamParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Text format: a header row of setting labels, then one trial per row of
// whitespace-separated +1/-1 tokens.
inline void write_stream_set(std::ostream& out, const MatchedStreamSet& set) {
  for (std::size_t k = 0; k < set.count(); ++k) {
    if (k) out << ' ';
    out << set.label(k);
  }
  out << '\n';
  for (std::size_t i = 0; i < set.length(); ++i) {
    for (std::size_t k = 0; k < set.count(); ++k) {
      if (k) out << ' ';
      out << (set.stream(k)[i] > 0 ? "+1" : "-1");
    }
    out << '\n';
  }
}

inline MatchedStreamSet read_stream_set(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw StreamParseError("stream file: empty input");
  std::vector<std::string> labels;
  {
    std::istringstream header(line);
    std::string token;
    while (header >> token) labels.push_back(token);
  }
  if (labels.empty()) throw StreamParseError("stream file: empty header row");

  std::vector<std::vector<int>> columns(labels.size());
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    std::istringstream fields(line);
    std::string token;
    std::size_t col = 0;
    while (fields >> token) {
      int value;
      if (token == "+1" || token == "1")
        value = 1;
      else if (token == "-1")
        value = -1;
      else
        throw StreamParseError("stream file: row " + std::to_string(row) + ": token '" + token +
                               "' is not +1 or -1");
      if (col >= labels.size())
        throw StreamParseError("stream file: row " + std::to_string(row) + ": too many columns");
      columns[col++].push_back(value);
    }
    if (col == 0) continue;  // blank line
    if (col != labels.size())
      throw StreamParseError("stream file: row " + std::to_string(row) +
                             ": expected " + std::to_string(labels.size()) + " columns, got " +
                             std::to_string(col));
  }
  if (columns.front().empty()) throw StreamParseError("stream file: no data rows");

  MatchedStreamSet set;
  for (std::size_t k = 0; k < labels.size(); ++k)
    set.add(labels[k], BinaryStream(std::move(columns[k])));
  return set;
}

inline MatchedStreamSet read_stream_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw StreamParseError("stream file: cannot open '" + path + "'");
  return read_stream_set(in);
}

}  // namespace bell
