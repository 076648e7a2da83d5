#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bell {

// A finite sequence of ±1 outcomes. Every identity and correlation in this
// library is arithmetic over these.
class BinaryStream {
 public:
  explicit BinaryStream(std::vector<int> values) : values_(std::move(values)) {
    if (values_.empty()) throw std::invalid_argument("BinaryStream: length must be >= 1");
    for (int v : values_) {
      if (v != 1 && v != -1)
        throw std::invalid_argument("BinaryStream: entries must be +1 or -1, got " +
                                    std::to_string(v));
    }
  }

  std::size_t size() const noexcept { return values_.size(); }
  int operator[](std::size_t i) const noexcept { return values_[i]; }

  const std::vector<int>& values() const noexcept { return values_; }
  auto begin() const noexcept { return values_.begin(); }
  auto end() const noexcept { return values_.end(); }

  BinaryStream negated() const {
    std::vector<int> out(values_.size());
    for (std::size_t i = 0; i < values_.size(); ++i) out[i] = -values_[i];
    return BinaryStream(std::move(out));
  }

  bool operator==(const BinaryStream&) const = default;

 private:
  std::vector<int> values_;
};

// k equal-length streams sharing trial indices: entry i of every stream came
// from the same underlying realization.
class MatchedStreamSet {
 public:
  MatchedStreamSet() = default;

  void add(std::string label, BinaryStream stream) {
    if (!streams_.empty() && stream.size() != streams_.front().second.size())
      throw std::invalid_argument("MatchedStreamSet: stream length mismatch");
    for (const auto& [name, s] : streams_)
      if (name == label)
        throw std::invalid_argument("MatchedStreamSet: duplicate label '" + label + "'");
    streams_.emplace_back(std::move(label), std::move(stream));
  }

  std::size_t count() const noexcept { return streams_.size(); }
  std::size_t length() const noexcept {
    return streams_.empty() ? 0 : streams_.front().second.size();
  }

  const BinaryStream& stream(std::size_t i) const { return streams_.at(i).second; }
  const std::string& label(std::size_t i) const { return streams_.at(i).first; }

  const BinaryStream& by_label(const std::string& label) const {
    for (const auto& [name, s] : streams_)
      if (name == label) return s;
    throw std::out_of_range("MatchedStreamSet: no stream labeled '" + label + "'");
  }

  const std::vector<std::pair<std::string, BinaryStream>>& entries() const noexcept {
    return streams_;
  }

 private:
  std::vector<std::pair<std::string, BinaryStream>> streams_;
};

}  // namespace bell
