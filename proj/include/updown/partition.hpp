#pragma once

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstddef>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace updown {

// Thrown for malformed textual input (words, partitions, trace files).
// token_pos is 1-based where it applies, 0 otherwise.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string msg, std::size_t token_pos = 0)
      : std::runtime_error(std::move(msg)), token_pos_(token_pos) {}
  std::size_t token_pos() const { return token_pos_; }

 private:
  std::size_t token_pos_;
};

// Integer partition, stored as weakly decreasing row lengths with trailing
// zeros trimmed.  The empty partition is the empty sequence.  This is a plain
// value type; all operations on it are pure.
//
// Note: the annihilated result of an operator is *not* a partition.  It is
// represented as std::nullopt by the operations below, never as Partition{}.
class Partition {
 public:
  Partition() = default;

  explicit Partition(std::vector<int> rows) : rows_(std::move(rows)) {
    while (!rows_.empty() && rows_.back() == 0) rows_.pop_back();
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      if (rows_[k] < 0)
        throw std::invalid_argument("partition: negative row length");
      if (k + 1 < rows_.size() && rows_[k] < rows_[k + 1])
        throw std::invalid_argument("partition: rows must be weakly decreasing");
    }
  }

  Partition(std::initializer_list<int> rows)
      : Partition(std::vector<int>(rows)) {}

  const std::vector<int>& rows() const { return rows_; }
  std::size_t num_rows() const { return rows_.size(); }
  bool empty() const { return rows_.empty(); }

  // 1-based row length; rows beyond the last are 0.
  int row(std::size_t r) const {
    return (r >= 1 && r <= rows_.size()) ? rows_[r - 1] : 0;
  }

  // 1-based column height lambda'_i = #{k : lambda_k >= i}.
  int column(int i) const {
    if (i < 1) throw std::invalid_argument("partition: column index must be >= 1");
    int h = 0;
    for (int len : rows_)
      if (len >= i) ++h;
    return h;
  }

  long long boxes() const {
    long long s = 0;
    for (int len : rows_) s += len;
    return s;
  }

  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition&, const Partition&) = default;

 private:
  std::vector<int> rows_;
};

// lambda'_i = #{k : lambda_k >= i}, an involution.
inline Partition conjugate(const Partition& p) {
  std::vector<int> cols;
  const int width = p.row(1);
  cols.reserve(static_cast<std::size_t>(width));
  for (int i = 1; i <= width; ++i) cols.push_back(p.column(i));
  return Partition(std::move(cols));
}

// Adds a box in column i (1-based) if the result is a partition.
// Returns nullopt (the annihilated value) otherwise.
inline std::optional<Partition> add_box_column(const Partition& p, int i) {
  if (i < 1) throw std::invalid_argument("add_box_column: column index must be >= 1");
  const std::size_t r = static_cast<std::size_t>(p.column(i)) + 1;  // row the box would land in
  if (p.row(r) != i - 1) return std::nullopt;
  std::vector<int> rows = p.rows();
  if (r > rows.size()) rows.resize(r, 0);
  rows[r - 1] = i;
  return Partition(std::move(rows));
}

// Removes the box in column i (1-based) if the result is a partition.
inline std::optional<Partition> remove_box_column(const Partition& p, int i) {
  if (i < 1) throw std::invalid_argument("remove_box_column: column index must be >= 1");
  const int h = p.column(i);  // the box, if any, sits in row h
  if (h < 1 || p.row(static_cast<std::size_t>(h)) != i) return std::nullopt;
  std::vector<int> rows = p.rows();
  rows[static_cast<std::size_t>(h) - 1] = i - 1;
  return Partition(std::move(rows));
}

// Consecutive column differences delta_i = lambda'_i - lambda'_{i+1}.
// The action of a word on a partition depends only on these.
struct ColumnProfile {
  std::vector<int> diffs;

  friend bool operator==(const ColumnProfile&, const ColumnProfile&) = default;
};

inline ColumnProfile column_profile(const Partition& p) {
  ColumnProfile cp;
  const int width = p.row(1);
  cp.diffs.reserve(static_cast<std::size_t>(width));
  for (int i = 1; i <= width; ++i) cp.diffs.push_back(p.column(i) - p.column(i + 1));
  return cp;
}

// Rebuilds the partition with lambda'_i = diffs[i-1] + diffs[i] + ...
inline Partition partition_from_profile(const ColumnProfile& cp) {
  std::vector<int> cols(cp.diffs.size(), 0);
  int acc = 0;
  for (std::size_t i = cp.diffs.size(); i-- > 0;) {
    if (cp.diffs[i] < 0)
      throw std::invalid_argument("column profile: negative difference");
    acc += cp.diffs[i];
    cols[i] = acc;
  }
  // cols is weakly decreasing by construction; conjugating it back gives rows.
  return conjugate(Partition(std::move(cols)));
}

// One partition per profile (delta_1, ..., delta_{n+1}) in {0..c}^{n+1},
// with all higher columns empty.  Exactly (c+1)^{n+1} partitions, pairwise
// distinct.  This is the complete test set for words whose letters do not
// exceed n and whose length does not exceed c.
inline std::vector<Partition> enumerate_profiles(int n, int c) {
  if (n < 1) throw std::invalid_argument("enumerate_profiles: n must be >= 1");
  if (c < 0) throw std::invalid_argument("enumerate_profiles: c must be >= 0");
  const std::size_t slots = static_cast<std::size_t>(n) + 1;
  std::size_t count = 1;
  for (std::size_t k = 0; k < slots; ++k) count *= static_cast<std::size_t>(c) + 1;
  std::vector<Partition> out;
  out.reserve(count);
  std::vector<int> delta(slots, 0);
  for (;;) {
    out.push_back(partition_from_profile(ColumnProfile{delta}));
    // odometer, last slot fastest
    std::size_t k = slots;
    while (k > 0) {
      --k;
      if (delta[k] < c) {
        ++delta[k];
        break;
      }
      delta[k] = 0;
      if (k == 0) return out;
    }
  }
}

// Text format: comma-separated row lengths ("3,1"); the empty partition is
// the empty string (also accepted on input: "0").
inline Partition parse_partition(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty() || s == "0") return Partition{};
  std::vector<int> rows;
  std::size_t pos = 0, field = 1;
  while (pos <= s.size()) {
    std::size_t comma = s.find(',', pos);
    if (comma == std::string::npos) comma = s.size();
    const std::string tok = s.substr(pos, comma - pos);
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError("partition: bad row length '" + tok + "'", field);
    try {
      rows.push_back(std::stoi(tok));
    } catch (const std::out_of_range&) {
      throw ParseError("partition: row length out of range '" + tok + "'", field);
    }
    pos = comma + 1;
    ++field;
    if (comma == s.size()) break;
  }
  try {
    return Partition(std::move(rows));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

inline std::string to_string(const Partition& p) {
  std::ostringstream os;
  for (std::size_t k = 0; k < p.num_rows(); ++k) {
    if (k) os << ',';
    os << p.rows()[k];
  }
  return os.str();
}

}  // namespace updown
