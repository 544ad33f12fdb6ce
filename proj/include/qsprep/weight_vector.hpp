#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace qsprep {

/// The black-box input: a non-zero vector of N non-negative weights together
/// with its L1 norm W. Indices are 0-based throughout the library; the
/// 1-based convention appears only at external boundaries (files, CLI output).
class WeightVector {
 public:
  explicit WeightVector(std::vector<double> entries);

  /// Reads the shared weights file format: one non-negative decimal per
  /// line, blank lines and lines starting with '#' ignored. Throws
  /// std::runtime_error with the offending line number on malformed input.
  static WeightVector from_file(const std::string& path);

  std::size_t size() const { return entries_.size(); }
  double total() const { return total_; }  // W
  double max_entry() const { return max_entry_; }
  double operator[](std::size_t i) const { return entries_[i]; }
  double at(std::size_t i) const;
  std::span<const double> entries() const { return entries_; }

 private:
  std::vector<double> entries_;
  double total_ = 0.0;
  double max_entry_ = 0.0;
};

}  // namespace qsprep
