#include "qsprep/weight_vector.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

#include "qsprep/kernels.hpp"

namespace qsprep {

WeightVector::WeightVector(std::vector<double> entries)
    : entries_(std::move(entries)) {
  if (entries_.empty())
    throw std::invalid_argument("weight vector must not be empty");
  bool any_positive = false;
  for (double v : entries_) {
    if (!std::isfinite(v) || v < 0.0)
      throw std::invalid_argument(
          "weight entries must be finite and non-negative");
    if (v > 0.0) any_positive = true;
    if (v > max_entry_) max_entry_ = v;
  }
  if (!any_positive)
    throw std::invalid_argument("weight vector must have a positive entry");
  total_ = kern::sum(entries_);
}

double WeightVector::at(std::size_t i) const {
  if (i >= entries_.size())
    throw std::out_of_range("weight index out of range");
  return entries_[i];
}

WeightVector WeightVector::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open weights file: " + path);
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos || line[start] == '#') continue;
    std::size_t end = line.find_last_not_of(" \t");
    const std::string token = line.substr(start, end - start + 1);
    errno = 0;
    char* parse_end = nullptr;
    const double v = std::strtod(token.c_str(), &parse_end);
    if (parse_end != token.c_str() + token.size() || errno != 0 ||
        !std::isfinite(v) || v < 0.0)
      throw std::runtime_error(path + ":" + std::to_string(line_no) +
                               ": expected a non-negative decimal, got '" +
                               token + "'");
    values.push_back(v);
  }
  if (values.empty())
    throw std::runtime_error(path + ": no weight entries found");
  return WeightVector(std::move(values));
}

}  // namespace qsprep
