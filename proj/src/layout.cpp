#include "qcorr/layout.hpp"

#include <algorithm>
#include <sstream>

#include "qcorr/error.hpp"
#include "qcorr/tolerances.hpp"

namespace qcorr {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonHermitian: return "NonHermitian";
    case ErrorCode::NonPositive: return "NonPositive";
    case ErrorCode::TraceError: return "TraceError";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::EmptyKeepSet: return "EmptyKeepSet";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::InvalidSubset: return "InvalidSubset";
    case ErrorCode::BasisDimensionMismatch: return "BasisDimensionMismatch";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::EmptyMeasuredSet: return "EmptyMeasuredSet";
    case ErrorCode::NotClassical: return "NotClassical";
    case ErrorCode::NegativeArguments: return "NegativeArguments";
    case ErrorCode::OptimizerFailure: return "OptimizerFailure";
    case ErrorCode::GridTooLarge: return "GridTooLarge";
    case ErrorCode::ParameterOutOfRange: return "ParameterOutOfRange";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

SubsystemLayout::SubsystemLayout(std::vector<int> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) {
    throw Error(ErrorCode::DimensionMismatch, "layout needs at least one subsystem");
  }
  long long total = 1;
  for (int d : dims_) {
    if (d < 2) {
      throw Error(ErrorCode::DimensionMismatch, "local dimension must be >= 2, got " + std::to_string(d));
    }
    total *= d;
    if (total > tol::max_total_dim) {
      throw Error(ErrorCode::DimensionMismatch,
                  "total dimension exceeds " + std::to_string(tol::max_total_dim));
    }
  }
  total_ = static_cast<int>(total);
}

SubsystemLayout SubsystemLayout::qubits(std::size_t n) {
  return SubsystemLayout(std::vector<int>(n, 2));
}

SubsystemLayout SubsystemLayout::concat(const SubsystemLayout& other) const {
  std::vector<int> dims = dims_;
  dims.insert(dims.end(), other.dims_.begin(), other.dims_.end());
  return SubsystemLayout(std::move(dims));
}

SubsystemLayout SubsystemLayout::restrict_to(const IndexSet& subsystems) const {
  std::vector<int> dims;
  dims.reserve(subsystems.size());
  for (auto s : subsystems) dims.push_back(dim(s));
  return SubsystemLayout(std::move(dims));
}

IndexSet SubsystemLayout::complement(const IndexSet& subsystems) const {
  IndexSet out;
  for (std::size_t n = 0; n < dims_.size(); ++n) {
    if (std::find(subsystems.begin(), subsystems.end(), n) == subsystems.end()) out.push_back(n);
  }
  return out;
}

IndexSet SubsystemLayout::all() const {
  IndexSet out(dims_.size());
  for (std::size_t n = 0; n < out.size(); ++n) out[n] = n;
  return out;
}

IndexSplit SubsystemLayout::split(const IndexSet& part) const {
  IndexSplit s;
  std::vector<bool> in_part(dims_.size(), false);
  for (auto p : part) in_part.at(p) = true;
  for (std::size_t n = 0; n < dims_.size(); ++n) (in_part[n] ? s.part_dim : s.rest_dim) *= dims_[n];

  s.part.resize(total_);
  s.rest.resize(total_);
  for (int i = 0; i < total_; ++i) {
    int rem = i;
    int stride = total_;
    int p = 0;
    int r = 0;
    for (std::size_t n = 0; n < dims_.size(); ++n) {
      stride /= dims_[n];
      int digit = rem / stride;
      rem %= stride;
      if (in_part[n]) {
        p = p * dims_[n] + digit;
      } else {
        r = r * dims_[n] + digit;
      }
    }
    s.part[i] = p;
    s.rest[i] = r;
  }
  return s;
}

std::string SubsystemLayout::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t n = 0; n < dims_.size(); ++n) os << (n ? "," : "") << dims_[n];
  os << ']';
  return os.str();
}

IndexSet normalize_subset(const SubsystemLayout& layout, IndexSet subset) {
  std::sort(subset.begin(), subset.end());
  if (std::adjacent_find(subset.begin(), subset.end()) != subset.end()) {
    throw Error(ErrorCode::InvalidSubset, "duplicate subsystem index");
  }
  if (!subset.empty() && subset.back() >= layout.size()) {
    throw Error(ErrorCode::IndexOutOfRange, "subsystem " + std::to_string(subset.back()) +
                                                " outside layout " + layout.to_string());
  }
  return subset;
}

}  // namespace qcorr
