#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace qcorr {

/// Sorted, duplicate-free list of subsystem positions.
using IndexSet = std::vector<std::size_t>;

/// Lookup tables mapping a full basis index onto (index within a chosen
/// group of subsystems, index within the complementary group).
struct IndexSplit {
  std::vector<int> part;
  std::vector<int> rest;
  int part_dim = 1;
  int rest_dim = 1;
};

/// Ordered local dimensions of a composite system. Subsystem 0 is the most
/// significant factor of the Kronecker ordering.
class SubsystemLayout {
 public:
  explicit SubsystemLayout(std::vector<int> dims);

  static SubsystemLayout qubits(std::size_t n);

  std::size_t size() const noexcept { return dims_.size(); }
  int dim(std::size_t subsystem) const { return dims_.at(subsystem); }
  const std::vector<int>& dims() const noexcept { return dims_; }
  int total_dim() const noexcept { return total_; }

  SubsystemLayout concat(const SubsystemLayout& other) const;
  SubsystemLayout restrict_to(const IndexSet& subsystems) const;

  /// Complement of `subsystems` within [0, size()).
  IndexSet complement(const IndexSet& subsystems) const;
  IndexSet all() const;

  IndexSplit split(const IndexSet& part) const;

  bool operator==(const SubsystemLayout&) const = default;

  std::string to_string() const;

 private:
  std::vector<int> dims_;
  int total_ = 1;
};

/// Sorts and validates a subsystem set against a layout.
/// Throws IndexOutOfRange or InvalidSubset (duplicates).
IndexSet normalize_subset(const SubsystemLayout& layout, IndexSet subset);

}  // namespace qcorr
