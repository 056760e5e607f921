#pragma once

#include "fraisse/error.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace fraisse {

/// An ordered list of point indices (repeats allowed) into one structure.
/// The referenced structure must outlive the tuple.
template <class Structure>
class EnumeratedTuple {
 public:
  EnumeratedTuple(const Structure& structure, std::vector<std::size_t> entries)
      : structure_(&structure), entries_(std::move(entries)) {
    for (std::size_t e : entries_)
      if (e >= structure.size())
        fail(ErrorCode::invalid_input, "tuple entry " + std::to_string(e) + " is not a point of the structure");
  }

  /// The identity enumeration 0..n-1 of the whole structure.
  static EnumeratedTuple all(const Structure& structure) {
    std::vector<std::size_t> e(structure.size());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = i;
    return EnumeratedTuple(structure, std::move(e));
  }

  const Structure& structure() const { return *structure_; }
  const std::vector<std::size_t>& entries() const { return entries_; }
  std::size_t length() const { return entries_.size(); }

 private:
  const Structure* structure_;
  std::vector<std::size_t> entries_;
};

}  // namespace fraisse
