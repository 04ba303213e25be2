#ifndef BIGBRACKET_VERDICT_HPP
#define BIGBRACKET_VERDICT_HPP

#include <map>
#include <string>
#include <vector>

#include "bigbracket/core.hpp"

namespace bigbracket {

/// Outcome of a check: every violated equation maps to its exact nonzero
/// defect. Passed iff there are no defects.
struct Verdict {
  std::map<std::string, Element> defects;
  std::vector<std::string> notes;

  bool passed() const { return defects.empty(); }

  void require_zero(const std::string& label, const Element& value) {
    if (!value.is_zero()) defects.insert_or_assign(label, value);
  }
  void merge(const Verdict& other, const std::string& prefix = {}) {
    for (const auto& [k, v] : other.defects) defects.insert_or_assign(prefix + k, v);
    for (const auto& n : other.notes) notes.push_back(prefix + n);
  }
};

}  // namespace bigbracket

#endif  // BIGBRACKET_VERDICT_HPP
