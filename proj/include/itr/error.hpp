#pragma once

#include <stdexcept>
#include <string>

namespace itr {

enum class ErrorCode {
  usage,
  io,
  parse,
  format,
  corrupt,
  unknown_nonterminal,
  rank_mismatch,
  conflicting_labels,
  dangling_id,
  empty_counts,
  size_limit,
  not_itr_plus,
  out_of_bounds,
  not_monotone,
  bad_magic,
  bad_version,
  section_mismatch,
  truncated,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace itr
