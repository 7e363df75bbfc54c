#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pst {

enum class Errc {
  invalid_size,
  invalid_argument,
  self_loop_rejected,
  unsupported,
  parse_error,
  numeric_failure,
  ambiguous_degeneracy,
  not_connected,
  not_simple,
  non_commuting,
  non_equitable,
  partition_failure,
  io_error,
};

std::string_view to_string(Errc code) noexcept;

// Every failure raised by the library carries one of the codes above so callers
// (the CLI in particular) can map it to an exit status without string matching.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] void fail(Errc code, const std::string& what);

}  // namespace pst
