#include "pstkit/error.hpp"

namespace pst {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_size: return "invalid-size";
    case Errc::invalid_argument: return "invalid-argument";
    case Errc::self_loop_rejected: return "self-loop-rejected";
    case Errc::unsupported: return "unsupported";
    case Errc::parse_error: return "parse-error";
    case Errc::numeric_failure: return "numeric-failure";
    case Errc::ambiguous_degeneracy: return "ambiguous-degeneracy";
    case Errc::not_connected: return "not-connected";
    case Errc::not_simple: return "not-simple";
    case Errc::non_commuting: return "non-commuting-connection";
    case Errc::non_equitable: return "non-equitable";
    case Errc::partition_failure: return "partition-failure";
    case Errc::io_error: return "io-error";
  }
  return "unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace pst
