////////////////////////////////////////////////////////////////////////////////
//                                                                            //
//  This file is part of factorapprox                                         //
//                                                                            //
//  Copyright 2026 factorapprox developers                                    //
//                                                                            //
//  Licensed under the Apache License, Version 2.0 (the "License");           //
//  you may not use this file except in compliance with the License.          //
//  You may obtain a copy of the License at                                   //
//                                                                            //
//      http://www.apache.org/licenses/LICENSE-2.0                            //
//                                                                            //
//  Unless required by applicable law or agreed to in writing, software       //
//  distributed under the License is distributed on an "AS IS" BASIS,         //
//  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.  //
//  See the License for the specific language governing permissions and       //
//  limitations under the License.                                            //
//                                                                            //
////////////////////////////////////////////////////////////////////////////////

#ifndef FACTORAPPROX_ERROR_HPP
#define FACTORAPPROX_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace factorapprox {

enum class Errc {
  invalid_argument,
  zero_leading_coefficient,
  unsupported_order,
  degenerate_moments,
  degenerate_nodes,
  no_admissible_solution,
  asymmetric_roots,
  branch_inconsistent,
  pole,
  invalid_index,
  empty_scan,
  optimization_failed,
  no_oracle,
  no_reference,
  parse_error,
  io_error,
};

constexpr std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_argument: return "invalid-argument";
    case Errc::zero_leading_coefficient: return "zero-leading-coefficient";
    case Errc::unsupported_order: return "unsupported-order";
    case Errc::degenerate_moments: return "degenerate-moments";
    case Errc::degenerate_nodes: return "degenerate-nodes";
    case Errc::no_admissible_solution: return "no-admissible-solution";
    case Errc::asymmetric_roots: return "asymmetric-roots";
    case Errc::branch_inconsistent: return "branch-inconsistent";
    case Errc::pole: return "pole";
    case Errc::invalid_index: return "invalid-index";
    case Errc::empty_scan: return "empty-scan";
    case Errc::optimization_failed: return "optimization-failed";
    case Errc::no_oracle: return "no-oracle";
    case Errc::no_reference: return "no-reference";
    case Errc::parse_error: return "parse-error";
    case Errc::io_error: return "io-error";
  }
  return "unknown";
}

/// Every failure raised by the library carries one of the codes above; the
/// message adds the human-readable detail.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code), detail_(detail) {}

  Errc code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  Errc code_;
  std::string detail_;
};

[[noreturn]] inline void fail(Errc code, const std::string& detail) { throw Error(code, detail); }

}  // namespace factorapprox

#endif
