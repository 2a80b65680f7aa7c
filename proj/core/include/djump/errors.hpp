// Copyright 2026 The djump Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DJUMP_ERRORS_HPP
#define DJUMP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace djump {

// Base class for everything thrown by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad configuration: unknown key, malformed value, violated invariant.
// Maps to exit code 2 in the CLI.
struct ConfigError : Error {
  using Error::Error;
};

// Numerical or invariant failure at run time (degenerate collapse, timestep
// too large, density-matrix invariant violation). Exit code 3.
struct NumericalError : Error {
  using Error::Error;
};

// A validation run that completed but did not meet its bound. Exit code 4.
struct ValidationFailure : Error {
  using Error::Error;
};

}  // namespace djump

#endif  // DJUMP_ERRORS_HPP
