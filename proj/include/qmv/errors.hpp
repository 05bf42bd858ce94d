// Copyright 2026 The QMV Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace qmv {

/// Malformed input: bad config field, site outside the lattice, bad argument.
/// Maps to CLI exit code 2.
class InputError : public std::invalid_argument {
  public:
    explicit InputError(const std::string &what) : std::invalid_argument(what) {}
};

/// The requested accuracy cannot be reached within the configured limits.
/// Maps to CLI exit code 3.
class InfeasibleError : public std::runtime_error {
  public:
    explicit InfeasibleError(const std::string &what) : std::runtime_error(what) {}
};

/// A dense object would exceed a configured qubit cap, or a numerical
/// resource (e.g. adaptive step size) ran out. Maps to CLI exit code 4.
class ResourceError : public std::runtime_error {
  public:
    explicit ResourceError(const std::string &what) : std::runtime_error(what) {}
};

}  // namespace qmv
