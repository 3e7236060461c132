// Copyright 2026 The qfmix Authors
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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qfmix {

/// Requested simulation would exceed the configured qubit cap.
class ResourceError : public std::runtime_error {
public:
    ResourceError(const std::string& what, std::size_t required_qubits)
        : std::runtime_error(what), required_qubits_(required_qubits) {}

    std::size_t required_qubits() const noexcept { return required_qubits_; }

private:
    std::size_t required_qubits_;
};

/// Malformed architecture text or an architecture violating structural invariants.
class ArchitectureError : public std::invalid_argument {
public:
    explicit ArchitectureError(const std::string& what, std::size_t line = 0)
        : std::invalid_argument(line ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}

    /// 1-based source line, 0 when not tied to a line.
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Unreadable or inconsistent dataset files.
class DataFormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Loss became NaN or infinite during training.
class DivergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace qfmix
