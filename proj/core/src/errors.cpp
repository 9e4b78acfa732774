// Copyright 2026 The spinbath Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "spinbath/errors.hpp"

namespace spinbath {

void throw_invalid(const std::string& message) {
    throw Error(ErrorKind::invalid_argument, message);
}

int exit_code(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::invalid_argument:
    case ErrorKind::config:
        return 2;
    case ErrorKind::step_size:
    case ErrorKind::numerical:
        return 3;
    case ErrorKind::resource_limit:
        return 4;
    }
    return 1;
}

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::invalid_argument: return "invalid argument";
    case ErrorKind::config: return "config error";
    case ErrorKind::resource_limit: return "resource limit";
    case ErrorKind::step_size: return "step-size error";
    case ErrorKind::numerical: return "numerical error";
    }
    return "error";
}

}  // namespace spinbath
