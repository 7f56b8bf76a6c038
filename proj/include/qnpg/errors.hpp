// Copyright 2026 The QNPG Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Exception types shared by all modules.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace qnpg {

/// Invalid configuration value or precondition on a size/count argument.
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Vector or matrix sizes that do not agree.
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Qubit index outside the register, or control equal to target.
struct IndexError : std::out_of_range {
    using std::out_of_range::out_of_range;
};

/// State or action outside the environment's spaces.
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Non-finite input to a numerical routine.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Log-policy gradient requested at a zero policy estimate with clipping off.
struct DegeneratePolicyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace qnpg
