// SPDX-License-Identifier: Apache-2.0
//
// bendbeam: near-field bending beam synthesis for uniform linear arrays
// Copyright (C) 2026 The bendbeam authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef BENDBEAM_ERRORS_HPP
#define BENDBEAM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bendbeam
{
    // Malformed or out-of-contract input (bad sizes, non-positive lengths, ...)
    struct ContractViolation : std::invalid_argument
    {
        using std::invalid_argument::invalid_argument;
    };

    struct InvalidTrajectory : std::runtime_error
    {
        using std::runtime_error::runtime_error;
    };

    // An evaluation point coincides with an antenna element
    struct DegenerateGeometry : std::runtime_error
    {
        using std::runtime_error::runtime_error;
    };

    // No tangent of the trajectory passes through the requested array point
    struct TangentUnreachable : std::runtime_error
    {
        using std::runtime_error::runtime_error;
    };

    struct NoPrincipalComponent : std::runtime_error
    {
        using std::runtime_error::runtime_error;
    };

    // Scenario file validation failure; field names the offending key
    struct ConfigError : std::runtime_error
    {
        ConfigError(std::string field_name, const std::string &what)
            : std::runtime_error(field_name + ": " + what), field(std::move(field_name)) {}
        std::string field;
    };
}

#endif
