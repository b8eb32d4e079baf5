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

#ifndef BENDBEAM_LOG_HPP
#define BENDBEAM_LOG_HPP

#include <functional>
#include <string>

namespace bendbeam
{
    // Warnings go to std::cerr unless a sink is installed. The sink is process-wide.
    using WarningSink = std::function<void(const std::string &)>;

    void set_warning_sink(WarningSink sink);
    void log_warning(const std::string &msg);
}

#endif
