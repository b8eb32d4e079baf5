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

#include "bendbeam/log.hpp"

#include <iostream>
#include <mutex>

namespace bendbeam
{
    namespace
    {
        std::mutex sink_mutex;
        WarningSink &sink()
        {
            static WarningSink s;
            return s;
        }
    }

    void set_warning_sink(WarningSink s)
    {
        std::lock_guard<std::mutex> lock(sink_mutex);
        sink() = std::move(s);
    }

    void log_warning(const std::string &msg)
    {
        std::lock_guard<std::mutex> lock(sink_mutex);
        if (sink())
            sink()(msg);
        else
            std::cerr << "warning: " << msg << '\n';
    }
}
