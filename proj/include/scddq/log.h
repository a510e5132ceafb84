// Copyright 2026 The scddq Authors. All rights reserved.
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

// Minimal warning sink. Library code reports recoverable oddities (for
// example an update requested on an empty buffer) through LogWarning.

#ifndef SCDDQ_LOG_H_
#define SCDDQ_LOG_H_

#include <functional>
#include <string>

namespace scddq {

using WarningSink = std::function<void(const std::string&)>;

// Replaces the process-wide sink and returns the previous one. The default
// sink writes "warning: <msg>" to stderr.
WarningSink SetWarningSink(WarningSink sink);
void LogWarning(const std::string& message);

}  // namespace scddq

#endif  // SCDDQ_LOG_H_
