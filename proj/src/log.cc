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

#include "scddq/log.h"

#include <iostream>
#include <mutex>

namespace scddq {
namespace {

std::mutex& SinkMutex() {
  static std::mutex m;
  return m;
}

WarningSink& Sink() {
  static WarningSink sink = [](const std::string& msg) {
    std::cerr << "warning: " << msg << "\n";
  };
  return sink;
}

}  // namespace

WarningSink SetWarningSink(WarningSink sink) {
  std::lock_guard<std::mutex> lock(SinkMutex());
  WarningSink old = std::move(Sink());
  Sink() = std::move(sink);
  return old;
}

void LogWarning(const std::string& message) {
  std::lock_guard<std::mutex> lock(SinkMutex());
  if (Sink()) Sink()(message);
}

}  // namespace scddq
