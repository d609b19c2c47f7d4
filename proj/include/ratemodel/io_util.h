// Copyright 2026 the ratemodel project
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

#include <string>

namespace ratemodel {

// Reads a whole file; throws DataError if it cannot be opened.
std::string read_text_file(const std::string& path);

// Writes via a sibling temp file + rename so a failure never leaves a
// partial artifact behind. Throws DataError on I/O failure.
void write_text_file_atomic(const std::string& path, const std::string& content);

// Shortest decimal form that parses back to exactly the same double
// (std::to_chars); used everywhere CSV values are emitted.
std::string format_double(double value);

}  // namespace ratemodel
