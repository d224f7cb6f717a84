// Copyright 2026 the cvbgs authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <string>

#include "cvbgs/pipeline.hpp"

namespace cvbgs {

/// Parses a key=value config file ('#' starts a comment, blank lines are
/// skipped) on top of the built-in defaults. Unknown keys raise ConfigError so
/// typos fail loudly; the result is validated before it is returned.
PipelineConfig load_config_file(const std::filesystem::path& path);

/// Applies one "key", "value" pair onto an existing config. Throws ConfigError
/// for unknown keys or malformed values. See README for the key list.
void apply_config_entry(PipelineConfig& config, const std::string& key, const std::string& value);

}  // namespace cvbgs
