/*
 * Copyright 2026 The LingLeak Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef LINGLEAK_TOOLS_CLI_H_
#define LINGLEAK_TOOLS_CLI_H_

#include "absl/status/status.h"

namespace lingleak {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitInternalError = 3;

// Maps a status to the process exit code: caller-supplied data problems are
// input errors, everything else is an internal failure.
int ExitCodeFor(const absl::Status& status);

int RunCli(int argc, char** argv);

}  // namespace lingleak

#endif  // LINGLEAK_TOOLS_CLI_H_
